#pragma once

#include <algorithm>
#include <exception>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "nilspec/errors.hpp"

namespace nilspec {

struct CheckLine {
  std::string name;
  std::string instance;
  bool pass = false;
  std::string witness;
};

/// Ordered list of named check outcomes. Text form is one line per check:
///   CHECK <name> <instance> PASS|FAIL [witness]
class Report {
 public:
  void add(std::string name, std::string instance, bool pass, std::string witness = {}) {
    lines_.push_back({std::move(name), sanitize(std::move(instance)), pass, std::move(witness)});
  }

  /// Runs a check; an engaged result is a failure witness, and any library
  /// exception is recorded as a failure carrying its message.
  void run(const std::string& name, const std::string& instance,
           const std::function<std::optional<std::string>()>& body) {
    try {
      auto failure = body();
      add(name, instance, !failure, failure.value_or(""));
    } catch (const Error& e) {
      add(name, instance, false, e.what());
    }
  }

  void merge(const Report& other) { lines_.insert(lines_.end(), other.lines_.begin(), other.lines_.end()); }

  const std::vector<CheckLine>& lines() const noexcept { return lines_; }
  std::size_t size() const noexcept { return lines_.size(); }
  std::size_t passed() const {
    return static_cast<std::size_t>(std::count_if(lines_.begin(), lines_.end(), [](const CheckLine& l) { return l.pass; }));
  }
  std::size_t failed() const { return size() - passed(); }
  bool all_pass() const { return failed() == 0; }

  std::optional<CheckLine> first_failure() const {
    for (const CheckLine& l : lines_) {
      if (!l.pass) return l;
    }
    return std::nullopt;
  }

  /// Throws InvariantFault describing the first failure, if any.
  void require_all() const {
    if (auto f = first_failure()) throw InvariantFault(f->name + " failed on " + f->instance + ": " + f->witness);
  }

  std::string text() const {
    std::ostringstream os;
    for (const CheckLine& l : lines_) {
      os << "CHECK " << l.name << ' ' << l.instance << ' ' << (l.pass ? "PASS" : "FAIL");
      if (!l.witness.empty()) os << ' ' << l.witness;
      os << '\n';
    }
    return os.str();
  }

  nlohmann::json json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const CheckLine& l : lines_) {
      nlohmann::json j{{"name", l.name}, {"instance", l.instance}, {"status", l.pass ? "PASS" : "FAIL"}};
      if (!l.witness.empty()) j["witness"] = l.witness;
      arr.push_back(std::move(j));
    }
    return arr;
  }

  static std::string sanitize(std::string s) {
    std::replace_if(s.begin(), s.end(), [](char c) { return c == ' ' || c == '\t' || c == '\n'; }, '_');
    return s.empty() ? "-" : s;
  }

 private:
  std::vector<CheckLine> lines_;
};

}  // namespace nilspec
