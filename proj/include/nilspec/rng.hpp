#pragma once

// Finite commutative rings, identity optional, given by Cayley tables.
//
// Elements are dense indices 0..size-1 and tables are row-major, so a ring is
// fully described by (size, add, mul). Everything is immutable after
// construction; rings are shared through RngPtr.

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "nilspec/errors.hpp"

namespace nilspec {

using Elem = std::uint32_t;

inline constexpr std::size_t kDefaultMaxRingSize = 4096;

namespace detail {
inline std::atomic<std::size_t>& max_ring_size_slot() {
  static std::atomic<std::size_t> slot{[] {
    if (const char* env = std::getenv("NILSPEC_MAX_SIZE")) {
      char* end = nullptr;
      const unsigned long long v = std::strtoull(env, &end, 10);
      if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return kDefaultMaxRingSize;
  }()};
  return slot;
}
}  // namespace detail

/// Upper bound on the element count of any constructed ring.
inline std::size_t max_ring_size() { return detail::max_ring_size_slot().load(); }
inline void set_max_ring_size(std::size_t n) { detail::max_ring_size_slot().store(n); }

inline void require_size_within_limit(std::size_t n, const std::string& what) {
  if (n > max_ring_size()) {
    throw LimitError(what + ": size " + std::to_string(n) + " exceeds limit " +
                     std::to_string(max_ring_size()));
  }
}

class FiniteRng {
 public:
  /// Builds a ring from tables WITHOUT checking the axioms. Use build_table()
  /// for untrusted input; internal constructors call this directly because
  /// their tables satisfy the axioms by construction.
  FiniteRng(std::size_t size, std::vector<Elem> add, std::vector<Elem> mul, std::string label,
            std::vector<std::string> names = {})
      : n_(size), add_(std::move(add)), mul_(std::move(mul)), label_(std::move(label)),
        names_(std::move(names)) {
    if (n_ == 0) throw DomainError("ring must have at least one element");
    if (add_.size() != n_ * n_ || mul_.size() != n_ * n_) {
      throw DomainError("table dimensions do not match ring size " + std::to_string(n_));
    }
    for (std::size_t i = 0; i < n_ * n_; ++i) {
      if (add_[i] >= n_ || mul_[i] >= n_) throw DomainError("table entry out of range");
    }
    if (names_.empty()) {
      names_.reserve(n_);
      for (std::size_t i = 0; i < n_; ++i) names_.push_back(std::to_string(i));
    } else if (names_.size() != n_) {
      throw DomainError("element name count does not match ring size");
    }
    derive();
  }

  std::size_t size() const noexcept { return n_; }
  Elem add(Elem a, Elem b) const noexcept { return add_[a * n_ + b]; }
  Elem mul(Elem a, Elem b) const noexcept { return mul_[a * n_ + b]; }
  Elem neg(Elem a) const noexcept { return neg_[a]; }
  Elem sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }
  Elem zero() const noexcept { return zero_; }
  std::optional<Elem> identity() const noexcept { return identity_; }
  bool unital() const noexcept { return identity_.has_value(); }

  /// k·x for a non-negative integer k.
  Elem scale(std::uint64_t k, Elem x) const noexcept {
    Elem acc = zero_;
    Elem base = x;
    while (k != 0) {
      if (k & 1U) acc = add(acc, base);
      base = add(base, base);
      k >>= 1U;
    }
    return acc;
  }

  /// Least k >= 1 with k·x = 0.
  std::size_t additive_order(Elem x) const noexcept {
    std::size_t k = 1;
    for (Elem cur = x; cur != zero_; cur = add(cur, x)) ++k;
    return k;
  }

  const std::vector<Elem>& add_table() const noexcept { return add_; }
  const std::vector<Elem>& mul_table() const noexcept { return mul_; }
  const std::string& label() const noexcept { return label_; }
  const std::string& name(Elem x) const { return names_.at(x); }
  const std::vector<std::string>& names() const noexcept { return names_; }

  /// Same carrier and operations; labels and names are ignored.
  bool same_tables(const FiniteRng& other) const noexcept {
    return n_ == other.n_ && add_ == other.add_ && mul_ == other.mul_;
  }

 private:
  void derive() {
    zero_ = 0;
    for (Elem z = 0; z < n_; ++z) {
      bool neutral = true;
      for (Elem x = 0; x < n_ && neutral; ++x) neutral = add(z, x) == x;
      if (neutral) {
        zero_ = z;
        break;
      }
    }
    neg_.assign(n_, zero_);
    for (Elem x = 0; x < n_; ++x) {
      for (Elem y = 0; y < n_; ++y) {
        if (add(x, y) == zero_) {
          neg_[x] = y;
          break;
        }
      }
    }
    identity_.reset();
    for (Elem e = 0; e < n_; ++e) {
      bool ok = true;
      for (Elem x = 0; x < n_ && ok; ++x) ok = mul(e, x) == x;
      if (ok) {
        identity_ = e;
        break;
      }
    }
  }

  std::size_t n_;
  std::vector<Elem> add_;
  std::vector<Elem> mul_;
  std::vector<Elem> neg_;
  Elem zero_ = 0;
  std::optional<Elem> identity_;
  std::string label_;
  std::vector<std::string> names_;
};

using RngPtr = std::shared_ptr<const FiniteRng>;

/// A failed axiom instance: the axiom's name and the elements that break it.
struct AxiomViolation {
  std::string axiom;
  std::vector<Elem> witness;

  std::string describe() const {
    std::ostringstream os;
    os << axiom << " fails at (";
    for (std::size_t i = 0; i < witness.size(); ++i) os << (i ? "," : "") << witness[i];
    os << ")";
    return os.str();
  }
};

/// Exhaustive check of every commutative-ring axiom (identity not required).
/// Cubic in the size. Returns the first violation found.
inline std::optional<AxiomViolation> check_axioms(std::size_t n, const std::vector<Elem>& add,
                                                  const std::vector<Elem>& mul) {
  if (n == 0) return AxiomViolation{"nonempty carrier", {}};
  if (add.size() != n * n || mul.size() != n * n) return AxiomViolation{"square tables", {}};
  auto A = [&](Elem a, Elem b) { return add[a * n + b]; };
  auto M = [&](Elem a, Elem b) { return mul[a * n + b]; };
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = 0; b < n; ++b) {
      if (A(a, b) >= n) return AxiomViolation{"add closed", {a, b}};
      if (M(a, b) >= n) return AxiomViolation{"mul closed", {a, b}};
    }
  }
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = a + 1; b < n; ++b) {
      if (A(a, b) != A(b, a)) return AxiomViolation{"add commutative", {a, b}};
      if (M(a, b) != M(b, a)) return AxiomViolation{"mul commutative", {a, b}};
    }
  }
  std::optional<Elem> zero;
  for (Elem z = 0; z < n && !zero; ++z) {
    bool neutral = true;
    for (Elem x = 0; x < n && neutral; ++x) neutral = A(z, x) == x;
    if (neutral) zero = z;
  }
  if (!zero) return AxiomViolation{"additive identity", {}};
  for (Elem a = 0; a < n; ++a) {
    bool has_inverse = false;
    for (Elem b = 0; b < n && !has_inverse; ++b) has_inverse = A(a, b) == *zero;
    if (!has_inverse) return AxiomViolation{"additive inverse", {a}};
  }
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = 0; b < n; ++b) {
      const Elem ab = A(a, b);
      const Elem mab = M(a, b);
      for (Elem c = 0; c < n; ++c) {
        if (A(ab, c) != A(a, A(b, c))) return AxiomViolation{"add associative", {a, b, c}};
        if (M(mab, c) != M(a, M(b, c))) return AxiomViolation{"mul associative", {a, b, c}};
        if (M(a, A(b, c)) != A(mab, M(a, c))) return AxiomViolation{"distributive", {a, b, c}};
      }
    }
  }
  return std::nullopt;
}

inline std::optional<AxiomViolation> check_axioms(const FiniteRng& r) {
  return check_axioms(r.size(), r.add_table(), r.mul_table());
}

/// Validated ring from raw tables; throws AxiomError naming the violating triple.
inline RngPtr build_table(const std::vector<std::vector<Elem>>& add,
                          const std::vector<std::vector<Elem>>& mul, std::string label = "table") {
  const std::size_t n = add.size();
  if (n == 0) throw DomainError("empty addition table");
  if (mul.size() != n) throw DomainError("addition and multiplication tables differ in size");
  require_size_within_limit(n, "build_table");
  std::vector<Elem> flat_add;
  std::vector<Elem> flat_mul;
  flat_add.reserve(n * n);
  flat_mul.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (add[i].size() != n || mul[i].size() != n) throw DomainError("tables must be square");
    flat_add.insert(flat_add.end(), add[i].begin(), add[i].end());
    flat_mul.insert(flat_mul.end(), mul[i].begin(), mul[i].end());
  }
  if (auto v = check_axioms(n, flat_add, flat_mul)) throw AxiomError(v->describe());
  return std::make_shared<const FiniteRng>(n, std::move(flat_add), std::move(flat_mul),
                                           std::move(label));
}

/// Integers modulo n. The zero ring for n = 1, where 0 is also the identity.
inline RngPtr build_zmod(std::size_t n) {
  if (n == 0) throw DomainError("build_zmod: modulus must be positive");
  require_size_within_limit(n, "build_zmod");
  std::vector<Elem> add(n * n);
  std::vector<Elem> mul(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      add[a * n + b] = static_cast<Elem>((a + b) % n);
      mul[a * n + b] = static_cast<Elem>((a * b) % n);
    }
  }
  return std::make_shared<const FiniteRng>(n, std::move(add), std::move(mul),
                                           "Z" + std::to_string(n));
}

/// Componentwise product; element (i, j) has index i * |b| + j.
inline RngPtr build_product(const FiniteRng& a, const FiniteRng& b) {
  const std::size_t na = a.size();
  const std::size_t nb = b.size();
  require_size_within_limit(na * nb, "build_product");
  const std::size_t n = na * nb;
  std::vector<Elem> add(n * n);
  std::vector<Elem> mul(n * n);
  std::vector<std::string> names;
  names.reserve(n);
  for (Elem i = 0; i < na; ++i) {
    for (Elem j = 0; j < nb; ++j) names.push_back("(" + a.name(i) + "," + b.name(j) + ")");
  }
  for (std::size_t x = 0; x < n; ++x) {
    const auto xi = static_cast<Elem>(x / nb);
    const auto xj = static_cast<Elem>(x % nb);
    for (std::size_t y = 0; y < n; ++y) {
      const auto yi = static_cast<Elem>(y / nb);
      const auto yj = static_cast<Elem>(y % nb);
      add[x * n + y] = static_cast<Elem>(a.add(xi, yi) * nb + b.add(xj, yj));
      mul[x * n + y] = static_cast<Elem>(a.mul(xi, yi) * nb + b.mul(xj, yj));
    }
  }
  return std::make_shared<const FiniteRng>(n, std::move(add), std::move(mul),
                                           a.label() + "x" + b.label(), std::move(names));
}

/// Least m >= 1 with m·x = 0 for every x (lcm of the additive orders).
inline std::size_t additive_exponent(const FiniteRng& r) {
  std::size_t m = 1;
  for (Elem x = 0; x < r.size(); ++x) m = std::lcm(m, r.additive_order(x));
  return m;
}

/// The unique e with e·x = x for all x, if any.
inline std::optional<Elem> find_identity(const FiniteRng& r) { return r.identity(); }

}  // namespace nilspec
