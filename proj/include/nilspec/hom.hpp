#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nilspec/rng.hpp"

namespace nilspec {

/// Returns a description of the first failure of the homomorphism laws, if any.
inline std::optional<std::string> hom_violation(const FiniteRng& src, const FiniteRng& dst,
                                                const std::vector<Elem>& map) {
  if (map.size() != src.size()) return "map length does not match source size";
  for (Elem x = 0; x < src.size(); ++x) {
    if (map[x] >= dst.size()) return "image of " + std::to_string(x) + " out of range";
  }
  if (map[src.zero()] != dst.zero()) return "zero not preserved";
  for (Elem a = 0; a < src.size(); ++a) {
    for (Elem b = a; b < src.size(); ++b) {
      if (map[src.add(a, b)] != dst.add(map[a], map[b])) {
        return "additivity fails at (" + std::to_string(a) + "," + std::to_string(b) + ")";
      }
      if (map[src.mul(a, b)] != dst.mul(map[a], map[b])) {
        return "multiplicativity fails at (" + std::to_string(a) + "," + std::to_string(b) + ")";
      }
    }
  }
  return std::nullopt;
}

class RngHom {
 public:
  /// Exhaustively validated homomorphism. Throws InvariantFault with a witness.
  static RngHom make(RngPtr src, RngPtr dst, std::vector<Elem> map) {
    if (auto v = hom_violation(*src, *dst, map)) {
      throw InvariantFault("not a homomorphism " + src->label() + " -> " + dst->label() + ": " +
                           *v);
    }
    return RngHom(std::move(src), std::move(dst), std::move(map));
  }

  static RngHom identity(const RngPtr& r) {
    std::vector<Elem> map(r->size());
    for (Elem x = 0; x < r->size(); ++x) map[x] = x;
    return RngHom(r, r, std::move(map));
  }

  const RngPtr& source() const noexcept { return src_; }
  const RngPtr& target() const noexcept { return dst_; }
  const std::vector<Elem>& table() const noexcept { return map_; }
  Elem operator()(Elem x) const { return map_.at(x); }

  /// Both rings have identity and it is preserved.
  bool unital() const noexcept {
    return src_->identity() && dst_->identity() && map_[*src_->identity()] == *dst_->identity();
  }

  bool injective() const {
    std::vector<bool> hit(dst_->size(), false);
    for (Elem y : map_) {
      if (hit[y]) return false;
      hit[y] = true;
    }
    return true;
  }

  bool surjective() const {
    std::vector<bool> hit(dst_->size(), false);
    std::size_t count = 0;
    for (Elem y : map_) {
      if (!hit[y]) {
        hit[y] = true;
        ++count;
      }
    }
    return count == dst_->size();
  }

  friend bool operator==(const RngHom& a, const RngHom& b) {
    return a.src_->same_tables(*b.src_) && a.dst_->same_tables(*b.dst_) && a.map_ == b.map_;
  }

 private:
  RngHom(RngPtr src, RngPtr dst, std::vector<Elem> map)
      : src_(std::move(src)), dst_(std::move(dst)), map_(std::move(map)) {}

  RngPtr src_;
  RngPtr dst_;
  std::vector<Elem> map_;
};

/// g ∘ f.
inline RngHom compose(const RngHom& g, const RngHom& f) {
  if (!f.target()->same_tables(*g.source())) throw DomainError("compose: rings do not match");
  std::vector<Elem> map(f.source()->size());
  for (Elem x = 0; x < map.size(); ++x) map[x] = g(f(x));
  return RngHom::make(f.source(), g.target(), std::move(map));
}

}  // namespace nilspec
