#pragma once

// Morphisms of i-extensions: unital ring maps h : R1 -> R2 with h(S1) = S2.

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "nilspec/construct.hpp"
#include "nilspec/hom.hpp"

namespace nilspec {

struct Rejection {
  std::string reason;
  std::optional<Elem> witness;

  std::string describe() const {
    return witness ? reason + " (witness " + std::to_string(*witness) + ")" : reason;
  }
};

class EMorphism;
inline std::variant<EMorphism, Rejection> check_e_morphism(const RngHom& h, const IExtension& src,
                                                           const IExtension& dst);

class EMorphism {
 public:
  const RngHom& hom() const noexcept { return hom_; }
  const IExtension& src() const noexcept { return src_; }
  const IExtension& dst() const noexcept { return dst_; }

  /// h restricted to the sub-rings, in sub-ring coordinates: S1 -> S2.
  const std::vector<Elem>& restriction() const noexcept { return restriction_; }

  /// h|S is the identity under the two embeddings and the sub-rings coincide,
  /// i.e. this is a morphism of the fixed-S category.
  bool fixes_sub() const {
    if (!src_.sub()->same_tables(*dst_.sub())) return false;
    for (Elem s = 0; s < restriction_.size(); ++s) {
      if (restriction_[s] != s) return false;
    }
    return true;
  }

  bool restriction_injective() const {
    std::vector<bool> hit(dst_.sub()->size(), false);
    for (Elem t : restriction_) {
      if (hit[t]) return false;
      hit[t] = true;
    }
    return true;
  }

 private:
  friend std::variant<EMorphism, Rejection> check_e_morphism(const RngHom&, const IExtension&, const IExtension&);
  EMorphism(RngHom h, IExtension src, IExtension dst, std::vector<Elem> restriction)
      : hom_(std::move(h)), src_(std::move(src)), dst_(std::move(dst)), restriction_(std::move(restriction)) {}

  RngHom hom_;
  IExtension src_;
  IExtension dst_;
  std::vector<Elem> restriction_;
};

/// Accepts h iff it is unital and maps the image of src's sub-ring exactly
/// onto the image of dst's sub-ring.
inline std::variant<EMorphism, Rejection> check_e_morphism(const RngHom& h, const IExtension& src,
                                                           const IExtension& dst) {
  if (!h.source()->same_tables(*src.amb()) || !h.target()->same_tables(*dst.amb())) {
    return Rejection{"hom does not run between the ambient rings", std::nullopt};
  }
  if (!src.e_object() || !dst.e_object()) return Rejection{"ambient ring without identity", std::nullopt};
  if (!h.unital()) return Rejection{"not unital", src.amb()->identity()};
  std::vector<Elem> restriction(src.sub()->size());
  std::vector<bool> hit(dst.sub()->size(), false);
  for (Elem s = 0; s < src.sub()->size(); ++s) {
    const Elem y = h(src.to_amb(s));
    const auto t = dst.to_sub(y);
    if (!t) return Rejection{"h(S1) leaves S2", src.to_amb(s)};
    restriction[s] = *t;
    hit[*t] = true;
  }
  for (Elem t = 0; t < hit.size(); ++t) {
    if (!hit[t]) return Rejection{"h(S1) misses part of S2", dst.to_amb(t)};
  }
  return EMorphism(h, src, dst, std::move(restriction));
}

/// Throwing variant for callers that know h must qualify.
inline EMorphism make_e_morphism(const RngHom& h, const IExtension& src, const IExtension& dst) {
  auto r = check_e_morphism(h, src, dst);
  if (auto* rej = std::get_if<Rejection>(&r)) {
    throw InvariantFault("not an extension morphism " + src.label() + " -> " + dst.label() + ": " + rej->describe());
  }
  return std::get<EMorphism>(std::move(r));
}

/// When h|S is a bijection S1 -> S2, re-embeds S1 into R2 through h so that
/// h becomes a morphism fixing S1 pointwise.
inline std::optional<EMorphism> as_fixed_sub(const EMorphism& m) {
  if (m.fixes_sub()) return m;
  if (!m.restriction_injective()) return std::nullopt;
  std::vector<Elem> embed(m.src().sub()->size());
  for (Elem s = 0; s < embed.size(); ++s) embed[s] = m.hom()(m.src().to_amb(s));
  IExtension dst(m.src().sub(), m.dst().amb(), std::move(embed), m.src().sub()->label() + "<" + m.dst().amb()->label());
  return make_e_morphism(m.hom(), m.src(), dst);
}

}  // namespace nilspec
