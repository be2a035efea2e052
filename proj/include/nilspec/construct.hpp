#pragma once

// Ring constructions that carry extra structure: i-extensions (a ring
// together with one of its ideals, repackaged as a rng), quotients, and the
// finite unitization U_m(S) = S × Z_m.

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nilspec/hom.hpp"
#include "nilspec/ideal.hpp"
#include "nilspec/rng.hpp"

namespace nilspec {

/// S embedded as an ideal of R. Objects of the extension category additionally
/// need R unital; see e_object().
class IExtension {
 public:
  /// Validates that embed is an injective homomorphism onto an ideal of amb.
  IExtension(RngPtr sub, RngPtr amb, std::vector<Elem> embed, std::string label)
      : sub_(std::move(sub)), amb_(std::move(amb)), embed_(std::move(embed)), label_(std::move(label)) {
    if (auto v = hom_violation(*sub_, *amb_, embed_)) throw InvariantFault("extension " + label_ + ": " + *v);
    back_.assign(amb_->size(), std::nullopt);
    for (Elem s = 0; s < sub_->size(); ++s) {
      if (back_[embed_[s]]) throw InvariantFault("extension " + label_ + ": embedding not injective");
      back_[embed_[s]] = s;
    }
    std::vector<bool> mask(amb_->size(), false);
    for (Elem y : embed_) mask[y] = true;
    if (auto v = ideal_violation(*amb_, mask)) {
      throw InvariantFault("extension " + label_ + ": image is not an ideal: " + *v);
    }
  }

  const RngPtr& sub() const noexcept { return sub_; }
  const RngPtr& amb() const noexcept { return amb_; }
  const std::vector<Elem>& embed() const noexcept { return embed_; }
  const std::string& label() const noexcept { return label_; }
  bool e_object() const noexcept { return amb_->unital(); }

  Elem to_amb(Elem s) const { return embed_.at(s); }
  std::optional<Elem> to_sub(Elem r) const { return back_.at(r); }

  /// The image of S as an ideal of R.
  Ideal image() const { return Ideal(amb_, embed_); }

  /// Image of an S-ideal inside R (not an R-ideal in general).
  std::vector<Elem> lift(const Ideal& i) const {
    std::vector<Elem> out;
    out.reserve(i.size());
    for (Elem s : i.members()) out.push_back(embed_[s]);
    return out;
  }

  /// Q ∩ S, in S coordinates.
  Ideal restrict(const Ideal& q) const {
    std::vector<Elem> out;
    for (Elem s = 0; s < sub_->size(); ++s) {
      if (q.contains(embed_[s])) out.push_back(s);
    }
    return Ideal(sub_, std::move(out));
  }

 private:
  RngPtr sub_;
  RngPtr amb_;
  std::vector<Elem> embed_;
  std::vector<std::optional<Elem>> back_;
  std::string label_;
};

/// The ideal of r generated by gens, repackaged as a rng in its own right.
/// Element k of the new ring is the k-th smallest member of the ideal.
inline IExtension ideal_subrng(const RngPtr& r, std::span<const Elem> gens) {
  Ideal i = generated_ideal(r, gens);
  const std::vector<Elem>& mem = i.members();
  const std::size_t n = mem.size();
  std::vector<Elem> index(r->size(), 0);
  for (Elem k = 0; k < n; ++k) index[mem[k]] = k;
  std::vector<Elem> add(n * n);
  std::vector<Elem> mul(n * n);
  std::vector<std::string> names;
  names.reserve(n);
  for (Elem a = 0; a < n; ++a) {
    names.push_back(r->name(mem[a]));
    for (Elem b = 0; b < n; ++b) {
      add[a * n + b] = index[r->add(mem[a], mem[b])];
      mul[a * n + b] = index[r->mul(mem[a], mem[b])];
    }
  }
  std::string gens_label;
  for (std::size_t k = 0; k < gens.size(); ++k) gens_label += (k ? "," : "") + r->name(gens[k]);
  auto sub = std::make_shared<const FiniteRng>(n, std::move(add), std::move(mul),
                                               "(" + gens_label + ")" + r->label(), std::move(names));
  const std::string label = sub->label() + "<" + r->label();
  return IExtension(std::move(sub), r, mem, label);
}

inline IExtension ideal_subrng(const RngPtr& r, std::initializer_list<Elem> gens) {
  return ideal_subrng(r, std::span<const Elem>(gens.begin(), gens.size()));
}

/// S = R viewed as an ideal of itself.
inline IExtension self_extension(const RngPtr& r) {
  std::vector<Elem> embed(r->size());
  std::iota(embed.begin(), embed.end(), Elem{0});
  return IExtension(r, r, std::move(embed), r->label() + "<" + r->label());
}

struct Quotient {
  RngPtr ring;
  RngHom projection;
};

/// r / i with the canonical surjection. Cosets are numbered in order of their
/// least representative; coset c is named "[rep]".
inline Quotient quotient(const RngPtr& r, const Ideal& i) {
  if (auto v = ideal_violation(*r, i.mask())) throw DomainError("quotient: not an ideal: " + *v);
  constexpr Elem kUnset = ~Elem{0};
  std::vector<Elem> coset(r->size(), kUnset);
  std::vector<Elem> reps;
  for (Elem x = 0; x < r->size(); ++x) {
    if (coset[x] != kUnset) continue;
    const auto c = static_cast<Elem>(reps.size());
    reps.push_back(x);
    for (Elem m : i.members()) coset[r->add(x, m)] = c;
  }
  const std::size_t n = reps.size();
  std::vector<Elem> add(n * n);
  std::vector<Elem> mul(n * n);
  std::vector<std::string> names;
  names.reserve(n);
  for (Elem a = 0; a < n; ++a) {
    names.push_back("[" + r->name(reps[a]) + "]");
    for (Elem b = 0; b < n; ++b) {
      add[a * n + b] = coset[r->add(reps[a], reps[b])];
      mul[a * n + b] = coset[r->mul(reps[a], reps[b])];
    }
  }
  auto q = std::make_shared<const FiniteRng>(n, std::move(add), std::move(mul),
                                             r->label() + "/" + i.to_string(), std::move(names));
  return {q, RngHom::make(r, q, std::move(coset))};
}

/// Spectrum without enumerating ideals. Every prime contains N(r), and a
/// finite reduced rng is a product of finite fields, so the primes of r/N(r)
/// are the annihilators of its primitive idempotents. Each candidate is still
/// certified with is_prime. Used for rings whose ideal lattice is too large.
inline Spectrum spectrum_via_idempotents(const RngPtr& r) {
  const Quotient red = quotient(r, nilpotent_elements(r));
  const FiniteRng& q = *red.ring;
  std::vector<Elem> idem;
  for (Elem e = 0; e < q.size(); ++e) {
    if (e != q.zero() && q.mul(e, e) == e) idem.push_back(e);
  }
  Spectrum out;
  for (Elem e : idem) {
    const bool primitive = std::none_of(idem.begin(), idem.end(), [&](Elem f) { return f != e && q.mul(f, e) == f; });
    if (!primitive) continue;
    std::vector<Elem> members;
    for (Elem x = 0; x < r->size(); ++x) {
      if (q.mul(red.projection(x), e) == q.zero()) members.push_back(x);
    }
    auto p = PrimeIdeal::certify(Ideal(r, std::move(members)));
    if (!p) throw InvariantFault("annihilator of a primitive idempotent is not prime in " + r->label());
    out.push_back(std::move(*p));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// U_m(S) = S × Z_m with (s,a)(t,b) = (st + b·s + a·t, ab), identity (0,1).
/// Element (s, a) has index a·|S| + s, so S × {0} keeps S's own indices.
/// m must be a multiple of the additive exponent of S.
inline IExtension unitization(const RngPtr& s, std::size_t m) {
  if (m == 0) throw DomainError("unitization: modulus must be positive");
  const std::size_t exp = additive_exponent(*s);
  if (m % exp != 0) {
    throw DomainError("unitization: modulus " + std::to_string(m) + " is not a multiple of the additive exponent " +
                      std::to_string(exp));
  }
  const std::size_t ns = s->size();
  require_size_within_limit(ns * m, "unitization");
  const std::size_t n = ns * m;

  // scaled[k * ns + x] = k·x for k < m.
  std::vector<Elem> scaled(ns * m);
  for (Elem x = 0; x < ns; ++x) {
    Elem acc = s->zero();
    for (std::size_t k = 0; k < m; ++k) {
      scaled[k * ns + x] = acc;
      acc = s->add(acc, x);
    }
  }
  std::vector<Elem> add(n * n);
  std::vector<Elem> mul(n * n);
  std::vector<std::string> names;
  names.reserve(n);
  for (std::size_t a = 0; a < m; ++a) {
    for (Elem x = 0; x < ns; ++x) names.push_back("(" + s->name(x) + "," + std::to_string(a) + ")");
  }
  for (std::size_t u = 0; u < n; ++u) {
    const auto x = static_cast<Elem>(u % ns);
    const std::size_t a = u / ns;
    for (std::size_t v = 0; v < n; ++v) {
      const auto y = static_cast<Elem>(v % ns);
      const std::size_t b = v / ns;
      add[u * n + v] = static_cast<Elem>(((a + b) % m) * ns + s->add(x, y));
      const Elem first = s->add(s->add(s->mul(x, y), scaled[b * ns + x]), scaled[a * ns + y]);
      mul[u * n + v] = static_cast<Elem>(((a * b) % m) * ns + first);
    }
  }
  auto amb = std::make_shared<const FiniteRng>(n, std::move(add), std::move(mul),
                                               "U" + std::to_string(m) + "(" + s->label() + ")", std::move(names));
  std::vector<Elem> embed(ns);
  std::iota(embed.begin(), embed.end(), Elem{0});
  const std::string label = s->label() + "<" + amb->label();
  return IExtension(s, std::move(amb), std::move(embed), label);
}

/// U_m(S) with m the additive exponent of S.
inline IExtension canonical_extension(const RngPtr& s) { return unitization(s, additive_exponent(*s)); }

}  // namespace nilspec
