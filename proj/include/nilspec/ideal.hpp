#pragma once

// Ideals, primality, spectra and nilradicals of finite rngs.

#include <algorithm>
#include <deque>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "nilspec/errors.hpp"
#include "nilspec/rng.hpp"

namespace nilspec {

inline constexpr std::size_t kDefaultMaxIdeals = 200000;

/// A subset of a ring's elements. Construction does not check the ideal
/// axioms; use make_ideal() for that. Members are kept sorted.
class Ideal {
 public:
  Ideal(RngPtr ring, std::vector<Elem> members) : ring_(std::move(ring)), members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    mask_.assign(ring_->size(), false);
    for (Elem x : members_) mask_.at(x) = true;
  }

  static Ideal whole(const RngPtr& ring) {
    std::vector<Elem> all(ring->size());
    for (Elem x = 0; x < all.size(); ++x) all[x] = x;
    return Ideal(ring, std::move(all));
  }
  static Ideal zero(const RngPtr& ring) { return Ideal(ring, {ring->zero()}); }

  const RngPtr& ring() const noexcept { return ring_; }
  const std::vector<Elem>& members() const noexcept { return members_; }
  const std::vector<bool>& mask() const noexcept { return mask_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool contains(Elem x) const { return mask_.at(x); }
  bool is_whole() const noexcept { return members_.size() == ring_->size(); }

  bool subset_of(const Ideal& other) const {
    return std::all_of(members_.begin(), members_.end(), [&](Elem x) { return other.contains(x); });
  }

  /// "{0,3,6,9}" using the ring's element names.
  std::string to_string() const {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < members_.size(); ++i) os << (i ? "," : "") << ring_->name(members_[i]);
    os << '}';
    return os.str();
  }

  friend bool operator==(const Ideal& a, const Ideal& b) { return a.members_ == b.members_; }

  /// Canonical order: by cardinality, then lexicographically by member list.
  friend bool operator<(const Ideal& a, const Ideal& b) {
    if (a.members_.size() != b.members_.size()) return a.members_.size() < b.members_.size();
    return a.members_ < b.members_;
  }

 private:
  RngPtr ring_;
  std::vector<Elem> members_;
  std::vector<bool> mask_;
};

/// Returns a witness if the subset is not an ideal.
inline std::optional<std::string> ideal_violation(const FiniteRng& r, const std::vector<bool>& mask) {
  if (!mask.at(r.zero())) return "zero missing";
  for (Elem a = 0; a < r.size(); ++a) {
    if (!mask[a]) continue;
    if (!mask[r.neg(a)]) return "not closed under negation at " + std::to_string(a);
    for (Elem b = 0; b < r.size(); ++b) {
      if (mask[b] && !mask[r.add(a, b)]) {
        return "not closed under addition at (" + std::to_string(a) + "," + std::to_string(b) + ")";
      }
      if (!mask[r.mul(b, a)]) {
        return "does not absorb " + std::to_string(b) + "*" + std::to_string(a);
      }
    }
  }
  return std::nullopt;
}

inline bool is_ideal(const Ideal& i) { return !ideal_violation(*i.ring(), i.mask()); }

/// Validated ideal; throws DomainError when the members are not an ideal.
inline Ideal make_ideal(const RngPtr& r, std::vector<Elem> members) {
  Ideal i(r, std::move(members));
  if (auto v = ideal_violation(*r, i.mask())) throw DomainError("not an ideal of " + r->label() + ": " + *v);
  return i;
}

namespace detail {

// Grows the additive subgroup `members` (with membership `mask`) by g. The new
// subgroup is the disjoint union of the cosets H + k·g, walked until k·g ∈ H.
inline void adjoin_additive(const FiniteRng& r, std::vector<Elem>& members, std::vector<bool>& mask,
                            Elem g) {
  if (mask[g]) return;
  const std::size_t base = members.size();
  for (Elem cur = g; !mask[cur]; cur = r.add(cur, g)) {
    for (std::size_t i = 0; i < base; ++i) {
      const Elem x = r.add(members[i], cur);
      mask[x] = true;
      members.push_back(x);
    }
  }
}

}  // namespace detail

/// Additive subgroup generated by `seeds`.
inline std::vector<Elem> additive_span(const FiniteRng& r, std::span<const Elem> seeds) {
  std::vector<Elem> members{r.zero()};
  std::vector<bool> mask(r.size(), false);
  mask[r.zero()] = true;
  for (Elem g : seeds) detail::adjoin_additive(r, members, mask, g);
  std::sort(members.begin(), members.end());
  return members;
}

/// Least ideal containing gens. For a rng the ideal generated by x is
/// Zx + Rx, so the additive span of {g} ∪ gR is already an ideal.
inline Ideal generated_ideal(const RngPtr& r, std::span<const Elem> gens) {
  std::vector<Elem> members{r->zero()};
  std::vector<bool> mask(r->size(), false);
  mask[r->zero()] = true;
  for (Elem g : gens) {
    if (g >= r->size()) throw DomainError("generator " + std::to_string(g) + " out of range");
    detail::adjoin_additive(*r, members, mask, g);
    for (Elem x = 0; x < r->size(); ++x) detail::adjoin_additive(*r, members, mask, r->mul(g, x));
  }
  return Ideal(r, std::move(members));
}

inline Ideal generated_ideal(const RngPtr& r, std::initializer_list<Elem> gens) {
  return generated_ideal(r, std::span<const Elem>(gens.begin(), gens.size()));
}

/// I + J, computed as the additive span of I ∪ J (an ideal when I, J are).
inline Ideal ideal_sum(const Ideal& a, const Ideal& b) {
  const FiniteRng& r = *a.ring();
  std::vector<Elem> members = a.members();
  std::vector<bool> mask = a.mask();
  for (Elem g : b.members()) detail::adjoin_additive(r, members, mask, g);
  return Ideal(a.ring(), std::move(members));
}

inline Ideal intersect(const Ideal& a, const Ideal& b) {
  std::vector<Elem> out;
  for (Elem x : a.members()) {
    if (b.contains(x)) out.push_back(x);
  }
  return Ideal(a.ring(), std::move(out));
}

/// Every ideal of r, canonically sorted. Seeds with {0} and the principal
/// ideals, then closes under sums with principal ideals until fixpoint; every
/// ideal is the sum of the principal ideals of its members, so this is complete.
inline std::vector<Ideal> enumerate_ideals(const RngPtr& r, std::size_t max_ideals = kDefaultMaxIdeals) {
  std::set<Ideal> found;
  std::vector<Ideal> principals;
  {
    std::set<Ideal> seen;
    for (Elem x = 0; x < r->size(); ++x) {
      Ideal p = generated_ideal(r, {x});
      if (seen.insert(p).second) principals.push_back(std::move(p));
    }
  }
  std::deque<Ideal> work;
  auto push = [&](Ideal i) {
    if (found.insert(i).second) {
      if (found.size() > max_ideals) {
        throw LimitError("enumerate_ideals: more than " + std::to_string(max_ideals) + " ideals in " +
                         r->label());
      }
      work.push_back(std::move(i));
    }
  };
  push(Ideal::zero(r));
  for (const Ideal& p : principals) push(p);
  while (!work.empty()) {
    Ideal cur = std::move(work.front());
    work.pop_front();
    for (const Ideal& p : principals) {
      if (!p.subset_of(cur)) push(ideal_sum(cur, p));
    }
  }
  return {found.begin(), found.end()};
}

struct PrimalityVerdict {
  bool prime = false;
  bool improper = false;
  /// (a, b) with ab ∈ I, a ∉ I, b ∉ I.
  std::optional<std::pair<Elem, Elem>> witness;
};

/// Proper ideal satisfying ab ∈ I ⇒ a ∈ I or b ∈ I.
inline PrimalityVerdict is_prime(const Ideal& i) {
  const FiniteRng& r = *i.ring();
  if (i.is_whole()) return {false, true, std::nullopt};
  for (Elem a = 0; a < r.size(); ++a) {
    if (i.contains(a)) continue;
    for (Elem b = a; b < r.size(); ++b) {
      if (!i.contains(b) && i.contains(r.mul(a, b))) return {false, false, std::make_pair(a, b)};
    }
  }
  return {true, false, std::nullopt};
}

/// An ideal that has passed is_prime.
class PrimeIdeal : public Ideal {
 public:
  static std::optional<PrimeIdeal> certify(const Ideal& i) {
    if (!is_prime(i).prime) return std::nullopt;
    return PrimeIdeal(i);
  }

 private:
  explicit PrimeIdeal(const Ideal& i) : Ideal(i) {}
};

using Spectrum = std::vector<PrimeIdeal>;

/// All prime ideals, in canonical ideal order.
inline Spectrum spectrum(const RngPtr& r, std::size_t max_ideals = kDefaultMaxIdeals) {
  Spectrum out;
  for (const Ideal& i : enumerate_ideals(r, max_ideals)) {
    if (auto p = PrimeIdeal::certify(i)) out.push_back(std::move(*p));
  }
  return out;
}

/// Intersection of the given primes; the whole ring for an empty family.
inline Ideal kernel(const RngPtr& r, std::span<const PrimeIdeal> points) {
  Ideal acc = Ideal::whole(r);
  for (const PrimeIdeal& p : points) acc = intersect(acc, p);
  return acc;
}

inline bool is_nilpotent(const FiniteRng& r, Elem x) {
  Elem cur = x;
  for (std::size_t k = 0; k <= r.size(); ++k) {
    if (cur == r.zero()) return true;
    cur = r.mul(cur, x);
  }
  return false;
}

inline Ideal nilpotent_elements(const RngPtr& r) {
  std::vector<Elem> out;
  for (Elem x = 0; x < r->size(); ++x) {
    if (is_nilpotent(*r, x)) out.push_back(x);
  }
  return Ideal(r, std::move(out));
}

struct NilradicalRoutes {
  Ideal nilpotents;
  Ideal prime_kernel;
  bool agree() const { return nilpotents == prime_kernel; }
};

inline NilradicalRoutes nilradical_routes(const RngPtr& r, const Spectrum& spec) {
  return {nilpotent_elements(r), kernel(r, spec)};
}

/// N(r), computed as the nilpotent elements and as ∩Spec r; a disagreement is
/// an InvariantFault.
inline Ideal nilradical(const RngPtr& r, const Spectrum& spec) {
  NilradicalRoutes routes = nilradical_routes(r, spec);
  if (!routes.agree()) {
    throw InvariantFault("nilradical of " + r->label() + ": nilpotents " + routes.nilpotents.to_string() +
                         " != prime kernel " + routes.prime_kernel.to_string());
  }
  return std::move(routes.nilpotents);
}

inline Ideal nilradical(const RngPtr& r) { return nilradical(r, spectrum(r)); }

/// D(a) = {P : a ∉ P}.
inline Spectrum basic_open(const Spectrum& spec, Elem a) {
  Spectrum out;
  for (const PrimeIdeal& p : spec) {
    if (!p.contains(a)) out.push_back(p);
  }
  return out;
}

/// V(I) = {P : P ⊇ I}.
inline Spectrum vanishing(const Spectrum& spec, const Ideal& i) {
  Spectrum out;
  for (const PrimeIdeal& p : spec) {
    if (i.subset_of(p)) out.push_back(p);
  }
  return out;
}

inline Spectrum basic_open(const RngPtr& r, Elem a) { return basic_open(spectrum(r), a); }
inline Spectrum vanishing(const RngPtr& r, const Ideal& i) { return vanishing(spectrum(r), i); }

}  // namespace nilspec
