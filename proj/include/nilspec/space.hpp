#pragma once

// Finite T0 spaces stored as their specialization order.
//
// leq(x, y) means x ⤳ y, i.e. y lies in the closure of {x}. Closed sets are
// the up-sets and open sets the down-sets; open and closed families are
// derived on demand.

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "nilspec/errors.hpp"
#include "nilspec/ideal.hpp"

namespace nilspec {

using PointSet = std::vector<bool>;

/// Spaces up to this many points have their open sets enumerated literally.
inline constexpr std::size_t kLiteralOpenEnumeration = 20;

class FiniteSpace {
 public:
  FiniteSpace() = default;
  FiniteSpace(std::vector<std::string> labels, std::vector<bool> leq)
      : labels_(std::move(labels)), leq_(std::move(leq)) {
    if (leq_.size() != labels_.size() * labels_.size()) throw DomainError("specialization matrix has wrong size");
  }

  std::size_t size() const noexcept { return labels_.size(); }
  bool leq(std::size_t x, std::size_t y) const { return leq_[x * size() + y]; }
  const std::string& label(std::size_t x) const { return labels_.at(x); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  PointSet empty_set() const { return PointSet(size(), false); }
  PointSet full_set() const { return PointSet(size(), true); }

  bool is_up_set(const PointSet& s) const {
    for (std::size_t x = 0; x < size(); ++x) {
      if (!s[x]) continue;
      for (std::size_t y = 0; y < size(); ++y) {
        if (leq(x, y) && !s[y]) return false;
      }
    }
    return true;
  }

  bool is_down_set(const PointSet& s) const {
    for (std::size_t y = 0; y < size(); ++y) {
      if (!s[y]) continue;
      for (std::size_t x = 0; x < size(); ++x) {
        if (leq(x, y) && !s[x]) return false;
      }
    }
    return true;
  }

  bool is_discrete() const {
    for (std::size_t x = 0; x < size(); ++x) {
      for (std::size_t y = 0; y < size(); ++y) {
        if (x != y && leq(x, y)) return false;
      }
    }
    return true;
  }

 private:
  std::vector<std::string> labels_;
  std::vector<bool> leq_;
};

inline PointSet closure(const FiniteSpace& x, const PointSet& subset) {
  PointSet out = x.empty_set();
  for (std::size_t a = 0; a < x.size(); ++a) {
    if (!subset[a]) continue;
    for (std::size_t b = 0; b < x.size(); ++b) {
      if (x.leq(a, b)) out[b] = true;
    }
  }
  return out;
}

inline PointSet down_closure(const FiniteSpace& x, const PointSet& subset) {
  PointSet out = x.empty_set();
  for (std::size_t b = 0; b < x.size(); ++b) {
    if (!subset[b]) continue;
    for (std::size_t a = 0; a < x.size(); ++a) {
      if (x.leq(a, b)) out[a] = true;
    }
  }
  return out;
}

inline bool is_dense(const FiniteSpace& x, const PointSet& subset) { return closure(x, subset) == x.full_set(); }
inline bool is_open(const FiniteSpace& x, const PointSet& subset) { return x.is_down_set(subset); }
inline bool is_closed(const FiniteSpace& x, const PointSet& subset) { return x.is_up_set(subset); }

inline PointSet complement(PointSet s) {
  s.flip();
  return s;
}

/// Every open set of a space small enough to enumerate subsets.
inline std::vector<PointSet> open_sets(const FiniteSpace& x) {
  if (x.size() > kLiteralOpenEnumeration) throw LimitError("open_sets: space too large to enumerate");
  std::vector<PointSet> out;
  const std::uint64_t total = std::uint64_t{1} << x.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    PointSet s(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) s[i] = (mask >> i) & 1U;
    if (x.is_down_set(s)) out.push_back(std::move(s));
  }
  return out;
}

struct SpaceMap {
  FiniteSpace source;
  FiniteSpace target;
  std::vector<std::size_t> map;

  std::size_t operator()(std::size_t p) const { return map.at(p); }

  PointSet image(const PointSet& s) const {
    PointSet out = target.empty_set();
    for (std::size_t p = 0; p < source.size(); ++p) {
      if (s[p]) out[map[p]] = true;
    }
    return out;
  }

  PointSet full_image() const { return image(source.full_set()); }

  PointSet preimage(const PointSet& s) const {
    PointSet out = source.empty_set();
    for (std::size_t p = 0; p < source.size(); ++p) out[p] = s[map[p]];
    return out;
  }

  bool injective() const {
    std::vector<bool> hit(target.size(), false);
    for (std::size_t y : map) {
      if (hit[y]) return false;
      hit[y] = true;
    }
    return true;
  }

  bool surjective() const { return full_image() == target.full_set(); }

  /// Monotone w.r.t. specialization; equivalent to continuity here.
  bool monotone() const {
    for (std::size_t a = 0; a < source.size(); ++a) {
      for (std::size_t b = 0; b < source.size(); ++b) {
        if (source.leq(a, b) && !target.leq(map[a], map[b])) return false;
      }
    }
    return true;
  }
};

inline SpaceMap identity_map(const FiniteSpace& x) {
  SpaceMap f{x, x, std::vector<std::size_t>(x.size())};
  for (std::size_t i = 0; i < x.size(); ++i) f.map[i] = i;
  return f;
}

/// g ∘ f.
inline SpaceMap compose(const SpaceMap& g, const SpaceMap& f) {
  if (f.target.size() != g.source.size()) throw DomainError("compose: spaces do not match");
  SpaceMap out{f.source, g.target, std::vector<std::size_t>(f.source.size())};
  for (std::size_t p = 0; p < f.source.size(); ++p) out.map[p] = g(f(p));
  return out;
}

/// Bijective order isomorphism; for finite T0 spaces this is homeomorphism.
inline bool homeomorphic(const SpaceMap& f) {
  if (f.source.size() != f.target.size() || !f.injective()) return false;
  for (std::size_t a = 0; a < f.source.size(); ++a) {
    for (std::size_t b = 0; b < f.source.size(); ++b) {
      if (f.source.leq(a, b) != f.target.leq(f(a), f(b))) return false;
    }
  }
  return true;
}

/// Inverse of a homeomorphism.
inline SpaceMap inverse(const SpaceMap& f) {
  if (!homeomorphic(f)) throw DomainError("inverse: map is not a homeomorphism");
  SpaceMap out{f.target, f.source, std::vector<std::size_t>(f.target.size())};
  for (std::size_t p = 0; p < f.source.size(); ++p) out.map[f(p)] = p;
  return out;
}

/// Preimages of opens are open. Every open of a finite space is compact, so
/// this is strong continuity. Literal over all target opens when feasible.
inline bool strongly_continuous(const SpaceMap& f) {
  if (f.target.size() > kLiteralOpenEnumeration) return f.monotone();
  for (const PointSet& u : open_sets(f.target)) {
    if (!is_open(f.source, f.preimage(u))) return false;
  }
  return true;
}

/// Images of opens are open in the image subspace.
inline bool open_onto_image(const SpaceMap& f) {
  const PointSet img = f.full_image();
  auto check = [&](const PointSet& u) {
    const PointSet fu = f.image(u);
    PointSet trace = down_closure(f.target, fu);
    for (std::size_t y = 0; y < trace.size(); ++y) trace[y] = trace[y] && img[y];
    return trace == fu;
  };
  if (f.source.size() <= kLiteralOpenEnumeration) {
    for (const PointSet& u : open_sets(f.source)) {
      if (!check(u)) return false;
    }
    return true;
  }
  // Every open is a union of principal down-sets, and images commute with unions.
  for (std::size_t p = 0; p < f.source.size(); ++p) {
    PointSet single = f.source.empty_set();
    single[p] = true;
    if (!check(down_closure(f.source, single))) return false;
  }
  return true;
}

struct SpectralReport {
  bool spectral = false;
  bool t0 = false;
  bool compact = false;
  bool coherent = false;
  bool sober = false;
  /// Two distinct points specializing to each other, when T0 fails.
  std::optional<std::pair<std::size_t, std::size_t>> cycle;

  std::string describe() const {
    if (spectral) return "finite T0: compact, coherent and sober";
    return "not T0: points " + std::to_string(cycle->first) + " and " + std::to_string(cycle->second) +
           " specialize to each other";
  }
};

/// For finite spaces spectral reduces to T0: compactness and coherence are
/// automatic and every irreducible closed set is the closure of a point.
inline SpectralReport is_spectral(const FiniteSpace& x) {
  SpectralReport r;
  for (std::size_t a = 0; a < x.size(); ++a) {
    for (std::size_t b = a + 1; b < x.size(); ++b) {
      if (x.leq(a, b) && x.leq(b, a)) {
        r.cycle = std::make_pair(a, b);
        return r;
      }
    }
  }
  r.t0 = r.compact = r.coherent = r.sober = r.spectral = true;
  return r;
}

/// Graphviz rendering: one node per point, one edge per covering pair a ⤳ b.
inline std::string to_dot(const FiniteSpace& x, const std::string& name = "space") {
  std::ostringstream os;
  os << "digraph \"" << name << "\" {\n";
  for (std::size_t p = 0; p < x.size(); ++p) os << "  n" << p << " [label=\"" << x.label(p) << "\"];\n";
  for (std::size_t a = 0; a < x.size(); ++a) {
    for (std::size_t b = 0; b < x.size(); ++b) {
      if (a == b || !x.leq(a, b)) continue;
      bool covering = true;
      for (std::size_t c = 0; c < x.size() && covering; ++c) {
        if (c != a && c != b && x.leq(a, c) && x.leq(c, b)) covering = false;
      }
      if (covering) os << "  n" << a << " -> n" << b << ";\n";
    }
  }
  os << "}\n";
  return os.str();
}

/// Spec of a finite ring: points are prime ideals, ordered by inclusion.
struct SpecSpace {
  RngPtr ring;
  Spectrum primes;
  FiniteSpace space;

  std::optional<std::size_t> index_of(const Ideal& i) const {
    for (std::size_t p = 0; p < primes.size(); ++p) {
      if (primes[p] == i) return p;
    }
    return std::nullopt;
  }

  std::size_t require_index(const Ideal& i, const std::string& context) const {
    if (auto p = index_of(i)) return *p;
    throw InvariantFault(context + ": " + i.to_string() + " is not a prime of " + ring->label());
  }

  PointSet as_points(const Spectrum& subset) const {
    PointSet out(primes.size(), false);
    for (const PrimeIdeal& p : subset) out[require_index(p, "as_points")] = true;
    return out;
  }
};

inline constexpr std::size_t kHullKernelExhaustiveLimit = 12;

/// Checks closure(B) = {P : P ⊇ ∩B} for every subset B (spectra of at most
/// kHullKernelExhaustiveLimit points). Returns the first failing subset.
inline std::optional<PointSet> hull_kernel_mismatch(const SpecSpace& x) {
  const std::size_t k = x.primes.size();
  if (k > kHullKernelExhaustiveLimit) return std::nullopt;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    PointSet b(k);
    Spectrum members;
    for (std::size_t i = 0; i < k; ++i) {
      b[i] = (mask >> i) & 1U;
      if (b[i]) members.push_back(x.primes[i]);
    }
    const Ideal ker = kernel(x.ring, members);
    PointSet hull(k);
    for (std::size_t i = 0; i < k; ++i) hull[i] = ker.subset_of(x.primes[i]);
    if (hull != closure(x.space, b)) return b;
  }
  return std::nullopt;
}

inline SpecSpace spec_space_of(const RngPtr& r, Spectrum primes) {
  const std::size_t k = primes.size();
  std::vector<std::string> labels;
  std::vector<bool> leq(k * k);
  labels.reserve(k);
  for (std::size_t a = 0; a < k; ++a) {
    labels.push_back(primes[a].to_string());
    for (std::size_t b = 0; b < k; ++b) leq[a * k + b] = primes[a].subset_of(primes[b]);
  }
  SpecSpace out{r, std::move(primes), FiniteSpace(std::move(labels), std::move(leq))};
  if (auto bad = hull_kernel_mismatch(out)) {
    std::string which;
    for (std::size_t i = 0; i < bad->size(); ++i) {
      if ((*bad)[i]) which += (which.empty() ? "" : ",") + out.primes[i].to_string();
    }
    throw InvariantFault("Spec " + r->label() + ": closure disagrees with hull-kernel closure on {" + which + "}");
  }
  return out;
}

/// Spec r with the Zariski topology.
inline SpecSpace spec_space(const RngPtr& r) { return spec_space_of(r, spectrum(r)); }

}  // namespace nilspec
