#pragma once

// The Boolean rng B of finite subsets of ℕ (x + y = symmetric difference,
// xy = intersection) and its unitization U₀(B) = B × ℤ.
//
// B is infinite and has no identity, so nothing here enumerates ideals.
// Everything is a total decision procedure or a seeded randomized law check.

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "nilspec/construct.hpp"
#include "nilspec/ideal.hpp"
#include "nilspec/report.hpp"
#include "nilspec/rng.hpp"

namespace nilspec::boolean {

using Integer = boost::multiprecision::cpp_int;

/// A finite subset of ℕ, stored sorted and duplicate-free.
class FinSet {
 public:
  FinSet() = default;
  FinSet(std::initializer_list<std::uint64_t> xs) : FinSet(std::vector<std::uint64_t>(xs)) {}
  explicit FinSet(std::vector<std::uint64_t> xs) : items_(std::move(xs)) {
    std::sort(items_.begin(), items_.end());
    items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
  }

  /// Subset of {0..63} given by a bitmask.
  static FinSet from_mask(std::uint64_t mask) {
    std::vector<std::uint64_t> xs;
    for (std::uint64_t i = 0; i < 64; ++i) {
      if ((mask >> i) & 1U) xs.push_back(i);
    }
    return FinSet(std::move(xs));
  }

  const std::vector<std::uint64_t>& items() const noexcept { return items_; }
  bool empty() const noexcept { return items_.empty(); }
  bool contains(std::uint64_t n) const { return std::binary_search(items_.begin(), items_.end(), n); }
  std::optional<std::uint64_t> max() const {
    if (items_.empty()) return std::nullopt;
    return items_.back();
  }

  std::string to_string() const {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < items_.size(); ++i) os << (i ? "," : "") << items_[i];
    os << '}';
    return os.str();
  }

  friend bool operator==(const FinSet&, const FinSet&) = default;

 private:
  std::vector<std::uint64_t> items_;
};

/// Symmetric difference.
inline FinSet bool_add(const FinSet& x, const FinSet& y) {
  std::vector<std::uint64_t> out;
  std::set_symmetric_difference(x.items().begin(), x.items().end(), y.items().begin(), y.items().end(),
                                std::back_inserter(out));
  return FinSet(std::move(out));
}

/// Intersection.
inline FinSet bool_mul(const FinSet& x, const FinSet& y) {
  std::vector<std::uint64_t> out;
  std::set_intersection(x.items().begin(), x.items().end(), y.items().begin(), y.items().end(),
                        std::back_inserter(out));
  return FinSet(std::move(out));
}

/// k·x in characteristic 2.
inline FinSet bool_scale(const Integer& k, const FinSet& x) {
  return boost::multiprecision::bit_test(boost::multiprecision::abs(k), 0) ? x : FinSet{};
}

inline bool is_odd(const Integer& k) { return boost::multiprecision::bit_test(boost::multiprecision::abs(k), 0); }

/// Element (a, α) of U₀(B) = B × ℤ.
struct UPair {
  FinSet a;
  Integer alpha;

  friend bool operator==(const UPair&, const UPair&) = default;

  std::string to_string() const {
    std::ostringstream os;
    os << '(' << a.to_string() << ',' << alpha << ')';
    return os.str();
  }
};

inline UPair upair_add(const UPair& p, const UPair& q) { return {bool_add(p.a, q.a), p.alpha + q.alpha}; }

/// (s,α)(t,β) = (st + βs + αt, αβ).
inline UPair upair_mul(const UPair& p, const UPair& q) {
  return {bool_add(bool_add(bool_mul(p.a, q.a), bool_scale(q.alpha, p.a)), bool_scale(p.alpha, q.a)),
          p.alpha * q.alpha};
}

/// Membership oracle for P_n = {A : n ∉ A}, a prime of B.
struct PrimeAt {
  std::uint64_t n;
  bool contains(const FinSet& x) const { return !x.contains(n); }
};

inline PrimeAt prime_at(std::uint64_t n) { return {n}; }

inline FinSet random_subset(std::mt19937_64& rng, unsigned universe) {
  const std::uint64_t mask = universe >= 64 ? rng() : rng() & ((std::uint64_t{1} << universe) - 1);
  return FinSet::from_mask(mask);
}

/// Samples ideal and prime laws of P_n: 0 ∈ P, closure under +, absorption,
/// properness ({n} ∉ P), and xy ∈ P ⇒ x ∈ P or y ∈ P. Returns a witness on
/// failure.
inline std::optional<std::string> check_prime_laws(const PrimeAt& p, std::mt19937_64& rng, std::size_t samples,
                                                   unsigned universe = 12) {
  if (!p.contains(FinSet{})) return "zero not in P_" + std::to_string(p.n);
  if (p.contains(FinSet{p.n})) return "P_" + std::to_string(p.n) + " is not proper";
  for (std::size_t i = 0; i < samples; ++i) {
    const FinSet x = random_subset(rng, universe);
    const FinSet y = random_subset(rng, universe);
    if (p.contains(x) && p.contains(y) && !p.contains(bool_add(x, y))) return "sum escapes at " + x.to_string() + "," + y.to_string();
    if (p.contains(x) && !p.contains(bool_mul(x, y))) return "absorption fails at " + x.to_string() + "," + y.to_string();
    if (p.contains(bool_mul(x, y)) && !p.contains(x) && !p.contains(y)) {
      return "prime law fails at " + x.to_string() + "," + y.to_string();
    }
  }
  return std::nullopt;
}

struct Psi0Verdict {
  bool member = false;
  /// x ∈ B with ax + αx ≠ 0, when not a member.
  std::optional<FinSet> witness;
};

/// Decides (a, α) ∈ ψ(0) = {p ∈ U₀(B) : p·B = 0} = {0} × 2ℤ.
inline Psi0Verdict psi0_decide(const UPair& p) {
  if (!is_odd(p.alpha)) {
    if (p.a.empty()) return {true, std::nullopt};
    return {false, p.a};  // a·a + α·a = a
  }
  const std::uint64_t fresh = p.a.max() ? *p.a.max() + 1 : 0;
  return {false, FinSet{fresh}};  // a·x = 0, so ax + αx = x
}

/// First coordinate of (a, α)·(x, 0), i.e. ax + αx.
inline FinSet annihilation_residue(const UPair& p, const FinSet& x) { return upair_mul(p, UPair{x, 0}).a; }

/// Index n ∉ ∪ cover, so P_n lies in none of the basic opens D(x_i).
inline std::uint64_t noncompactness_witness(const std::vector<FinSet>& cover) {
  std::uint64_t n = 0;
  for (const FinSet& x : cover) {
    if (auto m = x.max()) n = std::max(n, *m + 1);
  }
  for (const FinSet& x : cover) {
    if (x.contains(n)) throw InvariantFault("noncompactness witness " + std::to_string(n) + " lies in " + x.to_string());
  }
  return n;
}

/// Parity class of (a, α) in U₀(B) / (B × 2ℤ).
inline int coset_parity(const UPair& p) { return is_odd(p.alpha) ? 1 : 0; }

struct InfinityCertificate {
  std::size_t quotient_size = 0;
  std::vector<std::vector<Elem>> add_table;
  std::vector<std::vector<Elem>> mul_table;
  std::size_t primes = 0;
  Report report;
};

/// Points of NC(B, U₀(B)) outside λ(Spec B) are the primes of
/// Q/(image of B) = U₀(B)/(B × 2ℤ). That ring is classified by the parity of
/// α; its tables are computed from representatives, checked against sampled
/// arithmetic, and compared with Z2, whose spectrum has exactly one point.
inline InfinityCertificate infinity_point_count(std::mt19937_64& rng, std::size_t samples = 1000) {
  InfinityCertificate cert;
  Report& rep = cert.report;
  auto sample_pair = [&] {
    std::uniform_int_distribution<int> alpha(-50, 50);
    return UPair{random_subset(rng, 10), Integer(alpha(rng))};
  };
  rep.run("bool_ideal_b2z", "U0(B)", [&]() -> std::optional<std::string> {
    // B × 2ℤ is an ideal containing ψ(0) = {0} × 2ℤ.
    for (std::size_t i = 0; i < samples; ++i) {
      UPair p = sample_pair();
      p.alpha *= 2;
      const UPair q = sample_pair();
      if (is_odd(upair_mul(p, q).alpha)) return "absorption fails at " + p.to_string() + "*" + q.to_string();
      UPair r = sample_pair();
      r.alpha *= 2;
      if (is_odd(upair_add(p, r).alpha)) return "sum escapes at " + p.to_string() + "+" + r.to_string();
      const UPair z{FinSet{}, q.alpha * 2};
      if (!psi0_decide(z).member || coset_parity(z) != 0) return "psi(0) not inside B x 2Z at " + z.to_string();
    }
    return std::nullopt;
  });
  const UPair reps[2] = {UPair{FinSet{}, 0}, UPair{FinSet{}, 1}};
  cert.quotient_size = 2;
  cert.add_table.assign(2, std::vector<Elem>(2));
  cert.mul_table.assign(2, std::vector<Elem>(2));
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      cert.add_table[i][j] = static_cast<Elem>(coset_parity(upair_add(reps[i], reps[j])));
      cert.mul_table[i][j] = static_cast<Elem>(coset_parity(upair_mul(reps[i], reps[j])));
    }
  }
  rep.run("bool_coset_arithmetic", "U0(B)/(Bx2Z)", [&]() -> std::optional<std::string> {
    for (std::size_t i = 0; i < samples; ++i) {
      const UPair p = sample_pair();
      const UPair q = sample_pair();
      const int cp = coset_parity(p);
      const int cq = coset_parity(q);
      if (coset_parity(upair_add(p, q)) != static_cast<int>(cert.add_table[cp][cq])) return "sum of " + p.to_string() + "," + q.to_string();
      if (coset_parity(upair_mul(p, q)) != static_cast<int>(cert.mul_table[cp][cq])) return "product of " + p.to_string() + "," + q.to_string();
    }
    return std::nullopt;
  });
  rep.run("bool_infinity_point", "U0(B)/(Bx2Z)", [&]() -> std::optional<std::string> {
    const RngPtr q = build_table(cert.add_table, cert.mul_table, "U0(B)/(Bx2Z)");
    const RngPtr z2 = build_zmod(2);
    if (!q->same_tables(*z2)) return "coset ring is not Z2";
    cert.primes = spectrum(q).size();
    if (cert.primes != 1) return std::to_string(cert.primes) + " points at infinity";
    return std::nullopt;
  });
  return cert;
}

/// Power set of {0..N-1} as a finite ring; element index = bitmask, identity
/// the full set.
inline RngPtr truncate(unsigned n_bits) {
  if (n_bits > 12) throw DomainError("truncate: N must be at most 12");
  const std::size_t n = std::size_t{1} << n_bits;
  require_size_within_limit(n, "truncate");
  std::vector<Elem> add(n * n);
  std::vector<Elem> mul(n * n);
  std::vector<std::string> names;
  for (std::size_t x = 0; x < n; ++x) {
    names.push_back(FinSet::from_mask(x).to_string());
    for (std::size_t y = 0; y < n; ++y) {
      add[x * n + y] = static_cast<Elem>(x ^ y);
      mul[x * n + y] = static_cast<Elem>(x & y);
    }
  }
  return std::make_shared<const FiniteRng>(n, std::move(add), std::move(mul), "B" + std::to_string(n_bits),
                                           std::move(names));
}

/// Randomized suite over the witness procedures, reproducible from the seed.
inline Report boolean_suite(std::uint64_t seed, std::size_t pairs = 1000, std::size_t covers = 100) {
  Report rep;
  std::mt19937_64 rng(seed);
  rep.run("bool_ring_laws", "B", [&]() -> std::optional<std::string> {
    for (std::size_t i = 0; i < 100; ++i) {
      const FinSet x = random_subset(rng, 16);
      const FinSet y = random_subset(rng, 16);
      if (!bool_add(x, x).empty()) return "x+x != 0 at " + x.to_string();
      if (!(bool_mul(x, x) == x)) return "x*x != x at " + x.to_string();
      if (!(bool_mul(x, bool_add(x, y)) == bool_add(x, bool_mul(x, y)))) return "distributivity at " + x.to_string();
    }
    return std::nullopt;
  });
  rep.run("bool_psi0", "U0(B)", [&]() -> std::optional<std::string> {
    // Brute force over every x ⊆ {0..8}: one index beyond the support of a, so
    // an odd α is always exposed even when a = {0..7}.
    std::uniform_int_distribution<int> alpha(-10, 10);
    for (std::size_t i = 0; i < pairs; ++i) {
      const UPair p{random_subset(rng, 8), Integer(alpha(rng))};
      bool brute_member = true;
      for (std::uint64_t mask = 0; mask < (1U << 9) && brute_member; ++mask) {
        brute_member = annihilation_residue(p, FinSet::from_mask(mask)).empty();
      }
      const Psi0Verdict v = psi0_decide(p);
      if (v.member != brute_member) return "disagreement at " + p.to_string();
      if (!v.member && annihilation_residue(p, *v.witness).empty()) return "witness does not witness at " + p.to_string();
    }
    return std::nullopt;
  });
  rep.run("bool_prime_laws", "B", [&]() -> std::optional<std::string> {
    for (std::uint64_t n = 0; n < 16; ++n) {
      if (auto v = check_prime_laws(prime_at(n), rng, 200)) return *v;
    }
    return std::nullopt;
  });
  rep.run("bool_noncompact", "SpecB", [&]() -> std::optional<std::string> {
    std::uniform_int_distribution<int> len(0, 6);
    for (std::size_t i = 0; i < covers; ++i) {
      std::vector<FinSet> cover;
      const int k = len(rng);
      for (int j = 0; j < k; ++j) cover.push_back(random_subset(rng, 20));
      const std::uint64_t n = noncompactness_witness(cover);
      for (const FinSet& x : cover) {
        if (!prime_at(n).contains(x)) return "P_" + std::to_string(n) + " lies in D(" + x.to_string() + ")";
      }
    }
    return std::nullopt;
  });
  InfinityCertificate cert = infinity_point_count(rng);
  rep.merge(cert.report);
  rep.run("bool_truncate_spectra", "B1..B12", [&]() -> std::optional<std::string> {
    for (unsigned n = 1; n <= 12; ++n) {
      const RngPtr r = truncate(n);
      // Exhaustive ideal enumeration is cheap up to B8; past that only the
      // idempotent route is run. Where both run they must agree.
      const Spectrum spec = spectrum_via_idempotents(r);
      if (n <= 8 && spectrum(r) != spec) return "B" + std::to_string(n) + " spectrum routes disagree";
      if (spec.size() != n) return "B" + std::to_string(n) + " has " + std::to_string(spec.size()) + " primes";
      for (const auto& p : spec) {
        for (const auto& q : spec) {
          if (!(p == q) && p.subset_of(q)) return "B" + std::to_string(n) + " spectrum is not discrete";
        }
      }
    }
    return std::nullopt;
  });
  return rep;
}

}  // namespace nilspec::boolean
