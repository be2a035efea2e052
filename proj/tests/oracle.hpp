#pragma once

// Brute-force reference computations for tests. Nothing here calls the
// library's algorithms: rings are raw tables, ideals are subset masks.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <vector>

namespace oracle {

using Table = std::vector<std::vector<unsigned>>;

/// Element 0 is the additive identity in every ring handed to the oracle.
struct Ring {
  unsigned n;
  Table add;
  Table mul;
};

inline Ring zmod(unsigned n) {
  Ring r{n, Table(n, std::vector<unsigned>(n)), Table(n, std::vector<unsigned>(n))};
  for (unsigned a = 0; a < n; ++a) {
    for (unsigned b = 0; b < n; ++b) {
      r.add[a][b] = (a + b) % n;
      r.mul[a][b] = (a * b) % n;
    }
  }
  return r;
}

/// The multiples of d in Z_n, indexed by k ↦ k·d (so index order = value order).
inline Ring multiples(unsigned d, unsigned n) {
  const unsigned k = n / d;
  Ring r{k, Table(k, std::vector<unsigned>(k)), Table(k, std::vector<unsigned>(k))};
  for (unsigned a = 0; a < k; ++a) {
    for (unsigned b = 0; b < k; ++b) {
      r.add[a][b] = ((a * d + b * d) % n) / d;
      r.mul[a][b] = ((a * d) * (b * d) % n) / d;
    }
  }
  return r;
}

/// Every commutative-rng axiom instance, checked literally.
inline bool is_ring(const Ring& r) {
  const unsigned n = r.n;
  for (unsigned a = 0; a < n; ++a) {
    for (unsigned b = 0; b < n; ++b) {
      if (r.add[a][b] >= n || r.mul[a][b] >= n) return false;
      if (r.add[a][b] != r.add[b][a] || r.mul[a][b] != r.mul[b][a]) return false;
    }
  }
  std::optional<unsigned> zero;
  for (unsigned z = 0; z < n && !zero; ++z) {
    bool ok = true;
    for (unsigned x = 0; x < n && ok; ++x) ok = r.add[z][x] == x;
    if (ok) zero = z;
  }
  if (!zero) return false;
  for (unsigned a = 0; a < n; ++a) {
    bool inv = false;
    for (unsigned b = 0; b < n && !inv; ++b) inv = r.add[a][b] == *zero;
    if (!inv) return false;
    for (unsigned b = 0; b < n; ++b) {
      for (unsigned c = 0; c < n; ++c) {
        if (r.add[r.add[a][b]][c] != r.add[a][r.add[b][c]]) return false;
        if (r.mul[r.mul[a][b]][c] != r.mul[a][r.mul[b][c]]) return false;
        if (r.mul[a][r.add[b][c]] != r.add[r.mul[a][b]][r.mul[a][c]]) return false;
      }
    }
  }
  return true;
}

inline bool is_ideal(const Ring& r, std::uint64_t mask) {
  auto in = [&](unsigned x) { return ((mask >> x) & 1U) != 0; };
  if (!in(0)) return false;
  for (unsigned a = 0; a < r.n; ++a) {
    if (!in(a)) continue;
    for (unsigned b = 0; b < r.n; ++b) {
      if (in(b) && !in(r.add[a][b])) return false;
      if (!in(r.mul[a][b])) return false;
    }
  }
  return true;  // closure under + in a finite group gives negatives
}

/// Ideals as member lists, sorted by size then lexicographically.
inline std::vector<std::vector<unsigned>> ideals(const Ring& r) {
  std::vector<std::vector<unsigned>> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << r.n); ++mask) {
    if (!is_ideal(r, mask)) continue;
    std::vector<unsigned> m;
    for (unsigned x = 0; x < r.n; ++x) {
      if ((mask >> x) & 1U) m.push_back(x);
    }
    out.push_back(m);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

inline bool is_prime(const Ring& r, const std::vector<unsigned>& p) {
  if (p.size() == r.n) return false;
  std::vector<bool> in(r.n, false);
  for (unsigned x : p) in[x] = true;
  for (unsigned a = 0; a < r.n; ++a) {
    for (unsigned b = 0; b < r.n; ++b) {
      if (in[r.mul[a][b]] && !in[a] && !in[b]) return false;
    }
  }
  return true;
}

inline std::vector<std::vector<unsigned>> primes(const Ring& r) {
  std::vector<std::vector<unsigned>> out;
  for (const auto& i : ideals(r)) {
    if (is_prime(r, i)) out.push_back(i);
  }
  return out;
}

inline std::vector<unsigned> nilpotents(const Ring& r) {
  std::vector<unsigned> out;
  for (unsigned x = 0; x < r.n; ++x) {
    unsigned p = x;
    for (unsigned k = 0; k < r.n + 1 && p != 0; ++k) p = r.mul[p][x];
    if (p == 0) out.push_back(x);
  }
  return out;
}

/// Every map f : a -> b respecting + and ·, by enumerating all |b|^|a| maps.
inline std::vector<std::vector<unsigned>> homs(const Ring& a, const Ring& b, bool unital) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> f(a.n, 0);
  auto identity_of = [](const Ring& r) -> std::optional<unsigned> {
    for (unsigned e = 0; e < r.n; ++e) {
      bool ok = true;
      for (unsigned x = 0; x < r.n && ok; ++x) ok = r.mul[e][x] == x;
      if (ok) return e;
    }
    return std::nullopt;
  };
  const auto ea = identity_of(a);
  const auto eb = identity_of(b);
  if (unital && (!ea || !eb)) return out;
  std::function<void(unsigned)> rec = [&](unsigned i) {
    if (i == a.n) {
      for (unsigned x = 0; x < a.n; ++x) {
        for (unsigned y = 0; y < a.n; ++y) {
          if (f[a.add[x][y]] != b.add[f[x]][f[y]] || f[a.mul[x][y]] != b.mul[f[x]][f[y]]) return;
        }
      }
      if (unital && f[*ea] != *eb) return;
      out.push_back(f);
      return;
    }
    for (unsigned v = 0; v < b.n; ++v) {
      f[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

/// A bijection a -> b carrying both tables, if one exists.
inline std::optional<std::vector<unsigned>> isomorphism(const Ring& a, const Ring& b) {
  if (a.n != b.n) return std::nullopt;
  std::vector<unsigned> perm(a.n);
  std::iota(perm.begin(), perm.end(), 0U);
  do {
    bool ok = true;
    for (unsigned x = 0; x < a.n && ok; ++x) {
      for (unsigned y = 0; y < a.n && ok; ++y) {
        ok = perm[a.add[x][y]] == b.add[perm[x]][perm[y]] && perm[a.mul[x][y]] == b.mul[perm[x]][perm[y]];
      }
    }
    if (ok) return perm;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

}  // namespace oracle
