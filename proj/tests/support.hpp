#pragma once

#include <string>
#include <vector>

#include "nilspec.hpp"
#include "oracle.hpp"

namespace support {

inline oracle::Ring to_oracle(const nilspec::FiniteRng& r) {
  const unsigned n = static_cast<unsigned>(r.size());
  oracle::Ring o{n, oracle::Table(n, std::vector<unsigned>(n)), oracle::Table(n, std::vector<unsigned>(n))};
  for (unsigned a = 0; a < n; ++a) {
    for (unsigned b = 0; b < n; ++b) {
      o.add[a][b] = r.add(a, b);
      o.mul[a][b] = r.mul(a, b);
    }
  }
  return o;
}

inline std::vector<unsigned> members(const nilspec::Ideal& i) { return {i.members().begin(), i.members().end()}; }

template <class Range>
std::vector<std::vector<unsigned>> member_lists(const Range& xs) {
  std::vector<std::vector<unsigned>> out;
  for (const auto& i : xs) out.push_back(members(i));
  return out;
}

template <class Range>
std::vector<std::string> strings(const Range& xs) {
  std::vector<std::string> out;
  for (const auto& i : xs) out.push_back(i.to_string());
  return out;
}

/// Small rings of assorted shapes, all of size <= 8.
inline std::vector<nilspec::RngPtr> small_rings() {
  using namespace nilspec;
  std::vector<RngPtr> out;
  for (std::size_t n = 1; n <= 8; ++n) out.push_back(build_zmod(n));
  out.push_back(build_product(*build_zmod(2), *build_zmod(2)));
  out.push_back(build_product(*build_zmod(2), *build_zmod(3)));
  out.push_back(build_product(*build_zmod(2), *build_zmod(4)));
  out.push_back(build_product(*build_product(*build_zmod(2), *build_zmod(2)), *build_zmod(2)));
  out.push_back(ideal_subrng(build_zmod(8), {2}).sub());
  out.push_back(ideal_subrng(build_zmod(12), {2}).sub());
  out.push_back(ideal_subrng(build_zmod(16), {2}).sub());
  out.push_back(build_table({{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}},
                            {{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}}, "V4"));
  out.push_back(unitization(ideal_subrng(build_zmod(4), {2}).sub(), 2).amb());
  return out;
}

}  // namespace support
