#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace nilspec;
using Lists = std::vector<std::vector<unsigned>>;

TEST_CASE("generated_ideal") {
  const RngPtr z12 = build_zmod(12);
  CHECK(generated_ideal(z12, {3}).members() == std::vector<Elem>{0, 3, 6, 9});
  CHECK(generated_ideal(z12, {1}).is_whole());
  CHECK(generated_ideal(z12, std::span<const Elem>{}).members() == std::vector<Elem>{0});
  CHECK(generated_ideal(z12, {4, 6}).members() == std::vector<Elem>{0, 2, 4, 6, 8, 10});
  // Without identity the ideal needs integer multiples and products: in 2Z8, (4) = {0,4}.
  const RngPtr s = ideal_subrng(build_zmod(8), {2}).sub();
  CHECK(generated_ideal(s, {2}).to_string() == "{0,4}");
}

TEST_CASE("enumerate_ideals examples") {
  const RngPtr z6 = build_zmod(6);
  const Lists z6_oracle = oracle::ideals(oracle::zmod(6));
  const Lists z6_frozen{{0}, {0, 3}, {0, 2, 4}, {0, 1, 2, 3, 4, 5}};
  CHECK(z6_oracle == z6_frozen);
  CHECK(support::member_lists(enumerate_ideals(z6)) == z6_frozen);

  CHECK(enumerate_ideals(build_zmod(1)).size() == 1);

  const IExtension e = ideal_subrng(build_zmod(8), {2});
  const auto ideals = enumerate_ideals(e.sub());
  CHECK(support::strings(ideals) == std::vector<std::string>{"{0}", "{0,4}", "{0,2,4,6}"});
  CHECK(support::member_lists(ideals) == oracle::ideals(oracle::multiples(2, 8)));
}

TEST_CASE("enumerate_ideals matches the subset filter") {
  for (const RngPtr& r : support::small_rings()) {
    INFO(r->label());
    CHECK(support::member_lists(enumerate_ideals(r)) == oracle::ideals(support::to_oracle(*r)));
  }
  for (std::size_t n : {9, 10, 12, 16}) {
    const RngPtr r = build_zmod(n);
    CHECK(support::member_lists(enumerate_ideals(r)) == oracle::ideals(support::to_oracle(*r)));
  }
  const RngPtr z2z6 = build_product(*build_zmod(2), *build_zmod(6));
  CHECK(support::member_lists(enumerate_ideals(z2z6)) == oracle::ideals(support::to_oracle(*z2z6)));
}

TEST_CASE("enumerate_ideals respects the ideal budget") {
  CHECK_THROWS_AS(enumerate_ideals(boolean::truncate(6), 10), LimitError);
}

TEST_CASE("is_prime") {
  const RngPtr z6 = build_zmod(6);
  CHECK(is_prime(Ideal(z6, {0, 2, 4})).prime);
  const PrimalityVerdict zero = is_prime(Ideal(z6, {0}));
  CHECK_FALSE(zero.prime);
  CHECK_FALSE(zero.improper);
  CHECK(zero.witness == std::optional<std::pair<Elem, Elem>>({2, 3}));
  const PrimalityVerdict whole = is_prime(Ideal::whole(z6));
  CHECK_FALSE(whole.prime);
  CHECK(whole.improper);
}

TEST_CASE("spectrum examples") {
  const RngPtr z6 = build_zmod(6);
  const Lists frozen{{0, 3}, {0, 2, 4}};
  CHECK(oracle::primes(oracle::zmod(6)) == frozen);
  CHECK(support::member_lists(spectrum(z6)) == frozen);

  const RngPtr s8 = ideal_subrng(build_zmod(8), {2}).sub();
  CHECK(oracle::primes(oracle::multiples(2, 8)).empty());
  CHECK(spectrum(s8).empty());

  const RngPtr s12 = ideal_subrng(build_zmod(12), {2}).sub();
  CHECK(oracle::primes(oracle::multiples(2, 12)) == Lists{{0, 3}});  // index 3 is the residue 6
  CHECK(support::strings(spectrum(s12)) == std::vector<std::string>{"{0,6}"});
}

TEST_CASE("spectrum routes agree") {
  for (const RngPtr& r : support::small_rings()) {
    INFO(r->label());
    const Spectrum a = spectrum(r);
    CHECK(support::member_lists(a) == oracle::primes(support::to_oracle(*r)));
    CHECK(spectrum_via_idempotents(r) == a);
  }
  for (std::size_t n = 9; n <= 36; ++n) {
    const RngPtr r = build_zmod(n);
    CHECK(spectrum_via_idempotents(r) == spectrum(r));
  }
}

TEST_CASE("nilradical") {
  const RngPtr z4 = build_zmod(4);
  CHECK(oracle::nilpotents(oracle::zmod(4)) == std::vector<unsigned>{0, 2});
  CHECK(nilradical(z4).members() == std::vector<Elem>{0, 2});
  CHECK(nilradical(build_zmod(6)).members() == std::vector<Elem>{0});

  const RngPtr s8 = ideal_subrng(build_zmod(8), {2}).sub();
  const NilradicalRoutes routes = nilradical_routes(s8, spectrum(s8));
  CHECK(routes.nilpotents.is_whole());
  CHECK(routes.prime_kernel.is_whole());
  CHECK(nilradical(s8).is_whole());
}

TEST_CASE("nilradical routes on every small ring") {
  for (const RngPtr& r : support::small_rings()) {
    INFO(r->label());
    const NilradicalRoutes routes = nilradical_routes(r, spectrum(r));
    CHECK(routes.agree());
    CHECK(support::members(routes.nilpotents) == oracle::nilpotents(support::to_oracle(*r)));
    const Quotient q = quotient(r, routes.nilpotents);
    CHECK(nilradical(q.ring).size() == 1);
  }
}

TEST_CASE("a broken table makes the nilradical routes disagree") {
  const RngPtr z4 = build_zmod(4);
  std::vector<Elem> mul = z4->mul_table();
  mul[3 * 4 + 3] = 2;  // 3·3 = 2 instead of 1
  const auto bad = std::make_shared<const FiniteRng>(4, z4->add_table(), mul, "Z4*");
  CHECK(check_axioms(*bad));
  CHECK_FALSE(nilradical_routes(bad, spectrum(bad)).agree());
  CHECK_THROWS_AS(nilradical(bad), InvariantFault);
}

TEST_CASE("kernel") {
  const RngPtr z6 = build_zmod(6);
  const Spectrum spec = spectrum(z6);
  CHECK(kernel(z6, spec).members() == std::vector<Elem>{0});
  CHECK(kernel(z6, std::span<const PrimeIdeal>{}).is_whole());
  const RngPtr s12 = ideal_subrng(build_zmod(12), {2}).sub();
  CHECK(kernel(s12, spectrum(s12)).to_string() == "{0,6}");
}

TEST_CASE("basic_open and vanishing") {
  const RngPtr z6 = build_zmod(6);
  CHECK(support::strings(basic_open(z6, 2)) == std::vector<std::string>{"{0,3}"});
  CHECK(basic_open(z6, 0).empty());
  CHECK(vanishing(z6, Ideal::zero(z6)).size() == 2);
  for (const RngPtr& r : support::small_rings()) {
    const Spectrum spec = spectrum(r);
    for (const Ideal& i : enumerate_ideals(r)) {
      CHECK(vanishing(spec, i) == vanishing(spec, generated_ideal(r, i.members())));
    }
    for (Elem a = 0; a < r->size(); ++a) {
      const Spectrum v = vanishing(spec, generated_ideal(r, {a}));
      const Spectrum d = basic_open(spec, a);
      CHECK(v.size() + d.size() == spec.size());
      for (const PrimeIdeal& p : d) CHECK(std::find(v.begin(), v.end(), p) == v.end());
    }
  }
}
