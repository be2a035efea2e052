#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "support.hpp"

using namespace nilspec;

TEST_CASE("zmod") {
  const RngPtr z1 = build_zmod(1);
  CHECK(z1->size() == 1);
  REQUIRE(z1->identity());
  CHECK(*z1->identity() == 0);

  const RngPtr z6 = build_zmod(6);
  CHECK(z6->size() == 6);
  CHECK(z6->unital());
  CHECK(additive_exponent(*z6) == 6);
  CHECK_FALSE(check_axioms(*z6));

  const RngPtr z4 = build_zmod(4);
  CHECK(z4->mul(2, 2) == 0);
  CHECK(oracle::is_ring(support::to_oracle(*z4)));

  CHECK_THROWS_AS(build_zmod(0), DomainError);
}

TEST_CASE("product") {
  const RngPtr z2 = build_zmod(2);
  const RngPtr z3 = build_zmod(3);
  const RngPtr p = build_product(*z2, *z3);
  CHECK(p->size() == 6);
  CHECK(p->unital());
  CHECK(oracle::isomorphism(support::to_oracle(*p), oracle::zmod(6)));

  const RngPtr z5 = build_zmod(5);
  CHECK(oracle::isomorphism(support::to_oracle(*build_product(*build_zmod(1), *z5)), oracle::zmod(5)));

  const RngPtr k = build_product(*z2, *z2);
  CHECK(k->size() == 4);
  int nontrivial_idempotents = 0;
  for (Elem x = 0; x < 4; ++x) {
    if (x != k->zero() && x != *k->identity() && k->mul(x, x) == x) ++nontrivial_idempotents;
  }
  CHECK(nontrivial_idempotents == 2);

  const RngPtr no_one = build_product(*z2, *ideal_subrng(build_zmod(4), {2}).sub());
  CHECK_FALSE(no_one->unital());
}

TEST_CASE("build_table") {
  CHECK_NOTHROW(build_table({{0, 1}, {1, 0}}, {{0, 0}, {0, 1}}));

  const RngPtr v4 = build_table({{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}},
                                {{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}});
  CHECK_FALSE(v4->unital());
  CHECK_FALSE(find_identity(*v4));

  try {
    build_table({{0, 1}, {1, 0}}, {{0, 1}, {0, 1}});
    FAIL("non-commutative table accepted");
  } catch (const AxiomError& e) {
    CHECK(std::string(e.what()) == "mul commutative fails at (0,1)");
  }
  CHECK_THROWS_AS(build_table({{0, 1}, {1, 0}}, {{0, 0}}), DomainError);
}

TEST_CASE("build_table accepts exactly the rings") {
  std::mt19937_64 rng(7);
  const oracle::Ring base = oracle::zmod(4);
  int accepted = 0;
  int rejected = 0;
  for (int trial = 0; trial < 300; ++trial) {
    oracle::Ring t = base;
    const unsigned a = rng() % 4;
    const unsigned b = rng() % 4;
    const unsigned v = rng() % 4;
    if (rng() % 2) {
      t.mul[a][b] = v;
      t.mul[b][a] = v;
    } else {
      t.add[a][b] = v;
      t.add[b][a] = v;
    }
    std::vector<std::vector<Elem>> add(4), mul(4);
    for (unsigned i = 0; i < 4; ++i) {
      add[i].assign(t.add[i].begin(), t.add[i].end());
      mul[i].assign(t.mul[i].begin(), t.mul[i].end());
    }
    bool ok = true;
    try {
      build_table(add, mul);
    } catch (const AxiomError& e) {
      ok = false;
      CHECK(std::string(e.what()).find("fails at") != std::string::npos);
    }
    CHECK(ok == oracle::is_ring(t));
    (ok ? accepted : rejected)++;
  }
  CHECK(accepted > 0);
  CHECK(rejected > 0);
}

TEST_CASE("ideal_subrng") {
  const IExtension e = ideal_subrng(build_zmod(12), {2});
  CHECK(e.sub()->size() == 6);
  CHECK(e.embed() == std::vector<Elem>{0, 2, 4, 6, 8, 10});
  CHECK(e.e_object());

  const IExtension f = ideal_subrng(build_zmod(4), {2});
  CHECK(f.sub()->size() == 2);
  CHECK(f.embed() == std::vector<Elem>{0, 2});
  CHECK(f.sub()->mul(1, 1) == 0);
  CHECK_FALSE(f.sub()->unital());

  const IExtension z = ideal_subrng(build_zmod(5), std::span<const Elem>{});
  CHECK(z.sub()->size() == 1);

  const IExtension nu = ideal_subrng(f.sub(), {1});
  CHECK_FALSE(nu.e_object());
}

TEST_CASE("quotient") {
  const RngPtr z12 = build_zmod(12);
  const Quotient q = quotient(z12, generated_ideal(z12, {3}));
  CHECK(q.ring->size() == 3);
  CHECK(q.ring->unital());
  CHECK(oracle::isomorphism(support::to_oracle(*q.ring), oracle::zmod(3)));

  const RngPtr z6 = build_zmod(6);
  const Quotient same = quotient(z6, Ideal::zero(z6));
  CHECK(oracle::isomorphism(support::to_oracle(*same.ring), oracle::zmod(6)));
  CHECK(quotient(z6, Ideal::whole(z6)).ring->size() == 1);

  CHECK_THROWS_AS(quotient(z6, Ideal(z6, {0, 1})), DomainError);
}

TEST_CASE("quotient kernel recovers the ideal") {
  for (const RngPtr& r : support::small_rings()) {
    for (const Ideal& i : enumerate_ideals(r)) {
      const Quotient q = quotient(r, i);
      CHECK_FALSE(check_axioms(*q.ring));
      std::vector<Elem> ker;
      for (Elem x = 0; x < r->size(); ++x) {
        if (q.projection(x) == q.ring->zero()) ker.push_back(x);
      }
      CHECK(ker == i.members());
    }
  }
}

TEST_CASE("unitization") {
  const IExtension u0 = unitization(build_zmod(1), 2);
  CHECK(oracle::isomorphism(support::to_oracle(*u0.amb()), oracle::zmod(2)));

  const RngPtr s = ideal_subrng(build_zmod(4), {2}).sub();
  const IExtension u = unitization(s, 2);
  CHECK(u.amb()->size() == 4);
  REQUIRE(u.amb()->identity());
  CHECK(*u.amb()->identity() == 2);  // (0,1)
  CHECK(oracle::is_ring(support::to_oracle(*u.amb())));
  CHECK(is_ideal(u.image()));

  const RngPtr s12 = ideal_subrng(build_zmod(12), {2}).sub();
  CHECK_THROWS_AS(unitization(s12, 4), DomainError);
  CHECK_THROWS_AS(unitization(s12, 0), DomainError);
}

TEST_CASE("unitization product rule") {
  const RngPtr s = ideal_subrng(build_zmod(12), {2}).sub();
  const IExtension u = unitization(s, 6);
  const std::size_t ns = s->size();
  for (Elem a = 0; a < u.amb()->size(); ++a) {
    for (Elem b = 0; b < u.amb()->size(); ++b) {
      const Elem x = a % ns, y = b % ns;
      const std::size_t al = a / ns, be = b / ns;
      // values in Z12: s = 2x, t = 2y
      const std::size_t first = (4 * x * y + be * 2 * x + al * 2 * y) % 12;
      const Elem expect = static_cast<Elem>(((al * be) % 6) * ns + first / 2);
      REQUIRE(u.amb()->mul(a, b) == expect);
    }
  }
}

TEST_CASE("additive_exponent and find_identity") {
  CHECK(additive_exponent(*build_zmod(6)) == 6);
  CHECK(additive_exponent(*build_zmod(1)) == 1);
  CHECK(additive_exponent(*build_product(*build_zmod(2), *build_zmod(4))) == 4);

  CHECK(find_identity(*build_zmod(6)) == std::optional<Elem>(1));
  CHECK_FALSE(find_identity(*ideal_subrng(build_zmod(12), {2}).sub()));
  CHECK(find_identity(*build_zmod(1)) == std::optional<Elem>(0));
}

TEST_CASE("enumerate_homs examples") {
  const RngPtr z6 = build_zmod(6);
  const auto id = enumerate_homs(z6, z6, true);
  REQUIRE(id.size() == 1);
  CHECK(id.front() == RngHom::identity(z6));

  const RngPtr z12 = build_zmod(12);
  const RngPtr z4 = build_zmod(4);
  const auto red = enumerate_homs(z12, z4, true);
  REQUIRE(red.size() == 1);
  for (Elem x = 0; x < 12; ++x) CHECK(red.front()(x) == x % 4);

  const auto zero = enumerate_homs(z6, build_zmod(1), false);
  REQUIRE(zero.size() == 1);
}

TEST_CASE("enumerate_homs matches brute force on small rings") {
  std::vector<RngPtr> rings;
  for (const RngPtr& r : support::small_rings()) {
    if (r->size() <= 6) rings.push_back(r);
  }
  for (const RngPtr& a : rings) {
    for (const RngPtr& b : rings) {
      for (bool unital : {false, true}) {
        std::set<std::vector<unsigned>> found;
        for (const RngHom& h : enumerate_homs(a, b, unital)) {
          std::vector<unsigned> t(h.table().begin(), h.table().end());
          CHECK_FALSE(hom_violation(*a, *b, h.table()));
          CHECK(found.insert(t).second);
        }
        const auto brute = oracle::homs(support::to_oracle(*a), support::to_oracle(*b), unital);
        CHECK(found == std::set<std::vector<unsigned>>(brute.begin(), brute.end()));
      }
    }
  }
}

TEST_CASE("hom search respects fixed pairs and budget") {
  const RngPtr z12 = build_zmod(12);
  HomSearchOptions opts;
  opts.fixed = {{1, 5}};
  CHECK(enumerate_homs(z12, z12, false, opts).empty());  // 5 is not idempotent
  opts.fixed = {{1, 4}};
  CHECK(enumerate_homs(z12, z12, false, opts).size() == 1);
  HomSearchOptions tiny;
  tiny.budget = 3;
  CHECK_THROWS_AS(enumerate_homs(build_product(*z12, *build_zmod(2)), z12, false, tiny), LimitError);
}

TEST_CASE("check_e_morphism") {
  const RngPtr z12 = build_zmod(12);
  const RngPtr z4 = build_zmod(4);
  const IExtension e12 = ideal_subrng(z12, {2});
  const IExtension e4 = ideal_subrng(z4, {2});

  CHECK(std::holds_alternative<EMorphism>(check_e_morphism(RngHom::identity(z12), e12, e12)));

  const RngHom red = enumerate_homs(z12, z4, true).front();
  const auto ok = check_e_morphism(red, e12, e4);
  REQUIRE(std::holds_alternative<EMorphism>(ok));
  CHECK(std::get<EMorphism>(ok).restriction() == std::vector<Elem>{0, 1, 0, 1, 0, 1});

  const RngHom zero = RngHom::make(z12, z4, std::vector<Elem>(12, 0));
  const auto bad = check_e_morphism(zero, e12, e4);
  REQUIRE(std::holds_alternative<Rejection>(bad));
  CHECK(std::get<Rejection>(bad).reason == "not unital");

  const IExtension e4whole = ideal_subrng(z4, {1});
  const auto miss = check_e_morphism(red, e12, e4whole);
  REQUIRE(std::holds_alternative<Rejection>(miss));
  CHECK(std::get<Rejection>(miss).reason == "h(S1) misses part of S2");
}

TEST_CASE("unitization reduction is a surjective morphism fixing S") {
  for (const RngPtr& s : {ideal_subrng(build_zmod(12), {2}).sub(), build_zmod(1),
                          ideal_subrng(build_product(*build_zmod(2), *build_zmod(2)), {2}).sub()}) {
    const std::size_t m = additive_exponent(*s);
    const IExtension small = unitization(s, m);
    const IExtension big = unitization(s, 2 * m);
    const EMorphism red = unitization_reduction(big, small);
    CHECK(red.hom().surjective());
    CHECK(red.hom().unital());
    CHECK(red.fixes_sub());
  }
}

TEST_CASE("size limit") {
  const std::size_t before = max_ring_size();
  set_max_ring_size(10);
  CHECK_THROWS_AS(build_zmod(11), LimitError);
  CHECK_THROWS_AS(build_product(*build_zmod(3), *build_zmod(4)), LimitError);
  set_max_ring_size(before);
  CHECK_NOTHROW(build_zmod(11));
}
