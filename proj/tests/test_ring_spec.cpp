#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace nilspec;

TEST_CASE("constructors") {
  CHECK(parse_ring_spec(R"({"zmod": 6})").ring->size() == 6);
  CHECK(parse_ring_spec(R"({"product": [{"zmod": 2}, {"zmod": 3}]})").ring->label() == "Z2xZ3");
  const ParsedSpec t = parse_ring_spec(R"({"table": {"add": [[0,1],[1,0]], "mul": [[0,0],[0,1]]}, "label": "F2"})");
  CHECK(t.ring->label() == "F2");
  CHECK(t.ring->unital());

  const ParsedSpec s = parse_ring_spec(R"({"ideal_subrng": {"of": {"zmod": 12}, "gens": [2]}})");
  REQUIRE(s.ext);
  CHECK(s.ring->size() == 6);
  CHECK(s.ext->amb()->size() == 12);
  CHECK(support::strings(spectrum(s.ring)) == std::vector<std::string>{"{0,6}"});

  const ParsedSpec q = parse_ring_spec(R"({"quotient": {"of": {"zmod": 12}, "ideal_gens": [3]}})");
  CHECK(q.ring->size() == 3);
  CHECK_FALSE(q.ext);

  const ParsedSpec u = parse_ring_spec(
      R"({"unitization": {"of": {"ideal_subrng": {"of": {"zmod": 4}, "gens": [2]}}, "mod": 2}, "label": "U"})");
  REQUIRE(u.ext);
  CHECK(u.ring->label() == "U");
  CHECK(u.ext->amb()->label() == "U");
  CHECK(u.ring->size() == 4);

  const ParsedSpec ls = parse_ring_spec(R"({"ideal_subrng": {"of": {"zmod": 12}, "gens": [2]}, "label": "S"})");
  CHECK(ls.ext->label() == "S<Z12");
}

TEST_CASE("rejections") {
  CHECK_THROWS_AS(parse_ring_spec("{"), SpecError);
  CHECK_THROWS_AS(parse_ring_spec("[]"), SpecError);
  CHECK_THROWS_AS(parse_ring_spec(R"({"zmod": 0})"), SpecError);
  CHECK_THROWS_AS(parse_ring_spec(R"({"zmod": "six"})"), SpecError);
  CHECK_THROWS_AS(parse_ring_spec(R"({"zmod": 6, "product": []})"), SpecError);
  CHECK_THROWS_AS(parse_ring_spec(R"({"ring": 6})"), SpecError);
  CHECK_THROWS_AS(parse_ring_spec(R"({"ideal_subrng": {"of": {"zmod": 4}, "gens": [7]}})"), SpecError);
  CHECK_THROWS_AS(parse_ring_spec(R"({"table": {"add": [[0,1],[1,0]], "mul": [[0,1],[0,1]]}})"), SpecError);
  CHECK_THROWS_AS(parse_ring_spec(R"({"unitization": {"of": {"zmod": 6}, "mod": 4}})"), SpecError);
  CHECK_THROWS_AS(parse_ring_spec(R"({"product": [{"zmod": 2}]})"), SpecError);
  CHECK_THROWS_AS(load_ring_spec("/nonexistent/spec.json"), SpecError);
}

TEST_CASE("limits are not parse errors") {
  const std::size_t before = max_ring_size();
  set_max_ring_size(100);
  CHECK_THROWS_AS(parse_ring_spec(R"({"zmod": 101})"), LimitError);
  set_max_ring_size(before);
}

TEST_CASE("corpus documents") {
  const Corpus c = corpus_from_json(nlohmann::json::parse(R"([{"zmod": 6}, {"unitization": {"of": {"zmod": 2}, "mod": 2}}])"));
  CHECK(c.rings.size() == 2);
  CHECK(c.extras.size() == 1);
  const Corpus one = corpus_from_json(nlohmann::json::parse(R"({"zmod": 6})"));
  CHECK(one.rings.size() == 1);
}

TEST_CASE("verify on a one-ring corpus") {
  const Corpus c = corpus_from_json(nlohmann::json::parse(R"({"zmod": 6})"));
  VerifyOptions opts;
  opts.boolean_checks = false;
  const VerifyResult r = verify(c, opts);
  INFO(r.report.text());
  CHECK(r.report.all_pass());
  CHECK(r.report.size() > 24);
  CHECK(r.report.size() < 600);
  CHECK(r.report.text() == verify(c, opts).report.text());

  opts.mutate = true;
  const VerifyResult m = verify(c, opts);
  CHECK_FALSE(m.report.all_pass());
  const auto f = m.report.first_failure();
  REQUIRE(f);
  CHECK(f->name == "ring_axioms");
  CHECK_FALSE(f->witness.empty());
}
