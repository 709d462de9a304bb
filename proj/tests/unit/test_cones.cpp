#include <catch_amalgamated.hpp>

#include <random>

#include "ordlab/backend.hpp"
#include "ordlab/cones.hpp"
#include "ordlab/solver.hpp"

#include "../fixtures.hpp"

using namespace ordlab;

namespace {

WordBackend backend_for(const char* text) {
  Presentation p = parse_presentation(text);
  BackendResult r = make_backend(p);
  REQUIRE(r.ok());
  return std::move(*r.backend);
}

Word random_word(std::mt19937& rng, int n, int max_len) {
  std::uniform_int_distribution<int> len_dist(0, max_len);
  std::uniform_int_distribution<int> letter_dist(0, 2 * n - 1);
  int len = len_dist(rng);
  std::vector<Letter> out;
  for (int i = 0; i < len; ++i) out.push_back(letter_dist(rng));
  return Word(std::move(out));
}

}  // namespace

TEST_CASE("lex cone membership") {
  ConeOracle lex2 = lex_cone(2);
  Presentation p = parse_presentation(fixtures::kZ2);
  CHECK(lex2.member(parse_word(p, "aBBBBB")));   // (1, -5)
  CHECK(lex2.member(parse_word(p, "bbb")));      // (0, 3)
  CHECK_FALSE(lex2.member(Word{}));
  CHECK_FALSE(lex2.member(parse_word(p, "Ab")));  // (-1, 1)
  CHECK(lex2.claims_biorder());
}

TEST_CASE("slope cone membership") {
  ConeOracle slope = slope_cone();
  Presentation p = parse_presentation(fixtures::kZ2);
  CHECK(slope.member(parse_word(p, "aB")));       // sqrt(2) - 1 > 0
  CHECK_FALSE(slope.member(parse_word(p, "Ab"))); // -sqrt(2) + 1 < 0
  CHECK_FALSE(slope.member(Word{}));
  CHECK(slope.member(parse_word(p, "ab")));
  CHECK_FALSE(slope.member(parse_word(p, "Abb") ) == slope.member(parse_word(p, "aBB")));
  // (m, n) and (-m, -n) are never both members.
  CHECK(slope.member(parse_word(p, "abbb")) != slope.member(parse_word(p, "ABBB")));
}

TEST_CASE("klein cone membership") {
  ConeOracle kc = klein_cone();
  Presentation p = parse_presentation(fixtures::kKlein);
  CHECK(kc.member(parse_word(p, "YYxxx")));   // y^-2 x^3, n = 3
  CHECK(kc.member(parse_word(p, "yyyyy")));   // y^5, n = 0, m = 5
  CHECK_FALSE(kc.member(parse_word(p, "Xyyyyyyy")));  // n = -1
  CHECK_FALSE(kc.member(Word{}));
  CHECK_FALSE(kc.claims_biorder());
}

TEST_CASE("cone lookup by name") {
  CHECK(cone_by_name("lex:2").has_value());
  CHECK(cone_by_name("lex:26").has_value());
  CHECK(cone_by_name("slope").has_value());
  CHECK(cone_by_name("klein").has_value());
  CHECK_FALSE(cone_by_name("lex:0").has_value());
  CHECK_FALSE(cone_by_name("lex:27").has_value());
  CHECK_FALSE(cone_by_name("dehornoy").has_value());
}

TEST_CASE("trichotomy and semigroup sampling") {
  struct Case {
    ConeOracle cone;
    const char* text;
  };
  Case cases[] = {{lex_cone(2), fixtures::kZ2},
                  {lex_cone(3), fixtures::kZ3},
                  {slope_cone(), fixtures::kZ2},
                  {klein_cone(), fixtures::kKlein}};
  for (const Case& c : cases) {
    WordBackend b = backend_for(c.text);
    std::mt19937 rng(99);
    int members = 0;
    std::vector<Word> pool;
    for (int i = 0; i < 1000; ++i) {
      Word w = random_word(rng, b.presentation().num_generators(), 10);
      bool mw = c.cone.member(w);
      bool mi = c.cone.member(invert(w));
      bool id = b.is_identity(w);
      int truths = int(mw) + int(mi) + int(id);
      CHECK(truths == 1);
      if (mw) {
        ++members;
        pool.push_back(w);
      }
      // Membership is constant on group-equal words.
      CHECK(c.cone.member(b.normal_form(w)) == mw);
    }
    CHECK(members > 100);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    for (int i = 0; i < 500; ++i)
      CHECK(c.cone.member(concat(pool[pick(rng)], pool[pick(rng)])));
    if (c.cone.claims_biorder()) {
      for (int i = 0; i < 500; ++i) {
        Word g = random_word(rng, b.presentation().num_generators(), 6);
        Word q = pool[pick(rng)];
        CHECK(c.cone.member(concat(concat(invert(g), q), g)));
      }
    }
  }
}

TEST_CASE("restrict_to_ball gives valid preorders") {
  struct Case {
    ConeOracle cone;
    const char* text;
  };
  Case cases[] = {{lex_cone(2), fixtures::kZ2},
                  {lex_cone(3), fixtures::kZ3},
                  {slope_cone(), fixtures::kZ2},
                  {klein_cone(), fixtures::kKlein}};
  for (const Case& c : cases) {
    WordBackend b = backend_for(c.text);
    for (int k = 1; k <= 4; ++k) {
      Ball ball = build_ball(b, k);
      SignAssignment a = restrict_to_ball(c.cone, b.presentation(), ball);
      CHECK(verify_assignment(ball, a, SearchMode::preorder));
      if (c.cone.claims_biorder())
        CHECK(verify_assignment(ball, a, SearchMode::prebiorder));
    }
  }
}

TEST_CASE("klein cone is a preorder but not a pre-biorder") {
  WordBackend b = backend_for(fixtures::kKlein);
  for (int k = 1; k <= 4; ++k) {
    Ball ball = build_ball(b, k);
    SignAssignment a = restrict_to_ball(klein_cone(), b.presentation(), ball);
    CHECK(verify_assignment(ball, a, SearchMode::preorder));
    CHECK_FALSE(verify_assignment(ball, a, SearchMode::prebiorder));
  }
}

TEST_CASE("slope cone restriction appears among the enumerated assignments") {
  WordBackend b = backend_for(fixtures::kZ2);
  Ball ball = build_ball(b, 1);
  EnumerationResult e = enumerate_orders(ball, SearchMode::preorder, 100);
  REQUIRE(e.assignments.size() == 4);
  SignAssignment a = restrict_to_ball(slope_cone(), b.presentation(), ball);
  CHECK(std::count(e.assignments.begin(), e.assignments.end(), a) == 1);
}

TEST_CASE("cone and group mismatch is an error") {
  WordBackend b = backend_for(fixtures::kZ2);
  Ball ball = build_ball(b, 2);
  CHECK_THROWS_AS(restrict_to_ball(lex_cone(3), b.presentation(), ball), ConeMismatch);

  // Right generator count, wrong group: an involution collapses an inverse
  // pair onto one element, which no cone can sign consistently.
  WordBackend torsion = backend_for("gens: x,y\nrels: yy");
  Ball tb = build_ball(torsion, 1);
  CHECK_THROWS_AS(restrict_to_ball(lex_cone(2), torsion.presentation(), tb), ConeMismatch);
}
