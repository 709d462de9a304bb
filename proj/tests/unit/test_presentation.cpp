#include <catch_amalgamated.hpp>

#include <random>

#include "ordlab/presentation.hpp"
#include "ordlab/word.hpp"

using namespace ordlab;

namespace {

Word w(std::vector<Letter> ls) { return Word(std::move(ls)); }

// Random freely reduced word over n generators.
Word random_reduced_word(std::mt19937& rng, int n, int max_len) {
  std::uniform_int_distribution<int> len_dist(0, max_len);
  std::uniform_int_distribution<int> letter_dist(0, 2 * n - 1);
  int len = len_dist(rng);
  std::vector<Letter> out;
  while (static_cast<int>(out.size()) < len) {
    Letter l = letter_dist(rng);
    if (!out.empty() && out.back() == inverse_letter(l)) continue;
    out.push_back(l);
  }
  return Word(std::move(out));
}

}  // namespace

TEST_CASE("free_reduce examples") {
  // x = letter 0, x^-1 = letter 1, y = 2, y^-1 = 3
  CHECK(free_reduce(w({0, 1})) == Word{});
  CHECK(free_reduce(w({0, 2, 3, 0})) == w({0, 0}));
  CHECK(free_reduce(Word{}) == Word{});
}

TEST_CASE("invert examples") {
  CHECK(invert(w({0, 2})) == w({3, 1}));
  CHECK(invert(Word{}) == Word{});
  CHECK(invert(w({1, 2, 0})) == w({1, 3, 0}));
}

TEST_CASE("free reduction properties") {
  std::mt19937 rng(20240811);
  for (int i = 0; i < 500; ++i) {
    Word u = random_reduced_word(rng, 3, 12);
    CHECK(free_reduce(free_reduce(u)) == free_reduce(u));
    CHECK(free_reduce(concat(u, invert(u))) == Word{});
  }
}

TEST_CASE("parse Klein bottle presentation") {
  Presentation p = parse_presentation("gens: x,y\nrels: Xyxy");
  REQUIRE(p.num_generators() == 2);
  REQUIRE(p.relators.size() == 1);
  CHECK(p.relators[0].size() == 4);
  CHECK(p.relators[0] == w({1, 2, 0, 2}));
}

TEST_CASE("parse free group on one generator") {
  Presentation p = parse_presentation("gens: a\nrels:");
  CHECK(p.num_generators() == 1);
  CHECK(p.relators.empty());
}

TEST_CASE("parse Poincare sphere presentation") {
  Presentation p = parse_presentation("gens: x,z\nrels: zxzxZZZ, zzzXXXXX");
  REQUIRE(p.num_generators() == 2);
  REQUIRE(p.relators.size() == 2);
  // z = letter 2, x = letter 0; zxzxZZZ cyclically reduces to xzxZZ
  CHECK(p.relators[0] == w({0, 2, 0, 3, 3}));
  CHECK(p.relators[1] == w({2, 2, 2, 1, 1, 1, 1, 1}));
}

TEST_CASE("parse handles comments and whitespace") {
  Presentation p = parse_presentation("# Klein bottle\n  gens:  x , y \n\nrels:  Xyxy \n");
  CHECK(p.num_generators() == 2);
  CHECK(p.relators.size() == 1);
}

TEST_CASE("relators are cyclically reduced, trivial relators dropped") {
  Presentation p = parse_presentation("gens: a,b\nrels: aabAA, aA");
  REQUIRE(p.relators.size() == 1);
  CHECK(p.relators[0] == w({2}));  // a a b a^-1 a^-1 reduces cyclically to b
}

TEST_CASE("parse errors carry position") {
  CHECK_THROWS_AS(parse_presentation("gens: x,x\nrels:"), ParseError);
  CHECK_THROWS_AS(parse_presentation("gens: x\nrels: xq"), ParseError);
  CHECK_THROWS_AS(parse_presentation("gens: x\n"), ParseError);
  CHECK_THROWS_AS(parse_presentation("nope: x\nrels:"), ParseError);
  CHECK_THROWS_AS(parse_presentation("gens: xy\nrels:"), ParseError);
  CHECK_THROWS_AS(parse_presentation("gens: x\nrels: x\nextra"), ParseError);
  CHECK_THROWS_AS(parse_presentation("gens: x\nrels: x,"), ParseError);
  CHECK_THROWS_AS(parse_presentation("gens:\nrels:"), ParseError);
  try {
    parse_presentation("gens: x\nrels: xq");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
    CHECK(e.col >= 7);
  }
}

TEST_CASE("presentation round-trip") {
  for (const char* text : {"gens: x,y\nrels: Xyxy",
                           "gens: a\nrels:",
                           "gens: x,z\nrels: zxzxZZZ, zzzXXXXX"}) {
    Presentation p = parse_presentation(text);
    std::string s = serialize_presentation(p);
    Presentation q = parse_presentation(s);
    CHECK(serialize_presentation(q) == s);
    CHECK(q.relators == p.relators);
    CHECK(q.num_generators() == p.num_generators());
  }
}
