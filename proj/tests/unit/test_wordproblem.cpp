#include <catch_amalgamated.hpp>

#include <random>
#include <set>

#include "ordlab/backend.hpp"
#include "ordlab/ball.hpp"
#include "ordlab/coset_table.hpp"
#include "ordlab/presentation.hpp"
#include "ordlab/rewriting.hpp"

#include "../fixtures.hpp"

using namespace ordlab;

namespace {

Presentation pres(const char* text) { return parse_presentation(text); }

Word rw(std::mt19937& rng, int n, int max_len) {
  std::uniform_int_distribution<int> len_dist(0, max_len);
  std::uniform_int_distribution<int> letter_dist(0, 2 * n - 1);
  int len = len_dist(rng);
  std::vector<Letter> out;
  for (int i = 0; i < len; ++i) out.push_back(letter_dist(rng));
  return Word(std::move(out));
}

}  // namespace

TEST_CASE("knuth_bendix on free group gives empty proper rule set") {
  Presentation p = pres(fixtures::kF2);
  KbResult r = knuth_bendix(p);
  REQUIRE(r.ok());
  CHECK(r.system->rules().empty());
  CHECK(r.system->cancellation_rules().size() == 4);
  CHECK(r.system->confluent());
  // Normal form is plain free reduction.
  Word w = parse_word(p, "xyYX");
  CHECK(r.system->rewrite(w) == Word{});
}

TEST_CASE("knuth_bendix on Klein bottle group") {
  Presentation p = pres(fixtures::kKlein);
  KbResult r = knuth_bendix(p);
  REQUIRE(r.ok());
  WordBackend b(p, std::move(*r.system));
  CHECK(b.normal_form(parse_word(p, "Xyx")) == b.normal_form(parse_word(p, "Y")));
  CHECK(b.is_identity(parse_word(p, "Xyxy")));
  CHECK_FALSE(b.is_identity(parse_word(p, "xy")));
}

TEST_CASE("knuth_bendix on Z^2") {
  Presentation p = pres(fixtures::kZ2);
  KbResult r = knuth_bendix(p);
  REQUIRE(r.ok());
  WordBackend b(p, std::move(*r.system));
  CHECK(b.normal_form(parse_word(p, "ba")) == parse_word(p, "ab"));
  // Brute-force oracle: equality of exponent vectors.
  std::mt19937 rng(7);
  for (int i = 0; i < 200; ++i) {
    Word u = rw(rng, 2, 8), v = rw(rng, 2, 8);
    long long ua = 0, ub = 0, va = 0, vb = 0;
    for (Letter l : u.letters) (letter_gen(l) == 0 ? ua : ub) += letter_sign(l);
    for (Letter l : v.letters) (letter_gen(l) == 0 ? va : vb) += letter_sign(l);
    CHECK(b.equal(u, v) == (ua == va && ub == vb));
  }
}

TEST_CASE("rewriting system invariants") {
  for (const char* text : {fixtures::kZ2, fixtures::kKlein, fixtures::kC2, fixtures::kS3}) {
    Presentation p = pres(text);
    KbResult r = knuth_bendix(p);
    REQUIRE(r.ok());
    const RewritingSystem& rs = *r.system;
    for (const RewriteRule& rule : rs.rules()) {
      CHECK(shortlex_less(rule.rhs, rule.lhs));
      CHECK(is_freely_reduced(rule.lhs));
      CHECK(is_freely_reduced(rule.rhs));
    }
    CHECK(critical_pairs_join(rs));
    // Every relator rewrites to the empty word.
    for (const Word& rel : p.relators) CHECK(rs.rewrite(rel) == Word{});
  }
}

TEST_CASE("knuth_bendix budget exhaustion is reported") {
  Presentation p = pres(fixtures::kZ2);
  KbResult r = knuth_bendix(p, {.max_rules = 1, .max_len = 50});
  REQUIRE_FALSE(r.ok());
  CHECK(r.failure == KbFailure::rule_budget);
  KbResult r2 = knuth_bendix(p, {.max_rules = 2000, .max_len = 2});
  REQUIRE_FALSE(r2.ok());
  CHECK(r2.failure == KbFailure::length_budget);
}

TEST_CASE("todd_coxeter on Poincare sphere presentation closes at 120") {
  Presentation p = pres(fixtures::kPoincare);
  TcResult r = todd_coxeter(p);
  REQUIRE(r.ok());
  CHECK(r.table->num_cosets() == 120);
}

TEST_CASE("todd_coxeter on Z/2") {
  Presentation p = pres(fixtures::kC2);
  TcResult r = todd_coxeter(p);
  REQUIRE(r.ok());
  CHECK(r.table->num_cosets() == 2);
}

TEST_CASE("todd_coxeter on S3 presentation") {
  Presentation p = pres(fixtures::kS3);
  TcResult r = todd_coxeter(p);
  REQUIRE(r.ok());
  CHECK(r.table->num_cosets() == 6);
}

TEST_CASE("todd_coxeter group orders on classic finite presentations") {
  struct Case {
    const char* text;
    int order;
  };
  Case cases[] = {
      {"gens: a\nrels: aaaaaa", 6},                   // Z/6
      {"gens: a,b\nrels: aaaa, bb, abab", 8},         // dihedral of order 8
      {"gens: a,b\nrels: aaaa, bbAA, Baba", 8},       // quaternion group
      {"gens: a,b\nrels: aa, bbb, ababababab", 60},   // (2,3,5) triangle = A5
  };
  for (const Case& c : cases) {
    TcResult r = todd_coxeter(parse_presentation(c.text));
    REQUIRE(r.ok());
    CHECK(r.table->num_cosets() == c.order);
  }
}

TEST_CASE("todd_coxeter agrees with ball stabilization under a rewriting backend") {
  Presentation p = parse_presentation(fixtures::kS3);
  TcResult tc = todd_coxeter(p);
  REQUIRE(tc.ok());
  KbResult kb = knuth_bendix(p);
  REQUIRE(kb.ok());
  WordBackend b(p, std::move(*kb.system));
  Ball ball = build_ball(b, 8);
  CHECK(ball.size() == tc.table->num_cosets());
}

TEST_CASE("todd_coxeter budget exhaustion on an infinite group") {
  Presentation p = pres(fixtures::kZ2);
  TcResult r = todd_coxeter(p, {.max_cosets = 1000});
  REQUIRE_FALSE(r.ok());
  CHECK(r.exhausted);
  CHECK(r.cosets_defined >= 1000);
}

TEST_CASE("coset table columns are permutations and reps biject with cosets") {
  for (const char* text : {fixtures::kPoincare, fixtures::kS3, fixtures::kC4}) {
    Presentation p = pres(text);
    TcResult r = todd_coxeter(p);
    REQUIRE(r.ok());
    const CosetTable& t = *r.table;
    int n = t.num_cosets();
    for (Letter l = 0; l < p.num_letters(); ++l) {
      std::set<int> image;
      for (int c = 1; c <= n; ++c) {
        int d = t.act(c, l);
        CHECK((d >= 1 && d <= n));
        image.insert(d);
        CHECK(t.act(d, inverse_letter(l)) == c);
      }
      CHECK(static_cast<int>(image.size()) == n);
    }
    std::set<Word> reps;
    for (int c = 1; c <= n; ++c) {
      reps.insert(t.representative(c));
      CHECK(t.trace(t.representative(c)) == c);
    }
    CHECK(static_cast<int>(reps.size()) == n);
    // Relators fix every coset.
    for (const Word& rel : p.relators)
      for (int c = 1; c <= n; ++c) {
        int d = c;
        for (Letter l : rel.letters) d = t.act(d, l);
        CHECK(d == c);
      }
  }
}

TEST_CASE("normal form properties across backends") {
  std::mt19937 rng(20240812);
  for (const char* text :
       {fixtures::kZ2, fixtures::kKlein, fixtures::kF2, fixtures::kS3, fixtures::kPoincare}) {
    Presentation p = pres(text);
    BackendResult br = make_backend(p);
    REQUIRE(br.ok());
    const WordBackend& b = *br.backend;
    CHECK(b.normal_form(Word{}) == Word{});
    for (const Word& rel : p.relators) CHECK(b.is_identity(rel));
    for (int i = 0; i < 100; ++i) {
      Word u = rw(rng, p.num_generators(), 10);
      Word v = rw(rng, p.num_generators(), 10);
      Word nu = b.normal_form(u);
      CHECK(b.normal_form(nu) == nu);
      CHECK(b.normal_form(concat(u, v)) ==
            b.normal_form(concat(b.normal_form(u), b.normal_form(v))));
      CHECK(b.equal(u, u));
    }
  }
}

TEST_CASE("normal form examples") {
  Presentation klein = pres(fixtures::kKlein);
  BackendResult kb = make_backend(klein);
  REQUIRE(kb.ok());
  CHECK(kb.backend->is_identity(parse_word(klein, "Xyxy")));

  Presentation poin = pres(fixtures::kPoincare);
  BackendResult pb = make_backend(poin);
  REQUIRE(pb.ok());
  CHECK(pb.backend->is_identity(parse_word(poin, "zzzXXXXX")));

  Presentation f2 = pres(fixtures::kF2);
  BackendResult fb = make_backend(f2);
  REQUIRE(fb.ok());
  CHECK_FALSE(fb.backend->equal(parse_word(f2, "xy"), parse_word(f2, "yx")));
}

TEST_CASE("backend policy falls back to Todd-Coxeter and reports failure") {
  // Poincare with KB budgets too small for completion must land on cosets.
  Presentation p = pres(fixtures::kPoincare);
  BackendBudgets budgets;
  budgets.kb.max_rules = 2;
  BackendResult r = make_backend(p, budgets);
  REQUIRE(r.ok());
  CHECK(r.backend->kind() == WordBackend::Kind::cosets);

  // Tiny budgets on an infinite group leave the word problem undecided.
  Presentation z2 = pres(fixtures::kZ2);
  BackendBudgets tiny;
  tiny.kb.max_rules = 1;
  tiny.tc.max_cosets = 10;
  BackendResult u = make_backend(z2, tiny);
  CHECK_FALSE(u.ok());
  CHECK(u.kb_failure == KbFailure::rule_budget);
  CHECK(u.tc_exhausted);
}
