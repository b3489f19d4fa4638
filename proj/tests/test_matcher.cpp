#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "testutil.hpp"
#include "traceq/matcher.hpp"
#include "traceq/oracle.hpp"

using namespace traceq;
using namespace tq_test;

namespace {

// soundness: a returned witness must re-validate from first principles
void check_witness(const Query& q, const Trace& t, const Witness& w) {
  REQUIRE(w.embedding.size() == q.length());
  CHECK(matcher::embedding_satisfies(w.embedding, q));
  for (std::size_t i = 1; i <= q.length(); ++i) {
    const Symbol& s = q.symbols()[i - 1];
    const TypeSymbol& letter = t.at(w.embedding.at(i));
    if (s.is_var()) {
      REQUIRE(w.var_assign.count(s.as_var()) == 1);
      CHECK(w.var_assign.at(s.as_var()) == letter);
    } else {
      REQUIRE(w.choice.count(i) == 1);
      CHECK(w.choice.at(i) == letter);
      CHECK(s.as_typeset().count(letter) == 1);
    }
  }
  for (const Variable& v : vars(q)) CHECK(w.var_assign.count(v) == 1);
}

}  // namespace

TEST_CASE("embedding_satisfies on the Example 3 witness embedding") {
  Query q = example3_query();
  Embedding e({1, 2, 5, 10, 13, 14, 16, 19});
  CHECK(matcher::embedding_satisfies(e, q));
  // span 19 <= 25 and all seven gaps inside their bounds, by hand:
  // 0,2,4,2,0,1,2 against (0,1),(2,inf),(3,inf),(0,5),(0,5),(1,5),(1,2)
  Embedding tight({1, 2, 5, 9, 13, 14, 16, 19});
  CHECK(matcher::embedding_satisfies(tight, q));
}

TEST_CASE("embedding_satisfies basics") {
  Query contiguous({V("x1"), V("x2"), V("x3")}, Bound(3), {});
  CHECK(matcher::embedding_satisfies(Embedding({1, 2, 3}), contiguous));
  CHECK_FALSE(matcher::embedding_satisfies(Embedding({1, 2, 4}), contiguous));

  Query gap0({T("a"), T("b")}, Bound(10), {gap(1, 0, Bound(0))});
  CHECK_FALSE(matcher::embedding_satisfies(Embedding({1, 3}), gap0));
  CHECK(matcher::embedding_satisfies(Embedding({1, 2}), gap0));

  CHECK_THROWS_AS(matcher::embedding_satisfies(Embedding({1, 2}), contiguous),
                  std::invalid_argument);
}

TEST_CASE("find_witness reproduces the Example 3 match") {
  Query q = example3_query();
  Trace t = example3_trace();
  auto w = matcher::find_witness(q, t);
  REQUIRE(w.has_value());
  check_witness(q, t, *w);
  // least witness embedding, frozen from the brute-force oracle
  CHECK(w->embedding.positions() ==
        std::vector<std::size_t>{1, 2, 5, 9, 13, 14, 16, 19});
  CHECK(w->var_assign.at(Variable("x1")) == sym("c"));
  CHECK(w->embedding == oracle::brute_witness_embeddings(q, t).front());
}

TEST_CASE("the as-printed Example 3 string with {a,c} at position 7 has no witness") {
  Query q = example3_query();
  auto symbols = q.symbols();
  symbols[6] = TS({"a", "c"});
  Query printed(symbols, q.window(), q.constraints());
  CHECK_FALSE(matcher::matches(printed, example3_trace()));
  CHECK_FALSE(oracle::brute_matches(printed, example3_trace()));
}

TEST_CASE("find_witness basics") {
  Query single({V("x")}, Bound(1), {});
  auto w = matcher::find_witness(single, trace("a"));
  REQUIRE(w.has_value());
  CHECK(w->embedding.positions() == std::vector<std::size_t>{1});
  CHECK(w->var_assign.at(Variable("x")) == sym("a"));

  Query ab({T("a"), T("b")}, Bound(2), {gap(1, 0, Bound(0))});
  CHECK_FALSE(matcher::find_witness(ab, trace("ba")).has_value());

  Query invalid({T("a")}, Bound(0), {});
  CHECK_THROWS_AS(matcher::find_witness(invalid, trace("a")), std::invalid_argument);
}

TEST_CASE("Example 4 queries match nothing") {
  Query q1 = example4_q1();
  for (const std::string letters :
       {"ababbbbaaaa", "aaaaaa", "aaaaaaaaaaa", "abababbbbaaaab"}) {
    CHECK_FALSE(matcher::matches(q1, trace(letters)));
    CHECK_FALSE(oracle::brute_matches(q1, trace(letters)));
  }
  // dropping the window makes the paper's 11-letter trace a model of C1
  Query no_window(q1.symbols(), Bound::infinity(), q1.constraints());
  CHECK(matcher::matches(no_window, trace("ababbbbaaaa")));
}

TEST_CASE("Example 10 matches") {
  Query mgq({V("x1"), V("x2"), V("x3")}, Bound(3), {gap(1, 0, Bound(0)), gap(2, 0, Bound(0))});
  CHECK(matcher::matches(mgq, trace("abb")));
  CHECK(matcher::matches(example10_output(), trace("acc")));
  CHECK(matcher::matches(example10_output(), trace("abb")));
}

TEST_CASE("support over the Example 10 sample") {
  Sample s = example10_sample();
  CHECK(matcher::support(example10_output(), s) == Rational(1));

  Query aax({T("a"), T("a"), V("x3")}, Bound(3), {gap(1, 0, Bound(0)), gap(2, 0, Bound(0))});
  CHECK(matcher::support(aax, s) == Rational(0));

  CHECK(matcher::support(example4_q1(), s) == Rational(0));

  Query first({T("a")}, Bound(1), {});
  CHECK(matcher::support(first, sample({"abb", "bbb"})) == Rational(1, 2));
}

TEST_CASE("matcher agrees with the brute-force oracle on random instances") {
  Rng rng(21);
  QueryOpts opts;
  for (int i = 0; i < 400; ++i) {
    Query q = random_query(rng, opts);
    Trace t = random_trace(rng, "abc", 1, 8);
    CAPTURE(i);
    CHECK(matcher::matches(q, t) == oracle::brute_matches(q, t));
  }
}

TEST_CASE("witnesses are sound and lexicographically least on random instances") {
  Rng rng(22);
  QueryOpts opts;
  for (int i = 0; i < 300; ++i) {
    Query q = random_query(rng, opts);
    Trace t = random_trace(rng, "abc", 1, 8);
    auto w = matcher::find_witness(q, t);
    if (!w) continue;
    check_witness(q, t, *w);
    auto all = oracle::brute_witness_embeddings(q, t);
    REQUIRE(!all.empty());
    CHECK(w->embedding == all.front());
  }
}

TEST_CASE("enlarging a typeset never turns a match into a miss") {
  Rng rng(23);
  for (int i = 0; i < 200; ++i) {
    Query q = random_query(rng, {});
    Trace t = random_trace(rng, "abc", 1, 8);
    std::vector<Symbol> symbols = q.symbols();
    bool changed = false;
    for (Symbol& s : symbols) {
      if (s.is_typeset() && rng.chance(0.5)) {
        TypeSet bigger = s.as_typeset();
        bigger.insert(sym(std::string(1, static_cast<char>('a' + rng.between(0, 2)))));
        s = Symbol::typeset(bigger);
        changed = true;
      }
    }
    if (!changed) continue;
    Query enlarged(symbols, q.window(), q.constraints());
    if (matcher::matches(q, t)) CHECK(matcher::matches(enlarged, t));
  }
}

TEST_CASE("a match inside a factor survives in the whole trace") {
  Rng rng(24);
  for (int i = 0; i < 200; ++i) {
    Query q = random_query(rng, {});
    Trace t = random_trace(rng, "abc", 1, 6);
    if (!matcher::matches(q, t)) continue;
    std::vector<TypeSymbol> items = random_trace(rng, "abc", 1, 3).items();
    std::vector<TypeSymbol> whole = items;
    whole.insert(whole.end(), t.items().begin(), t.items().end());
    auto tail = random_trace(rng, "abc", 1, 3).items();
    whole.insert(whole.end(), tail.begin(), tail.end());
    CHECK(matcher::matches(q, Trace(whole)));
  }
}

TEST_CASE("infinite window disables the span check only") {
  Query q({T("a"), T("b")}, Bound::infinity(), {gap(1, 2, Bound(2))});
  CHECK(matcher::matches(q, trace("accb")));
  CHECK_FALSE(matcher::matches(q, trace("ab")));
  CHECK_FALSE(matcher::matches(q, trace("acccb")));
  // same gaps, tight window
  Query windowed({T("a"), T("b")}, Bound(3), {gap(1, 2, Bound(2))});
  CHECK_FALSE(matcher::matches(windowed, trace("accb")));
}
