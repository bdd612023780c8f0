#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "revca/automaton.hpp"
#include "revca/constructions.hpp"
#include "revca/error.hpp"
#include "revca/reverse.hpp"
#include "revca/witnesses.hpp"
#include "toys.hpp"

using namespace revca;

namespace {

Word word(const CounterAutomaton& m, const std::string& s) {
  std::vector<std::string> toks;
  for (char c : s) toks.emplace_back(1, c);
  return m.encode(toks);
}

bool accepts(const CounterAutomaton& m, const Word& w, std::size_t fuel = 500) {
  return run(m, w, fuel).verdict == Verdict::kAccept;
}

// Accepts every word over the letters, moving on each one.
CounterAutomaton everything(const std::vector<std::string>& letters) {
  CounterAutomaton m(0, 1);
  for (const auto& l : letters) m.add_token(l);
  const StateId s = m.add_state("s");
  const StateId r = m.add_state("r");
  const StateId f = m.add_state("f");
  m.set_initial(s);
  m.set_accepting(f);
  m.add_transition({s, kLeftEnd, {}, r, 1, {}});
  for (Symbol a = kFirstLetter; a < m.num_symbols(); ++a) m.add_transition({r, a, {}, r, 1, {}});
  m.add_transition({r, kRightEnd, {}, f, 0, {}});
  return m;
}

// Even length over {a, b}, reading the right end like eq_ab does.
CounterAutomaton even_length() {
  CounterAutomaton m(0, 1);
  m.add_token("a");
  m.add_token("b");
  const StateId s = m.add_state("s");
  const StateId e = m.add_state("e");
  const StateId o = m.add_state("o");
  const StateId f = m.add_state("f");
  m.set_initial(s);
  m.set_accepting(f);
  m.add_transition({s, kLeftEnd, {}, e, 1, {}});
  for (Symbol a = kFirstLetter; a < m.num_symbols(); ++a) {
    m.add_transition({e, a, {}, o, 1, {}});
    m.add_transition({o, a, {}, e, 1, {}});
  }
  m.add_transition({e, kRightEnd, {}, f, 0, {}});
  return m;
}

}  // namespace

TEST_CASE("residue case table") {
  CHECK(split_residue(2, 2, 3) == ResidueStep{1, 1});
  CHECK(split_residue(0, -2, 3) == ResidueStep{1, -1});
  for (int c = 1; c <= 4; ++c)
    for (int m = 0; m < c; ++m) CHECK(split_residue(m, 0, c) == ResidueStep{m, 0});
  // Represented value c*carry + residue always equals m + delta.
  for (int c = 1; c <= 4; ++c)
    for (int m = 0; m < c; ++m)
      for (int d = -c; d <= c; ++d) {
        auto s = split_residue(m, d, c);
        CHECK(s.residue >= 0);
        CHECK(s.residue < c);
        CHECK(c * s.carry + s.residue == m + d);
      }
}

TEST_CASE("moded state names") {
  CHECK(moded_state_name("q", {1, 0}) == "q@1,0");
  CHECK(moded_state_name("q", {}) == "q");
}

TEST_CASE("normalizing a scaled eq_ab") {
  auto src = toys::scaled(build_eq_ab(), 3);
  CHECK(validate(src).empty());
  auto n = normalize_extended(src);
  CHECK(n.modulus == 3);
  CHECK(n.automaton.max_delta() == 1);
  CHECK(validate(n.automaton).empty());
  CHECK(n.automaton.state_name(n.automaton.initial()) == "q0@0");
  for (const auto& w : toys::all_words(src, 6)) {
    auto a = run(src, w, 100, true);
    auto b = run(n.automaton, w, 100, true);
    CHECK(a.verdict == b.verdict);
    CHECK(a.steps == b.steps);
    for (std::size_t t = 0; t < b.trace.size(); ++t) {
      const auto& ms = n.states[b.trace[t].state];
      CHECK(ms.base == a.trace[t].state);
      CHECK(a.trace[t].counters[0] == 3 * b.trace[t].counters[0] + ms.residues[0]);
    }
  }
}

TEST_CASE("normalizing keeps reversibility and emits the mirrored table") {
  for (const auto& base : {build_eq_ab(), build_balanced(3)}) {
    for (int c = 2; c <= 3; ++c) {
      auto src = toys::scaled(base, c);
      auto rev = derive_reverse_extended(src);
      REQUIRE(rev.reversible);
      auto n = normalize_extended(src, &rev.table);
      REQUIRE(n.reverse);
      CHECK_FALSE(verify_roundtrip(n.automaton, *n.reverse, 5, 200));
      auto again = derive_reverse(n.automaton);
      CHECK(again.reversible);
      CHECK_FALSE(verify_roundtrip(n.automaton, again.table, 5, 200));
    }
  }
}

TEST_CASE("normalizing random extended machines") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const int k = 1 + trial % 2;
    const int c = 2 + trial % 3;
    auto src = toys::random_extended(rng, k, c, 3 + trial % 3);
    REQUIRE(validate(src).empty());
    auto n = normalize_extended(src);
    for (const auto& w : toys::all_words(src, 5)) {
      auto a = run(src, w, 60);
      if (!a.diagnostic.empty()) continue;
      auto b = run(n.automaton, w, 60);
      CHECK(a.verdict == b.verdict);
      CHECK(a.steps == b.steps);
    }
  }
}

TEST_CASE("speedup of the slow a* machine") {
  auto src = toys::a_star_slow();
  CHECK_THROWS_AS(speedup(src, 0), Error);
  auto fast = speedup(src, 1);
  CHECK(validate(fast.automaton).empty());
  CHECK(derive_reverse(fast.automaton).reversible);
  for (std::size_t n = 0; n <= 8; ++n) {
    auto r = run(fast.automaton, Word(n, kFirstLetter), 100);
    CHECK(r.verdict == Verdict::kAccept);
    CHECK(r.steps <= n + 2);
  }
}

TEST_CASE("speedup leaves real-time machines alone") {
  {
    const auto m = toys::a_star_fast();
    auto out = speedup(m, 0);
    for (const auto& w : toys::all_words(m, 8)) {
      auto a = run(m, w, 100);
      auto b = run(out.automaton, w, 100);
      CHECK(a.verdict == b.verdict);
      CHECK(a.steps == b.steps);
    }
  }
}

TEST_CASE("a final stationary step needs ell of one") {
  CHECK_THROWS_AS(speedup(build_regular_witness(), 0), Error);
  auto out = speedup(build_regular_witness(), 1);
  for (const auto& w : toys::all_words(out.automaton, 8))
    CHECK((run(out.automaton, w, 100).verdict == Verdict::kAccept) == decide_regular_witness(toys::text(out.automaton, w)));
}

TEST_CASE("speedup drops the left end loop") {
  auto src = toys::left_end_loop();
  auto out = speedup(src, 1);
  CHECK(out.removed_left_end_loops == 1);
  const auto& m = out.automaton;
  for (const auto& t : m.transitions())
    CHECK_FALSE((t.symbol == kLeftEnd && t.move == 0 && t.to == m.initial() && t.from == m.initial()));
  CHECK(run(m, Word{}, 10).verdict == Verdict::kRejectHalt);
}

TEST_CASE("speedup of eq_ab keeps the language") {
  auto src = build_eq_ab();
  auto out = speedup(src, 1);
  CHECK(derive_reverse(out.automaton).reversible);
  for (const auto& w : toys::all_words(src, 8)) {
    auto a = run(src, w, 100);
    auto b = run(out.automaton, w, 100);
    CHECK(a.verdict == b.verdict);
    if (b.verdict == Verdict::kAccept) CHECK(b.steps <= w.size() + 2);
  }
}

TEST_CASE("product of balance checkers") {
  auto m = build_balanced(3);
  CHECK(m.counters() == 2);
  for (const char* w : {"abc", "cba", "aabbcc", ""}) CHECK(accepts(m, word(m, w)));
  for (const char* w : {"ab", "abcc", "aabbc"}) CHECK_FALSE(accepts(m, word(m, w)));
  for (const auto& w : toys::all_words(m, 6)) {
    std::size_t n[3] = {0, 0, 0};
    for (auto s : w) ++n[s - kFirstLetter];
    CHECK(accepts(m, w) == (n[0] == n[1] && n[1] == n[2]));
  }
}

TEST_CASE("product with the everything machine") {
  auto m = build_eq_ab();
  auto p = product_intersection(m, everything({"a", "b"}));
  CHECK(p.counters() == 1);
  for (const auto& w : toys::all_words(m, 8)) CHECK(accepts(p, w) == accepts(m, w));
}

TEST_CASE("product law and reversibility") {
  auto l = build_balanced(2);
  auto r = even_length();
  auto p = product_intersection(l, r);
  CHECK(derive_reverse(p).reversible);
  for (const auto& w : toys::all_words(l, 8)) CHECK(accepts(p, w) == (accepts(l, w) && accepts(r, w)));
}

TEST_CASE("product errors") {
  CHECK_THROWS_AS(product_intersection(build_eq_ab(), build_balanced(3)), Error);
  try {
    product_intersection(build_eq_ab(), toys::a_star_slow());
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kAlphabetMismatch);
  }
  auto slow = toys::a_star_slow();
  try {
    product_intersection(slow, toys::a_star_fast());
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kMoveDisagreement);
  }
}
