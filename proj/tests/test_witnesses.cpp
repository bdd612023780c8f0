#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <string>
#include <vector>

#include "revca/automaton.hpp"
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

bool accepts(const CounterAutomaton& m, const std::string& w) {
  return run(m, word(m, w), 500).verdict == Verdict::kAccept;
}

// Every word over the given letters up to length n.
std::vector<std::string> strings(const std::string& letters, std::size_t n) {
  std::vector<std::string> out{""};
  for (std::size_t from = 0; from < out.size(); ++from) {
    if (out[from].size() == n) continue;
    for (char c : letters) out.push_back(out[from] + c);
  }
  return out;
}

}  // namespace

TEST_CASE("phi") {
  CHECK(phi("ab") == "01");
  CHECK(phi("AB") == "01");
  CHECK(phi("") == "");
  CHECK_THROWS_AS(phi("a$"), Error);
}

TEST_CASE("eta") {
  CHECK(eta("11") == 3);
  CHECK(eta("0010") == 2);
  CHECK(eta("0") == 0);
  CHECK(eta("") == 0);
  CHECK(eta(std::string(70, '1')) == (BigInt(1) << 70) - 1);
  CHECK_THROWS_AS(eta("12"), Error);
}

TEST_CASE("scattered factors") {
  CHECK(scattered_factor("0101", 2, 2) == "11");
  CHECK(scattered_factor("0101", 2, 1) == "00");
  CHECK(scattered_factor("0110", 1, 1) == "0110");
  try {
    scattered_factor("010", 2, 1);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kLengthNotDivisible);
  }
}

TEST_CASE("decide_Lk examples") {
  CHECK(decide_Lk(2, "abaB$$Bb"));
  CHECK_FALSE(decide_Lk(2, "abab"));
  CHECK_FALSE(decide_Lk(2, "aaaA$A"));
  CHECK_FALSE(decide_Lk(2, "abaB$$$Bb"));
  CHECK_FALSE(decide_Lk(2, "abaB$$Bb$"));
}

TEST_CASE("decide_Lk against the split oracle") {
  for (int k : {2, 3})
    for (const auto& w : strings("abAB$", 7)) CHECK_MESSAGE(decide_Lk(k, w) == toys::lk_by_splits(k, w), w);
}

TEST_CASE("generated members") {
  CHECK(gen_Lk_member(2, 2, 2, 1).find('$') == 4);
  CHECK(gen_Lk_member(3, 1, 1, 1).find('$') == 3);
  CHECK(gen_Lk_member(3, 4, 2, 9) == gen_Lk_member(3, 4, 2, 9));
  for (std::uint64_t seed = 0; seed < 40; ++seed)
    for (int k : {2, 3})
      for (int i = 1; i <= k; ++i) {
        auto w = gen_Lk_member(k, 1 + static_cast<int>(seed % 4), i, seed);
        CHECK(decide_Lk(k, w));
        CHECK(toys::lk_by_splits(k, w));
      }
  CHECK_THROWS_AS(gen_Lk_member(1, 1, 1, 0), Error);
  CHECK_THROWS_AS(gen_Lk_member(2, 1, 3, 0), Error);
}

TEST_CASE("regular witness") {
  CHECK(decide_regular_witness("aabba"));
  CHECK_FALSE(decide_regular_witness("abbb"));
  CHECK_FALSE(decide_regular_witness("aabbb"));
  CHECK(decide_regular_witness(""));
  auto m = build_regular_witness();
  CHECK(m.counters() == 0);
  for (const auto& w : strings("ab", 12)) {
    CHECK(decide_regular_witness(w) == toys::regular_by_regex(w));
    CHECK(accepts(m, w) == toys::regular_by_regex(w));
  }
}

TEST_CASE("eq_ab") {
  auto m = build_eq_ab();
  const auto* t = m.find(*m.find_state("qa"), *m.find_symbol("b"), 1u);
  REQUIRE(t);
  CHECK(m.state_name(t->to) == "qa");
  CHECK(t->move == 1);
  CHECK(t->deltas == std::vector<int>{-1});
  CHECK(accepts(m, "abba"));
  CHECK_FALSE(accepts(m, "aab"));
}

TEST_CASE("balanced") {
  auto m3 = build_balanced(3);
  CHECK(accepts(m3, "abc"));
  CHECK(accepts(m3, "bcacab"));
  for (const auto& w : strings("abc", 7)) {
    const auto a = std::count(w.begin(), w.end(), 'a');
    const bool balanced = a == std::count(w.begin(), w.end(), 'b') && a == std::count(w.begin(), w.end(), 'c');
    CHECK(accepts(m3, w) == balanced);
  }
  auto m2 = build_balanced(2);
  auto eq = build_eq_ab();
  for (const auto& w : strings("ab", 10)) CHECK(accepts(m2, w) == accepts(eq, w));

  auto m4 = build_balanced(4);
  CHECK(m4.counters() == 3);
  CHECK(accepts(m4, ""));
  CHECK(accepts(m4, "dcba"));
  CHECK_THROWS_AS(build_balanced(1), Error);
}

TEST_CASE("balanced machines are reversible and real time") {
  for (int k = 2; k <= 4; ++k) {
    auto m = build_balanced(k);
    auto v = derive_reverse(m);
    REQUIRE(v.reversible);
    CHECK_FALSE(verify_roundtrip(m, v.table, k == 4 ? 5 : 6, 200));
    for (const auto& w : toys::all_words(m, 5)) {
      auto r = run(m, w, 200);
      if (r.verdict == Verdict::kAccept) CHECK(r.steps == w.size() + 2);
    }
  }
}
