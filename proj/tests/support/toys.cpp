#include "toys.hpp"

#include <map>
#include <regex>
#include <set>

#include "revca/reverse.hpp"
#include "revca/valc.hpp"

namespace toys {

using namespace revca;

namespace {

CounterAutomaton copy_header(const CounterAutomaton& m, int max_delta) {
  CounterAutomaton out(m.counters(), max_delta);
  for (const auto& t : m.alphabet()) out.add_token(t);
  for (StateId s = 0; s < m.num_states(); ++s) {
    out.add_state(m.state_name(s));
    out.set_accepting(s, m.is_accepting(s));
  }
  out.set_initial(m.initial());
  return out;
}

}  // namespace

CounterAutomaton a_star_slow() {
  CounterAutomaton m(1, 1);
  const Symbol a = m.add_token("a");
  const StateId s = m.add_state("s");
  const StateId r = m.add_state("r");
  const StateId p = m.add_state("p");
  const StateId f = m.add_state("f");
  m.set_initial(s);
  m.set_accepting(f);
  const StatusVector Z{Status::kZero}, P{Status::kPositive};
  m.add_transition({s, kLeftEnd, Z, r, 1, {0}});
  m.add_transition({r, a, Z, p, 0, {1}});
  m.add_transition({r, a, P, p, 0, {1}});
  m.add_transition({p, a, P, r, 1, {1}});
  m.add_transition({r, kRightEnd, Z, f, 0, {0}});
  m.add_transition({r, kRightEnd, P, f, 0, {0}});
  return m;
}

CounterAutomaton stretch(const CounterAutomaton& m) {
  CounterAutomaton out = copy_header(m, m.max_delta());
  std::map<std::string, StateId> mids;
  std::set<std::pair<StateId, std::uint32_t>> done;
  for (const auto& t : m.transitions()) {
    bool changes = false;
    for (int d : t.deltas) changes |= d != 0;
    if (t.move == 0 || !changes) {
      out.add_transition(t);
      continue;
    }
    std::string name = "mid:" + m.state_name(t.to) + ":" + m.symbol_text(t.symbol) + ":";
    for (int d : t.deltas) name += std::to_string(d) + ",";
    auto it = mids.find(name);
    if (it == mids.end()) it = mids.emplace(name, out.add_state(name)).first;
    const StateId mid = it->second;
    out.add_transition({t.from, t.symbol, t.status, mid, 0, t.deltas});
    for (auto mask : feasible_post_masks(t, m.counters()))
      if (done.insert({mid, mask}).second)
        out.add_transition({mid, t.symbol, status_from_mask(mask, m.counters()), t.to, 1,
                            std::vector<int>(static_cast<std::size_t>(m.counters()), 0)});
  }
  return out;
}

CounterAutomaton pad(const CounterAutomaton& m, int n) {
  CounterAutomaton out = copy_header(m, m.max_delta());
  const std::vector<int> zero(static_cast<std::size_t>(m.counters()), 0);
  // Transitions that differ only in the tested status share one chain.
  std::map<std::string, StateId> chain;
  for (const auto& t : m.transitions()) {
    if (t.move == 0 || n == 0) {
      out.add_transition(t);
      continue;
    }
    std::string key = "pad:" + m.state_name(t.from) + ":" + m.symbol_text(t.symbol) + ":" + m.state_name(t.to) + ":";
    for (int d : t.deltas) key += std::to_string(d) + ",";
    StateId prev = t.from;
    for (int j = 1; j <= n; ++j) {
      const std::string name = key + std::to_string(j);
      auto it = chain.find(name);
      if (it == chain.end()) it = chain.emplace(name, out.add_state(name)).first;
      out.add_transition({prev, t.symbol, t.status, it->second, 0, zero});
      prev = it->second;
    }
    out.add_transition({prev, t.symbol, t.status, t.to, 1, t.deltas});
  }
  return out;
}

CounterAutomaton left_end_loop() {
  CounterAutomaton m(1, 1);
  m.add_token("a");
  const StateId q0 = m.add_state("q0");
  m.set_initial(q0);
  m.add_transition({q0, kLeftEnd, {Status::kZero}, q0, 0, {0}});
  return m;
}

CounterAutomaton a_star_fast() {
  CounterAutomaton m(0, 1);
  const Symbol a = m.add_token("a");
  const StateId s = m.add_state("s");
  const StateId r = m.add_state("r");
  m.set_initial(s);
  m.set_accepting(r);
  m.add_transition({s, kLeftEnd, {}, r, 1, {}});
  m.add_transition({r, a, {}, r, 1, {}});
  return m;
}

CounterAutomaton scaled(const CounterAutomaton& m, int c) {
  CounterAutomaton out = copy_header(m, c);
  for (auto t : m.transitions()) {
    for (int& d : t.deltas) d *= c;
    out.add_transition(std::move(t));
  }
  return out;
}

CounterAutomaton random_extended(std::mt19937_64& rng, int k, int c, int states) {
  CounterAutomaton m(k, c);
  m.add_token("a");
  m.add_token("b");
  std::bernoulli_distribution accept(0.4), present(0.75), moves(0.85);
  std::uniform_int_distribution<int> pick(0, states - 1), any(-c, c), up(0, c);
  for (int s = 0; s < states; ++s) {
    const StateId id = m.add_state("s" + std::to_string(s));
    m.set_accepting(id, accept(rng));
  }
  m.set_initial(0);
  for (StateId p = 0; p < m.num_states(); ++p)
    for (Symbol sym = 0; sym < m.num_symbols(); ++sym)
      for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
        if (!present(rng)) continue;
        Transition t{p, sym, status_from_mask(mask, k), static_cast<StateId>(pick(rng)), 0, {}};
        t.move = sym == kRightEnd ? 0 : (moves(rng) ? 1 : 0);
        for (int i = 0; i < k; ++i) t.deltas.push_back((mask & (1u << i)) ? any(rng) : up(rng));
        m.add_transition(std::move(t));
      }
  return m;
}

std::vector<Word> all_words(const CounterAutomaton& m, std::size_t max_len) {
  std::vector<Word> out;
  for_each_word(m.alphabet().size(), max_len, [&](const Word& w) {
    out.push_back(w);
    return true;
  });
  return out;
}

std::string text(const CounterAutomaton& m, const Word& w) {
  std::string out;
  for (const auto& t : m.decode(w)) out += t;
  return out;
}

bool lk_by_splits(int k, const std::string& w) {
  auto plain = [](char c) { return c == 'a' || c == 'b'; };
  auto barred = [](char c) { return c == 'A' || c == 'B'; };
  auto bit = [](char c) { return c == 'b' || c == 'B' ? 1u : 0u; };
  const std::size_t n = w.size();
  for (std::size_t s1 = 0; s1 < n; ++s1) {  // u = w[0, s1), z1 = w[s1]
    if ((s1 + 1) % static_cast<std::size_t>(k) != 0) continue;
    for (int i = 1; i <= k; ++i) {
      const std::size_t s2 = s1 + 1 + static_cast<std::size_t>(i);  // z2 = w[s2]
      if (s2 >= n) break;
      bool ok = barred(w[s1]) && barred(w[s2]);
      for (std::size_t p = 0; p < s1 && ok; ++p) ok = plain(w[p]);
      for (std::size_t p = s1 + 1; p < s2 && ok; ++p) ok = w[p] == '$';
      for (std::size_t p = s2 + 1; p < n && ok; ++p) ok = plain(w[p]);
      if (!ok) continue;
      std::uint64_t left = 0;
      for (std::size_t p = static_cast<std::size_t>(i - 1); p <= s1; p += static_cast<std::size_t>(k))
        left = left * 2 + bit(w[p]);
      // Reversed z2 v read most significant first is z2 v read least significant first.
      std::uint64_t right = 0;
      for (std::size_t p = s2; p < n; ++p) right |= std::uint64_t{bit(w[p])} << (p - s2);
      if (left >= 1 && left == right) return true;
    }
  }
  return false;
}

bool regular_by_regex(const std::string& w) {
  static const std::regex re("((aa|a)(bb|b))*(aa|a)?");
  return std::regex_match(w, re);
}

bool valc_by_encoding(const McmMachine& m, const std::vector<std::string>& tokens) {
  std::size_t prefix_marks = 0;
  for (const auto& t : tokens) prefix_marks += t == "[q0']";
  if (prefix_marks % 2 != 0) return false;
  try {
    return valc_texts(valc_encode(m, prefix_marks / 2, tokens.size() + 2)) == tokens;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace toys
