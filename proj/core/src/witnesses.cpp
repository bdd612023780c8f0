#include "revca/witnesses.hpp"

#include <algorithm>
#include <random>

#include "revca/constructions.hpp"

namespace revca {

std::string phi(std::string_view w) {
  std::string out;
  out.reserve(w.size());
  for (char c : w) {
    switch (c) {
      case 'a':
      case 'A': out += '0'; break;
      case 'b':
      case 'B': out += '1'; break;
      default: throw Error(ErrorCode::kUnknownLetter, std::string("letter '") + c + "'");
    }
  }
  return out;
}

BigInt eta(std::string_view bits) {
  BigInt v = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw Error(ErrorCode::kUnknownDigit, std::string("bit '") + c + "'");
    v = v * 2 + (c - '0');
  }
  return v;
}

std::string scattered_factor(std::string_view bits, int k, int i) {
  if (k < 1 || i < 1 || i > k) throw Error(ErrorCode::kInvalidArgument, "need 1 <= i <= k");
  if (bits.size() % static_cast<std::size_t>(k) != 0)
    throw Error(ErrorCode::kLengthNotDivisible,
                std::to_string(bits.size()) + " is not a multiple of " + std::to_string(k));
  std::string out;
  for (std::size_t p = static_cast<std::size_t>(i - 1); p < bits.size(); p += static_cast<std::size_t>(k))
    out += bits[p];
  return out;
}

namespace {

bool plain(char c) { return c == 'a' || c == 'b'; }
bool barred(char c) { return c == 'A' || c == 'B'; }

}  // namespace

bool decide_Lk(int k, std::string_view w) {
  if (k < 2) return false;
  const auto first = w.find('$');
  if (first == std::string_view::npos) return false;
  auto last = first;
  while (last + 1 < w.size() && w[last + 1] == '$') ++last;
  if (w.find('$', last + 1) != std::string_view::npos) return false;

  const auto left = w.substr(0, first);
  const auto right = w.substr(last + 1);
  const auto dollars = static_cast<int>(last - first + 1);
  if (dollars > k) return false;
  if (left.empty() || left.size() % static_cast<std::size_t>(k) != 0) return false;
  if (!barred(left.back()) || !std::all_of(left.begin(), left.end() - 1, plain)) return false;
  if (right.empty() || !barred(right.front()) || !std::all_of(right.begin() + 1, right.end(), plain))
    return false;

  const BigInt lhs = eta(scattered_factor(phi(left), k, dollars));
  std::string rbits = phi(right);
  std::reverse(rbits.begin(), rbits.end());
  return lhs >= 1 && lhs == eta(rbits);
}

std::string gen_Lk_member(int k, int j, int i, std::uint64_t seed) {
  if (k < 2 || j < 1 || i < 1 || i > k)
    throw Error(ErrorCode::kInvalidArgument, "need k >= 2, j >= 1, 1 <= i <= k");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  const auto len = static_cast<std::size_t>(j * k);

  std::string prefix;
  BigInt value = 0;
  while (value == 0) {
    prefix.clear();
    for (std::size_t p = 0; p < len; ++p) prefix += coin(rng) ? 'b' : 'a';
    prefix.back() = prefix.back() == 'a' ? 'A' : 'B';
    value = eta(scattered_factor(phi(prefix), k, i));
  }

  // z2 v spells the value least significant bit first.
  std::string suffix;
  for (BigInt v = value; v > 0; v >>= 1) suffix += (v & 1) != 0 ? 'b' : 'a';
  std::uniform_int_distribution<int> pad(0, 2);
  suffix.append(static_cast<std::size_t>(pad(rng)), 'a');
  suffix.front() = suffix.front() == 'a' ? 'A' : 'B';
  return prefix + std::string(static_cast<std::size_t>(i), '$') + suffix;
}

bool decide_regular_witness(std::string_view w) {
  enum State { S0, A1, A2, B1, B2, Dead };
  // Rows: state; columns: a, b.
  static constexpr State delta[6][2] = {
      {A1, Dead}, {A2, B1}, {Dead, B1}, {A1, B2}, {A1, Dead}, {Dead, Dead},
  };
  State s = S0;
  for (char c : w) {
    if (c != 'a' && c != 'b') return false;
    s = delta[s][c == 'b'];
  }
  return s != Dead;
}

namespace {

// One copy of the equal-count scheme: counts x against y, skips the rest.
CounterAutomaton eq_scheme(const std::vector<std::string>& letters, const std::string& x,
                           const std::string& y) {
  CounterAutomaton m(1, 1);
  for (const auto& l : letters) m.add_token(l);
  const StateId q0 = m.add_state("q0");
  const StateId q1 = m.add_state("q1");
  const StateId qa = m.add_state("qa");
  const StateId qb = m.add_state("qb");
  const StateId qf = m.add_state("qf");
  m.set_initial(q0);
  m.set_accepting(qf);
  const Symbol sx = *m.find_symbol(x);
  const Symbol sy = *m.find_symbol(y);
  const StatusVector Z{Status::kZero};
  const StatusVector P{Status::kPositive};
  auto add = [&](StateId p, Symbol s, const StatusVector& st, StateId q, int move, int d) {
    m.add_transition(Transition{p, s, st, q, move, {d}});
  };
  add(q0, kLeftEnd, Z, q1, 1, 0);
  add(q1, sx, Z, qa, 1, 0);
  add(q1, sy, Z, qb, 1, 0);
  add(q1, kRightEnd, Z, qf, 0, 0);
  add(qa, sx, Z, qa, 1, +1);
  add(qa, sy, Z, q1, 1, 0);
  add(qa, sx, P, qa, 1, +1);
  add(qa, sy, P, qa, 1, -1);
  add(qb, sx, Z, q1, 1, 0);
  add(qb, sy, Z, qb, 1, +1);
  add(qb, sx, P, qb, 1, -1);
  add(qb, sy, P, qb, 1, +1);
  for (const auto& l : letters) {
    if (l == x || l == y) continue;
    const Symbol s = *m.find_symbol(l);
    add(q1, s, Z, q1, 1, 0);
    for (StateId q : {qa, qb}) {
      add(q, s, Z, q, 1, 0);
      add(q, s, P, q, 1, 0);
    }
  }
  return m;
}

}  // namespace

CounterAutomaton build_eq_ab() { return eq_scheme({"a", "b"}, "a", "b"); }

CounterAutomaton build_balanced(int k) {
  if (k < 2 || k > 26) throw Error(ErrorCode::kInvalidArgument, "need 2 <= k <= 26");
  std::vector<std::string> letters;
  for (int i = 0; i < k; ++i) letters.emplace_back(1, static_cast<char>('a' + i));
  CounterAutomaton m = eq_scheme(letters, letters[0], letters[1]);
  for (int i = 2; i < k; ++i)
    m = product_intersection(m, eq_scheme(letters, letters[0], letters[static_cast<std::size_t>(i)]));
  return m;
}

CounterAutomaton build_regular_witness() {
  CounterAutomaton m(0, 1);
  const Symbol a = m.add_token("a");
  const Symbol b = m.add_token("b");
  const StateId start = m.add_state("start");
  const StateId s0 = m.add_state("S0");
  const StateId a1 = m.add_state("A1");
  const StateId a2 = m.add_state("A2");
  const StateId b1 = m.add_state("B1");
  const StateId b2 = m.add_state("B2");
  const StateId done = m.add_state("accept");
  m.set_initial(start);
  m.set_accepting(done);
  auto add = [&](StateId p, Symbol s, StateId q) { m.add_transition(Transition{p, s, {}, q, 1, {}}); };
  add(start, kLeftEnd, s0);
  add(s0, a, a1);
  add(a1, a, a2);
  add(a1, b, b1);
  add(a2, b, b1);
  add(b1, a, a1);
  add(b1, b, b2);
  add(b2, a, a1);
  // A missing entry rejects, so acceptance waits for the right end.
  for (StateId s : {s0, a1, a2, b1, b2}) m.add_transition(Transition{s, kRightEnd, {}, done, 0, {}});
  return m;
}

}  // namespace revca
