#include "revca/constructions.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>
#include <unordered_map>

namespace revca {

ResidueStep split_residue(int residue, int delta, int modulus) {
  const int v = residue + delta;
  if (v < 0) return {v + modulus, -1};
  if (v > modulus - 1) return {v - modulus, 1};
  return {v, 0};
}

std::string moded_state_name(const std::string& base, const std::vector<int>& residues) {
  if (residues.empty()) return base;
  std::string out = base + "@";
  for (std::size_t i = 0; i < residues.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(residues[i]);
  }
  return out;
}

namespace {

std::size_t ipow(std::size_t base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

std::vector<int> residues_of(std::size_t code, int k, int modulus) {
  std::vector<int> r(static_cast<std::size_t>(k));
  for (int i = k - 1; i >= 0; --i) {
    r[static_cast<std::size_t>(i)] = static_cast<int>(code % static_cast<std::size_t>(modulus));
    code /= static_cast<std::size_t>(modulus);
  }
  return r;
}

std::size_t code_of(const std::vector<int>& residues, int modulus) {
  std::size_t code = 0;
  for (int r : residues) code = code * static_cast<std::size_t>(modulus) + static_cast<std::size_t>(r);
  return code;
}

// Q x {0..c-1}^k with the initial state at residue 0 and F x residues.
struct Skeleton {
  CounterAutomaton automaton;
  std::vector<ModedState> states;
  std::size_t per_base;

  StateId id(StateId base, std::size_t code) const { return static_cast<StateId>(base * per_base + code); }
};

Skeleton moded_skeleton(const CounterAutomaton& m, int modulus) {
  const int k = m.counters();
  Skeleton sk{CounterAutomaton(k, 1), {}, ipow(static_cast<std::size_t>(modulus), k)};
  for (const auto& tok : m.alphabet()) sk.automaton.add_token(tok);
  for (StateId q = 0; q < m.num_states(); ++q) {
    for (std::size_t code = 0; code < sk.per_base; ++code) {
      auto res = residues_of(code, k, modulus);
      StateId id = sk.automaton.add_state(moded_state_name(m.state_name(q), res));
      if (m.is_accepting(q)) sk.automaton.set_accepting(id);
      sk.states.push_back({q, std::move(res)});
    }
  }
  sk.automaton.set_initial(sk.id(m.initial(), 0));
  return sk;
}

// Original status of counter i given the residue and the status of the
// quotient counter: zero iff both are zero.
bool lifted_positive(int residue, bool quotient_positive) {
  return residue != 0 || quotient_positive;
}

}  // namespace

NormalizedAutomaton normalize_with_modulus(const CounterAutomaton& m, int modulus,
                                           const ReverseTable* source_reverse) {
  if (modulus < m.max_delta())
    throw Error(ErrorCode::kInvalidArgument, "modulus smaller than max delta");
  const int k = m.counters();
  auto sk = moded_skeleton(m, modulus);
  const std::uint32_t mask_count = 1u << k;

  for (const auto& t : m.transitions()) {
    const auto source_mask = status_mask(t.status);
    for (std::size_t code = 0; code < sk.per_base; ++code) {
      const auto& res = sk.states[sk.id(t.from, code)].residues;
      for (std::uint32_t mask = 0; mask < mask_count; ++mask) {
        bool matches = true;
        std::vector<int> next_res(static_cast<std::size_t>(k));
        std::vector<int> carry(static_cast<std::size_t>(k));
        for (int i = 0; i < k && matches; ++i) {
          const auto idx = static_cast<std::size_t>(i);
          const bool qpos = mask & (1u << i);
          if (lifted_positive(res[idx], qpos) != bool(source_mask & (1u << i))) matches = false;
          auto st = split_residue(res[idx], t.deltas[idx], modulus);
          if (!qpos && st.carry < 0) matches = false;  // source would go negative here
          next_res[idx] = st.residue;
          carry[idx] = st.carry;
        }
        if (!matches) continue;
        sk.automaton.add_transition(Transition{
            sk.id(t.from, code), t.symbol, status_from_mask(mask, k), sk.id(t.to, code_of(next_res, modulus)),
            t.move,
            std::move(carry)});
      }
    }
  }

  NormalizedAutomaton out{std::move(sk.automaton), std::move(sk.states), std::nullopt, modulus};
  if (source_reverse == nullptr) return out;

  // Mirrored case table: the backward deltas are applied to the residue of
  // the post-step state.
  ReverseTable rev(k);
  for (const auto& [key, entry] : source_reverse->entries()) {
    for (std::size_t code = 0; code < sk.per_base; ++code) {
      const auto& res = out.states[sk.id(key.state, code)].residues;
      for (std::uint32_t mask = 0; mask < mask_count; ++mask) {
        bool matches = true;
        std::vector<int> prev_res(static_cast<std::size_t>(k));
        std::vector<int> carry(static_cast<std::size_t>(k));
        for (int i = 0; i < k && matches; ++i) {
          const auto idx = static_cast<std::size_t>(i);
          const bool qpos = mask & (1u << i);
          if (lifted_positive(res[idx], qpos) != bool(key.mask & (1u << i))) matches = false;
          auto st = split_residue(res[idx], entry.deltas[idx], modulus);
          if (!qpos && st.carry < 0) matches = false;
          prev_res[idx] = st.residue;
          carry[idx] = st.carry;
        }
        if (!matches) continue;
        BackwardKey nk{sk.id(key.state, code), key.symbol, mask};
        BackwardEntry ne{sk.id(entry.predecessor, code_of(prev_res, modulus)), entry.move, std::move(carry)};
        if (!rev.insert(nk, ne))
          throw Error(ErrorCode::kInvalidArgument, "source reverse table is not a function");
      }
    }
  }
  out.reverse = std::move(rev);
  return out;
}

NormalizedAutomaton normalize_extended(const CounterAutomaton& m, const ReverseTable* source_reverse) {
  return normalize_with_modulus(m, m.max_delta(), source_reverse);
}

SpeedupResult speedup(const CounterAutomaton& m, std::size_t ell) {
  if (m.max_delta() != 1)
    throw Error(ErrorCode::kExtendedDelta, "speedup expects an ordinary automaton");
  const int k = m.counters();
  const int modulus = static_cast<int>(ell) + 1;
  // Macro-steps begin right after a moving step, so states entered only by
  // stationary moves never start one; they stay as halting targets.
  std::vector<bool> starts(m.num_states(), false);
  starts[m.initial()] = true;
  for (const auto& t : m.transitions())
    if (t.move == 1) starts[t.to] = true;
  auto sk = moded_skeleton(m, modulus);
  SpeedupResult result{CounterAutomaton(k, 1), 0, 0, 0, {}};
  const std::uint32_t mask_count = 1u << k;
  const Configuration start = initial_configuration(m);

  // One-token tapes: the head sits on the seed symbol.
  const Word empty;
  std::vector<Word> letter_tape(m.num_symbols());
  for (Symbol s = kFirstLetter; s < m.num_symbols(); ++s) letter_tape[s] = Word{s};

  for (StateId q = 0; q < m.num_states(); ++q) {
    if (!starts[q]) continue;
    for (std::size_t code = 0; code < sk.per_base; ++code) {
      const auto& res = sk.states[sk.id(q, code)].residues;
      for (Symbol sym = 0; sym < m.num_symbols(); ++sym) {
        const Word& tape = (sym == kLeftEnd || sym == kRightEnd) ? empty : letter_tape[sym];
        const std::size_t head = sym == kLeftEnd ? 0 : 1;
        for (std::uint32_t mask = 0; mask < mask_count; ++mask) {
          // Exact value below the modulus, a representative above it: no zero
          // test inside a macro-step can tell the two apart.
          Configuration cfg{q, head, std::vector<std::int64_t>(static_cast<std::size_t>(k))};
          for (int i = 0; i < k; ++i)
            cfg.counters[static_cast<std::size_t>(i)] =
                res[static_cast<std::size_t>(i)] + ((mask & (1u << i)) ? modulus : 0);
          const auto seed_values = cfg.counters;

          int move = -1;  // -1: no macro-step
          bool dropped = false;
          int steps = 0;
          for (; steps < modulus; ++steps) {
            auto next = step(m, tape, cfg);
            if (!next) {
              if (steps > 0) move = 0;
              break;
            }
            if (sym == kLeftEnd && *next == start) {
              dropped = true;
              break;
            }
            const bool moved = next->head != cfg.head;
            cfg = std::move(*next);
            if (moved) {
              move = 1;
              ++steps;
              break;
            }
          }
          if (dropped) {
            ++result.removed_left_end_loops;
            result.notes.push_back("removed stationary left-end loop from " +
                                   sk.automaton.state_name(sk.id(q, code)));
            continue;
          }
          if (move < 0 && steps == modulus) {
            std::ostringstream os;
            os << "more than " << ell << " stationary moves from state " << m.state_name(q)
               << " on " << m.symbol_text(sym);
            throw Error(ErrorCode::kNotQuasiRealtime, os.str());
          }
          if (move < 0) continue;

          std::vector<int> next_res(static_cast<std::size_t>(k));
          std::vector<int> carry(static_cast<std::size_t>(k));
          for (int i = 0; i < k; ++i) {
            const auto idx = static_cast<std::size_t>(i);
            const int j = static_cast<int>(cfg.counters[idx] - seed_values[idx]);
            auto st = split_residue(res[idx], j, modulus);
            next_res[idx] = st.residue;
            carry[idx] = st.carry;
          }
          sk.automaton.add_transition(Transition{
              sk.id(q, code), sym, status_from_mask(mask, k), sk.id(cfg.state, code_of(next_res, modulus)), move,
              std::move(carry)});
          ++result.macro_steps;
          if (move == 0) {
            ++result.halting_macro_steps;
            if (sym == kLeftEnd)
              result.notes.push_back("halting macro-step on the left endmarker from " +
                                     sk.automaton.state_name(sk.id(q, code)));
          }
        }
      }
    }
  }
  result.automaton = std::move(sk.automaton);
  return result;
}

CounterAutomaton product_intersection(const CounterAutomaton& left, const CounterAutomaton& right) {
  {
    auto a = left.alphabet();
    auto b = right.alphabet();
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) throw Error(ErrorCode::kAlphabetMismatch, "factor alphabets differ");
  }
  const int k1 = left.counters();
  const int k2 = right.counters();
  CounterAutomaton out(k1 + k2, std::max(left.max_delta(), right.max_delta()));
  for (const auto& tok : left.alphabet()) out.add_token(tok);

  // Right-factor symbols renumbered into the left factor's order.
  std::vector<Symbol> to_left(right.num_symbols());
  to_left[kLeftEnd] = kLeftEnd;
  to_left[kRightEnd] = kRightEnd;
  for (Symbol s = kFirstLetter; s < right.num_symbols(); ++s)
    to_left[s] = *left.find_symbol(right.symbol_text(s));

  auto by_state = [](const CounterAutomaton& m, const std::vector<Symbol>* remap) {
    std::vector<std::vector<std::size_t>> idx(m.num_states());
    const auto& ts = m.transitions();
    for (std::size_t i = 0; i < ts.size(); ++i) idx[ts[i].from].push_back(i);
    for (auto& v : idx)
      std::stable_sort(v.begin(), v.end(), [&](std::size_t a, std::size_t b) {
        auto sa = remap ? (*remap)[ts[a].symbol] : ts[a].symbol;
        auto sb = remap ? (*remap)[ts[b].symbol] : ts[b].symbol;
        return sa < sb;
      });
    return idx;
  };
  const auto left_idx = by_state(left, nullptr);
  const auto right_idx = by_state(right, &to_left);

  std::map<std::pair<StateId, StateId>, StateId> ids;
  std::deque<std::pair<StateId, StateId>> queue;
  auto intern = [&](StateId a, StateId b) {
    auto [it, fresh] = ids.try_emplace({a, b}, 0);
    if (fresh) {
      it->second = out.add_state(left.state_name(a) + "&" + right.state_name(b));
      if (left.is_accepting(a) && right.is_accepting(b)) out.set_accepting(it->second);
      queue.emplace_back(a, b);
    }
    return it->second;
  };
  out.set_initial(intern(left.initial(), right.initial()));

  while (!queue.empty()) {
    auto [a, b] = queue.front();
    queue.pop_front();
    const StateId from = ids.at({a, b});
    const auto& la = left_idx[a];
    const auto& rb = right_idx[b];
    std::size_t j0 = 0;
    for (std::size_t i = 0; i < la.size(); ++i) {
      const auto& t1 = left.transitions()[la[i]];
      while (j0 < rb.size() && to_left[right.transitions()[rb[j0]].symbol] < t1.symbol) ++j0;
      for (std::size_t j = j0; j < rb.size(); ++j) {
        const auto& t2 = right.transitions()[rb[j]];
        if (to_left[t2.symbol] != t1.symbol) break;
        if (t1.move != t2.move) {
          std::ostringstream os;
          os << "(" << left.state_name(t1.from) << ", " << left.symbol_text(t1.symbol) << ") moves "
             << t1.move << " but (" << right.state_name(t2.from) << ", "
             << right.symbol_text(t2.symbol) << ") moves " << t2.move;
          throw Error(ErrorCode::kMoveDisagreement, os.str());
        }
        Transition t;
        t.from = from;
        t.symbol = t1.symbol;
        t.status = t1.status;
        t.status.insert(t.status.end(), t2.status.begin(), t2.status.end());
        t.move = t1.move;
        t.deltas = t1.deltas;
        t.deltas.insert(t.deltas.end(), t2.deltas.begin(), t2.deltas.end());
        t.to = intern(t1.to, t2.to);
        out.add_transition(std::move(t));
      }
    }
  }
  return out;
}

}  // namespace revca
