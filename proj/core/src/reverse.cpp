#include "revca/reverse.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace revca {

bool ReverseTable::insert(const BackwardKey& key, const BackwardEntry& entry) {
  auto mv = moves_.find({key.state, key.mask});
  if (mv != moves_.end() && mv->second != entry.move) return false;
  auto [it, fresh] = entries_.try_emplace(key, entry);
  if (!fresh && !(it->second == entry)) return false;
  moves_[{key.state, key.mask}] = entry.move;
  return true;
}

const BackwardEntry* ReverseTable::find(StateId state, Symbol sym, std::uint32_t mask) const {
  auto it = entries_.find(BackwardKey{state, sym, mask});
  return it == entries_.end() ? nullptr : &it->second;
}

std::optional<int> ReverseTable::move_for(StateId state, std::uint32_t mask) const {
  auto it = moves_.find({state, mask});
  if (it == moves_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::uint32_t> feasible_post_masks(const Transition& t, int counters) {
  std::vector<std::uint32_t> masks{0};
  for (int i = 0; i < counters; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    const bool positive = t.status[idx] == Status::kPositive;
    const int d = t.deltas[idx];
    bool can_zero = false;
    bool can_pos = false;
    if (!positive) {
      (d == 0 ? can_zero : can_pos) = true;
    } else if (d >= 0) {
      can_pos = true;
    } else {
      can_zero = can_pos = true;
    }
    std::vector<std::uint32_t> next;
    next.reserve(masks.size() * 2);
    for (auto m : masks) {
      if (can_zero) next.push_back(m);
      if (can_pos) next.push_back(m | (1u << i));
    }
    masks = std::move(next);
  }
  return masks;
}

namespace {

ReversibilityVerdict invert(const CounterAutomaton& m) {
  ReversibilityVerdict v;
  v.table = ReverseTable(m.counters());
  std::map<BackwardKey, std::size_t> key_source;
  std::map<std::pair<StateId, std::uint32_t>, std::size_t> move_source;

  const auto& ts = m.transitions();
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const auto& t = ts[i];
    BackwardEntry entry{t.from, -t.move, {}};
    entry.deltas.reserve(t.deltas.size());
    for (int d : t.deltas) entry.deltas.push_back(-d);

    for (auto mask : feasible_post_masks(t, m.counters())) {
      BackwardKey key{t.to, t.symbol, mask};
      auto ms = move_source.find({t.to, mask});
      if (ms != move_source.end() && ts[ms->second].move != t.move) {
        v.conflicts.push_back({key, ms->second, i, "backward move not uniform"});
        continue;
      }
      auto ks = key_source.find(key);
      if (ks != key_source.end()) {
        const auto* existing = v.table.find(key.state, key.symbol, key.mask);
        if (existing && !(*existing == entry)) {
          v.conflicts.push_back({key, ks->second, i, "two distinct predecessors"});
          continue;
        }
      }
      v.table.insert(key, entry);
      key_source.try_emplace(key, i);
      move_source.try_emplace({t.to, mask}, i);
    }
  }
  v.reversible = v.conflicts.empty();
  return v;
}

}  // namespace

ReversibilityVerdict derive_reverse(const CounterAutomaton& m) {
  if (m.max_delta() > 1)
    throw Error(ErrorCode::kExtendedDelta, "max delta " + std::to_string(m.max_delta()) +
                                               "; normalize the automaton first");
  return invert(m);
}

ReversibilityVerdict derive_reverse_extended(const CounterAutomaton& m) { return invert(m); }

std::optional<Configuration> step_back(const CounterAutomaton& m, const ReverseTable& r,
                                       std::span<const Symbol> input, const Configuration& cfg) {
  if (cfg.state >= m.num_states() || cfg.head > input.size() + 1 ||
      cfg.counters.size() != static_cast<std::size_t>(m.counters()))
    throw Error(ErrorCode::kInvalidConfiguration, "configuration does not fit the automaton");
  const auto mask = status_mask(status_of(cfg.counters));
  auto move = r.move_for(cfg.state, mask);
  if (!move) return std::nullopt;
  if (*move < 0 && cfg.head == 0) return std::nullopt;
  const std::size_t head = cfg.head - static_cast<std::size_t>(-*move);
  const BackwardEntry* e = r.find(cfg.state, scanned(input, head), mask);
  if (e == nullptr) return std::nullopt;

  Configuration prev{e->predecessor, head, cfg.counters};
  for (std::size_t i = 0; i < prev.counters.size(); ++i) {
    prev.counters[i] += e->deltas[i];
    if (prev.counters[i] < 0)
      throw Error(ErrorCode::kNegativeResult,
                  "backward step drives counter " + std::to_string(i + 1) + " negative");
  }
  return prev;
}

namespace {

std::optional<RoundTripFailure> roundtrip_one(const CounterAutomaton& m, const ReverseTable& r,
                                              const Word& w, std::size_t fuel) {
  Configuration cfg = initial_configuration(m);
  for (std::size_t s = 0; s < fuel; ++s) {
    std::optional<Configuration> next;
    try {
      next = step(m, w, cfg);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kInvalidTransitionEffect) return std::nullopt;
      throw;
    }
    if (!next) return std::nullopt;
    std::optional<Configuration> back;
    try {
      back = step_back(m, r, w, *next);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNegativeResult) throw;
    }
    if (!back || !(*back == cfg)) return RoundTripFailure{w, cfg, *next, back};
    cfg = std::move(*next);
  }
  return std::nullopt;
}

}  // namespace

std::optional<RoundTripFailure> verify_roundtrip(const CounterAutomaton& m, const ReverseTable& r,
                                                 std::size_t max_len, std::size_t fuel) {
  std::optional<RoundTripFailure> failure;
  for_each_word(m.alphabet().size(), max_len, [&](const Word& w) {
    failure = roundtrip_one(m, r, w, fuel);
    return !failure;
  });
  return failure;
}

std::optional<RoundTripFailure> verify_roundtrip_words(const CounterAutomaton& m,
                                                       const ReverseTable& r,
                                                       std::span<const Word> words,
                                                       std::size_t fuel) {
  for (const auto& w : words)
    if (auto f = roundtrip_one(m, r, w, fuel)) return f;
  return std::nullopt;
}

namespace {

// Cycles among stationary transitions, over (state, token, status) nodes.
std::vector<std::string> stationary_cycles(const CounterAutomaton& m) {
  struct Node {
    StateId state;
    Symbol symbol;
    std::uint32_t mask;
    auto operator<=>(const Node&) const = default;
  };
  std::map<Node, std::vector<Node>> edges;
  for (const auto& t : m.transitions()) {
    if (t.move != 0) continue;
    Node from{t.from, t.symbol, status_mask(t.status)};
    for (auto mask : feasible_post_masks(t, m.counters()))
      if (m.find(t.to, t.symbol, mask)) edges[from].push_back(Node{t.to, t.symbol, mask});
  }

  std::vector<std::string> out;
  std::map<Node, int> color;  // 0 white, 1 on stack, 2 done
  std::function<void(const Node&)> dfs = [&](const Node& n) {
    color[n] = 1;
    for (const auto& next : edges[n]) {
      const auto* nt = m.find(next.state, next.symbol, next.mask);
      if (nt == nullptr || nt->move != 0) continue;
      int c = color[next];
      if (c == 1) {
        std::ostringstream os;
        os << "ADVISORY stationary cycle through (" << m.state_name(next.state) << ", "
           << m.symbol_text(next.symbol) << ", mask " << next.mask << ")";
        out.push_back(os.str());
      } else if (c == 0) {
        dfs(next);
      }
    }
    color[n] = 2;
  };
  for (const auto& [node, _] : edges)
    if (color[node] == 0) dfs(node);
  return out;
}

}  // namespace

QuasiRealtimeReport check_quasi_realtime(const CounterAutomaton& m, std::size_t ell,
                                         std::size_t max_len, std::size_t fuel) {
  QuasiRealtimeReport report;
  report.advisories = stationary_cycles(m);

  for_each_word(m.alphabet().size(), max_len, [&](const Word& w) {
    auto out = run(m, w, fuel, /*capture_trace=*/true);
    if (out.verdict != Verdict::kAccept) return true;
    std::size_t streak = 0;
    for (std::size_t i = 1; i < out.trace.size(); ++i) {
      streak = out.trace[i].head == out.trace[i - 1].head ? streak + 1 : 0;
      if (streak > ell) {
        StationaryWitness wit;
        wit.input = w;
        wit.first_step = i - streak;
        wit.fragment.assign(out.trace.begin() + static_cast<std::ptrdiff_t>(i - streak),
                            out.trace.begin() + static_cast<std::ptrdiff_t>(i + 1));
        report.ok = false;
        report.witness = std::move(wit);
        return false;
      }
    }
    return true;
  });
  return report;
}

}  // namespace revca
