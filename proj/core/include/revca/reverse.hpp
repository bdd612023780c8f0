#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "revca/automaton.hpp"

namespace revca {

struct BackwardKey {
  StateId state;
  Symbol symbol;       // the token the matching forward step read
  std::uint32_t mask;  // post-step counter statuses

  friend auto operator<=>(const BackwardKey&, const BackwardKey&) = default;
};

struct BackwardEntry {
  StateId predecessor;
  int move;  // 0 or -1
  std::vector<int> deltas;

  friend bool operator==(const BackwardEntry&, const BackwardEntry&) = default;
};

// Partial reverse transition function. Besides the keyed entries it records
// the head move used for every (state, post-status) pair, which a backward
// step needs before it can read the token.
class ReverseTable {
 public:
  explicit ReverseTable(int counters = 0) : counters_(counters) {}

  int counters() const noexcept { return counters_; }
  std::size_t size() const noexcept { return entries_.size(); }
  const std::map<BackwardKey, BackwardEntry>& entries() const noexcept { return entries_; }

  /// Inserts or checks an entry. Returns false when the key already maps to a
  /// different output or the move breaks per-(state, status) uniformity.
  bool insert(const BackwardKey& key, const BackwardEntry& entry);

  const BackwardEntry* find(StateId state, Symbol sym, std::uint32_t mask) const;
  std::optional<int> move_for(StateId state, std::uint32_t mask) const;

 private:
  int counters_;
  std::map<BackwardKey, BackwardEntry> entries_;
  std::map<std::pair<StateId, std::uint32_t>, int> moves_;
};

struct Conflict {
  BackwardKey key;
  std::size_t first;   // index into CounterAutomaton::transitions()
  std::size_t second;
  std::string reason;
};

struct ReversibilityVerdict {
  bool reversible = false;
  ReverseTable table;
  std::vector<Conflict> conflicts;
};

/// Post-step status masks a forward transition can produce.
std::vector<std::uint32_t> feasible_post_masks(const Transition& t, int counters);

/// Builds the reverse transition function of an ordinary automaton
/// (max_delta = 1); throws kExtendedDelta otherwise.
ReversibilityVerdict derive_reverse(const CounterAutomaton& m);

/// Same inversion for automata with per-step deltas in [-c, c].
ReversibilityVerdict derive_reverse_extended(const CounterAutomaton& m);

/// One backward step: move first, then read. nullopt when no entry applies.
/// Throws kNegativeResult if the table would drive a counter negative.
std::optional<Configuration> step_back(const CounterAutomaton& m, const ReverseTable& r,
                                       std::span<const Symbol> input, const Configuration& cfg);

struct RoundTripFailure {
  Word input;
  Configuration before;
  Configuration after;
  std::optional<Configuration> recovered;
};

/// Checks step_back(cfg') == cfg for every forward step cfg |- cfg' on every
/// word of length <= max_len. Returns the first failure in shortlex order.
std::optional<RoundTripFailure> verify_roundtrip(const CounterAutomaton& m, const ReverseTable& r,
                                                 std::size_t max_len, std::size_t fuel);

/// Same check over an explicit list of words.
std::optional<RoundTripFailure> verify_roundtrip_words(const CounterAutomaton& m,
                                                       const ReverseTable& r,
                                                       std::span<const Word> words,
                                                       std::size_t fuel);

struct StationaryWitness {
  Word input;
  std::size_t first_step = 0;  // index into the run's configuration sequence
  std::vector<Configuration> fragment;
};

struct QuasiRealtimeReport {
  bool ok = true;
  std::optional<StationaryWitness> witness;
  std::vector<std::string> advisories;  // static stationary cycles
};

QuasiRealtimeReport check_quasi_realtime(const CounterAutomaton& m, std::size_t ell,
                                         std::size_t max_len, std::size_t fuel);

}  // namespace revca
