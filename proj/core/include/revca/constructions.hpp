#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "revca/automaton.hpp"
#include "revca/reverse.hpp"

namespace revca {

/// A counter value x is carried as (x / c) on the counter plus (x mod c) in
/// the state. Given the residue and a per-step change, returns the new
/// residue and the carry (-1, 0 or +1) applied to the counter.
struct ResidueStep {
  int residue;
  int carry;
  friend bool operator==(const ResidueStep&, const ResidueStep&) = default;
};
ResidueStep split_residue(int residue, int delta, int modulus);

struct ModedState {
  StateId base;
  std::vector<int> residues;
};

/// "q@1,0" style name of a moded state; plain base name when k = 0.
std::string moded_state_name(const std::string& base, const std::vector<int>& residues);

struct NormalizedAutomaton {
  CounterAutomaton automaton;
  std::vector<ModedState> states;       // indexed by the new StateId
  std::optional<ReverseTable> reverse;  // set when a source table was given
  int modulus = 1;
};

/// Replaces per-step deltas in [-c, c] by deltas in [-1, 1], keeping the
/// residues in the state. Step counts are preserved one-for-one. When the
/// source reverse table is supplied the mirrored construction is emitted too.
NormalizedAutomaton normalize_extended(const CounterAutomaton& m,
                                       const ReverseTable* source_reverse = nullptr);

/// Same construction with an explicit modulus >= max_delta.
NormalizedAutomaton normalize_with_modulus(const CounterAutomaton& m, int modulus,
                                           const ReverseTable* source_reverse = nullptr);

struct SpeedupResult {
  CounterAutomaton automaton;
  std::size_t macro_steps = 0;
  std::size_t halting_macro_steps = 0;
  std::size_t removed_left_end_loops = 0;
  std::vector<std::string> notes;
};

/// Turns a quasi-real-time automaton with at most `ell` consecutive
/// stationary moves into a real-time one. Throws kNotQuasiRealtime when some
/// macro-step has not moved or halted after ell + 1 steps.
SpeedupResult speedup(const CounterAutomaton& m, std::size_t ell);

/// Lockstep product over a common alphabet; accepting set F1 x F2. Only
/// state pairs reachable from the initial pair are built.
CounterAutomaton product_intersection(const CounterAutomaton& left, const CounterAutomaton& right);

}  // namespace revca
