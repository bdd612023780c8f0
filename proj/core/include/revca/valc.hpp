#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "revca/automaton.hpp"
#include "revca/mcm.hpp"

namespace revca {

struct ValcToken {
  enum class Kind { kA, kAMarked, kPrefix, kLead, kTrail };
  Kind kind = Kind::kA;
  std::string state;  // lead and trail only
  Multiplicand ell;   // lead and trail only
  int phi = 0;        // trail only

  friend bool operator==(const ValcToken&, const ValcToken&) = default;
};

using ValcWord = std::vector<ValcToken>;

// a, a', [q0'], [q|l=m], [q|l=m|p=r]
std::string to_string(const ValcToken& t);
std::optional<ValcToken> parse_valc_token(std::string_view text);
std::vector<std::string> valc_texts(const ValcWord& w);
std::string join(const ValcWord& w);

std::string lead_token(std::string_view state, const Multiplicand& ell);
std::string trail_token(std::string_view state, const Multiplicand& ell, int phi);

/// Name of the extra state used when the configuration count is odd.
std::string primed_final(const McmMachine& m);

/// Modified computation history of m started from 2^i.
/// Throws kNotAccepting when the final state is not reached within fuel steps.
ValcWord valc_encode(const McmMachine& m, std::size_t i, std::size_t fuel);

/// The token alphabet shared by every acceptor built for m.
std::vector<std::string> valc_alphabet(const McmMachine& m);

/// One-counter acceptors before the speed-up; at most six consecutive
/// stationary moves. Part 1 checks successors of configurations at odd
/// positions, part 2 those at even positions.
CounterAutomaton build_valc_part_quasi(const McmMachine& m, int part);

CounterAutomaton build_valc1(const McmMachine& m);
CounterAutomaton build_valc2(const McmMachine& m);
/// Two-counter product of both parts.
CounterAutomaton build_valc(const McmMachine& m);

inline constexpr std::size_t kValcStationaryBudget = 6;

}  // namespace revca
