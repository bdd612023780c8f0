#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "revca/witnesses.hpp"

namespace revca {

// One of 2, 3, 5, 7, 1/2, 1/3, 1/5, 1/7 (and 1 where a superscript needs it).
struct Multiplicand {
  int num = 1;
  int den = 1;
  friend bool operator==(const Multiplicand&, const Multiplicand&) = default;
};

std::optional<Multiplicand> parse_multiplicand(std::string_view text);
std::string to_string(const Multiplicand& m);
bool is_rule_multiplicand(const Multiplicand& m);

struct McmRule {
  std::string q;
  Multiplicand k;
  std::string p;  // next state when k*n is an integer
  std::string r;  // next state otherwise
  friend bool operator==(const McmRule&, const McmRule&) = default;
};

struct McmMachine {
  std::vector<std::string> states;
  std::string initial;
  std::string final_state;
  std::vector<McmRule> rules;

  const McmRule* rule_for(std::string_view state) const;
  bool has_state(std::string_view state) const;
  /// Throws kValidation on unknown states, repeated first components, a
  /// rule leaving the final state or entering the initial state.
  void validate() const;

  friend bool operator==(const McmMachine&, const McmMachine&) = default;
};

struct McmConfig {
  std::string state;
  BigInt n;
  friend bool operator==(const McmConfig&, const McmConfig&) = default;
};

/// Successor configuration, or nullopt when the state has no rule.
std::optional<McmConfig> mcm_step(const McmMachine& m, const McmConfig& cfg);

enum class McmOutcome { kHaltedFinal, kHaltedStuck, kFuelExhausted };
const char* to_string(McmOutcome o);

struct McmTrace {
  McmOutcome outcome = McmOutcome::kHaltedStuck;
  std::vector<McmConfig> configs;
};

/// Runs from (q0, 2^i) for at most `fuel` steps.
McmTrace mcm_run(const McmMachine& m, std::size_t i, std::size_t fuel);

/// x1 + 3 x2 + 9 x3 + ... over digits 1 and 2. Throws kUnknownDigit.
BigInt encode_string(std::string_view x);

/// q0 -2-> q1 -1/2-> q2 -1/3-> q3 -1/2-> q4 -1/5-> qf, with a stuck state qd
/// on the unused branches.
McmMachine mcm_example_machine();

/// The single rule (q0, 2, qf, qf).
McmMachine mcm_doubler_machine();

}  // namespace revca
