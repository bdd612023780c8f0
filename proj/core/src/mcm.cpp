#include "revca/mcm.hpp"

#include <algorithm>
#include <set>

namespace revca {

std::optional<Multiplicand> parse_multiplicand(std::string_view text) {
  static const std::pair<std::string_view, Multiplicand> table[] = {
      {"1", {1, 1}},   {"2", {2, 1}},   {"3", {3, 1}},   {"5", {5, 1}},   {"7", {7, 1}},
      {"1/2", {1, 2}}, {"1/3", {1, 3}}, {"1/5", {1, 5}}, {"1/7", {1, 7}},
  };
  for (const auto& [t, m] : table)
    if (t == text) return m;
  return std::nullopt;
}

std::string to_string(const Multiplicand& m) {
  return m.den == 1 ? std::to_string(m.num) : std::to_string(m.num) + "/" + std::to_string(m.den);
}

bool is_rule_multiplicand(const Multiplicand& m) {
  return !(m.num == 1 && m.den == 1) && parse_multiplicand(to_string(m)).has_value();
}

const McmRule* McmMachine::rule_for(std::string_view state) const {
  for (const auto& r : rules)
    if (r.q == state) return &r;
  return nullptr;
}

bool McmMachine::has_state(std::string_view state) const {
  return std::find(states.begin(), states.end(), state) != states.end();
}

void McmMachine::validate() const {
  if (!has_state(initial)) throw Error(ErrorCode::kValidation, "initial state " + initial + " not declared");
  if (!has_state(final_state))
    throw Error(ErrorCode::kValidation, "final state " + final_state + " not declared");
  if (initial == final_state) throw Error(ErrorCode::kValidation, "initial and final state coincide");
  std::set<std::string> seen;
  for (const auto& r : rules) {
    for (const auto* s : {&r.q, &r.p, &r.r})
      if (!has_state(*s)) throw Error(ErrorCode::kValidation, "unknown state " + *s);
    if (!is_rule_multiplicand(r.k)) throw Error(ErrorCode::kValidation, "bad multiplicand " + to_string(r.k));
    if (!seen.insert(r.q).second) throw Error(ErrorCode::kValidation, "two rules for state " + r.q);
    if (r.q == final_state) throw Error(ErrorCode::kValidation, "rule leaves the final state");
    if (r.p == initial || r.r == initial) throw Error(ErrorCode::kValidation, "rule enters the initial state");
  }
}

std::optional<McmConfig> mcm_step(const McmMachine& m, const McmConfig& cfg) {
  const McmRule* rule = m.rule_for(cfg.state);
  if (rule == nullptr) return std::nullopt;
  const BigInt scaled = cfg.n * rule->k.num;
  if (scaled % rule->k.den == 0) return McmConfig{rule->p, scaled / rule->k.den};
  return McmConfig{rule->r, cfg.n};
}

const char* to_string(McmOutcome o) {
  switch (o) {
    case McmOutcome::kHaltedFinal: return "HALTED_FINAL";
    case McmOutcome::kHaltedStuck: return "HALTED_STUCK";
    case McmOutcome::kFuelExhausted: return "FUEL_EXHAUSTED";
  }
  return "?";
}

McmTrace mcm_run(const McmMachine& m, std::size_t i, std::size_t fuel) {
  McmTrace t;
  t.configs.push_back(McmConfig{m.initial, BigInt(1) << i});
  for (std::size_t s = 0;; ++s) {
    const auto& cur = t.configs.back();
    if (cur.state == m.final_state) {
      t.outcome = McmOutcome::kHaltedFinal;
      return t;
    }
    if (m.rule_for(cur.state) == nullptr) {
      t.outcome = McmOutcome::kHaltedStuck;
      return t;
    }
    if (s == fuel) {
      t.outcome = McmOutcome::kFuelExhausted;
      return t;
    }
    auto next = mcm_step(m, cur);
    t.configs.push_back(std::move(*next));
  }
}

BigInt encode_string(std::string_view x) {
  BigInt value = 0;
  BigInt weight = 1;
  for (char c : x) {
    if (c != '1' && c != '2') throw Error(ErrorCode::kUnknownDigit, std::string("digit '") + c + "'");
    value += weight * (c - '0');
    weight *= 3;
  }
  return value;
}

McmMachine mcm_example_machine() {
  McmMachine m;
  m.states = {"q0", "q1", "q2", "q3", "q4", "qf", "qd"};
  m.initial = "q0";
  m.final_state = "qf";
  m.rules = {
      {"q0", {2, 1}, "q1", "qd"}, {"q1", {1, 2}, "q2", "qd"}, {"q2", {1, 3}, "qd", "q3"},
      {"q3", {1, 2}, "q4", "qd"}, {"q4", {1, 5}, "qd", "qf"},
  };
  return m;
}

McmMachine mcm_doubler_machine() {
  McmMachine m;
  m.states = {"q0", "qf"};
  m.initial = "q0";
  m.final_state = "qf";
  m.rules = {{"q0", {2, 1}, "qf", "qf"}};
  return m;
}

}  // namespace revca
