#pragma once

#include <string>
#include <string_view>

#include "revca/automaton.hpp"
#include "revca/mcm.hpp"

namespace revca {

/// Reads the line-oriented automaton format. Syntax errors carry the line
/// number; with `check` set, validation defects are reported as kValidation.
CounterAutomaton parse_automaton(std::string_view text, bool check = true);

/// Canonical text: header, then transitions ordered by (state, token, status).
std::string serialize_automaton(const CounterAutomaton& m);

McmMachine parse_mcm(std::string_view text);
std::string serialize_mcm(const McmMachine& m);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view text);

}  // namespace revca
