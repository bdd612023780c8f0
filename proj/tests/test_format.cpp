#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>

#include "revca/error.hpp"
#include "revca/format.hpp"
#include "revca/mcm.hpp"
#include "revca/reverse.hpp"
#include "revca/valc.hpp"
#include "revca/witnesses.hpp"
#include "toys.hpp"

using namespace revca;

namespace {

std::string machine_file(const char* name) { return read_file(std::string(REVCA_MACHINES_DIR) + "/" + name); }

ErrorCode code_of(const std::string& text) {
  try {
    parse_automaton(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("parsed without error");
  return ErrorCode::kInvalidArgument;
}

std::string message_of(const std::string& text) {
  try {
    parse_automaton(text);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

const char* const kHeader =
    "revca-format 1\ncounters 1\nalphabet a\nstates q r\ninitial q\naccepting r\n";

}  // namespace

TEST_CASE("shipped machines parse to the built ones") {
  CHECK(parse_automaton(machine_file("eq_ab.rca")) == build_eq_ab());
  CHECK(parse_automaton(machine_file("balanced3.rca")) == build_balanced(3));
  CHECK(parse_automaton(machine_file("regular_witness.rca")) == build_regular_witness());
  CHECK(parse_automaton(machine_file("a_star_slow.rca")) == toys::a_star_slow());
  CHECK(parse_mcm(machine_file("hartmanis.mcm")) == mcm_example_machine());
  CHECK(parse_mcm(machine_file("doubler.mcm")) == mcm_doubler_machine());
}

TEST_CASE("serialization round trips") {
  for (const auto& m : {build_eq_ab(), build_balanced(4), build_regular_witness(), toys::scaled(build_eq_ab(), 3)}) {
    const auto text = serialize_automaton(m);
    const auto back = parse_automaton(text);
    CHECK(back == m);
    CHECK(serialize_automaton(back) == text);
  }
  CHECK(serialize_automaton(build_eq_ab()) == machine_file("eq_ab.rca"));
  const auto mcm = mcm_example_machine();
  CHECK(parse_mcm(serialize_mcm(mcm)) == mcm);
}

TEST_CASE("large generated machines round trip") {
  const auto v = build_valc_part_quasi(mcm_doubler_machine(), 1);
  CHECK(parse_automaton(serialize_automaton(v)) == v);
}

TEST_CASE("syntax errors carry the line") {
  std::string text = std::string(kHeader) + "t q a ZZ -> r 1 0\n";
  CHECK(code_of(text) == ErrorCode::kSyntax);
  CHECK(message_of(text).find("line 7") != std::string::npos);

  CHECK(code_of("revca-format 2\n") == ErrorCode::kSyntax);
  CHECK(code_of("counters 1\n") == ErrorCode::kSyntax);
  CHECK(code_of(std::string(kHeader) + "t q b Z -> r 1 0\n") == ErrorCode::kSyntax);
  CHECK(code_of(std::string(kHeader) + "t q a Z -> s 1 0\n") == ErrorCode::kSyntax);
  CHECK(code_of(std::string(kHeader) + "t q a Z -> r 2 0\n") == ErrorCode::kSyntax);
  CHECK(code_of(std::string(kHeader) + "t q a Z -> r 1 0,0\n") == ErrorCode::kSyntax);
  CHECK(code_of(std::string(kHeader) + "t q a Z r 1 0\n") == ErrorCode::kSyntax);
  CHECK(code_of("revca-format 1\ncounters 1\nalphabet <\nstates q\ninitial q\naccepting\n") == ErrorCode::kSyntax);
}

TEST_CASE("validation defects are reported") {
  CHECK(code_of(std::string(kHeader) + "t q a Z -> r 1 -1\n") == ErrorCode::kValidation);
  CHECK(code_of(std::string(kHeader) + "t q > Z -> r 1 0\n") == ErrorCode::kValidation);
  CHECK_NOTHROW(parse_automaton(std::string(kHeader) + "t q a Z -> r 1 -1\n", false));
}

TEST_CASE("comments, endmarkers and counter-free machines") {
  const auto m = parse_automaton(
      "# a comment\nrevca-format 1\ncounters 0\nalphabet x $\nstates s t  # trailing\n"
      "initial s\naccepting t\nt s < - -> t 1 -\nt t $ - -> t 1 -\n");
  CHECK(m.counters() == 0);
  CHECK(m.transitions().size() == 2);
  CHECK(m.alphabet() == std::vector<std::string>{"x", "$"});
  CHECK(code_of("revca-format 1\ncounters 0\nalphabet x\nstates s\ninitial s\naccepting\nt s < Z -> s 1 -\n") ==
        ErrorCode::kSyntax);
}

TEST_CASE("maxdelta header") {
  const auto text = serialize_automaton(toys::scaled(build_eq_ab(), 2));
  CHECK(text.find("maxdelta 2\n") != std::string::npos);
  CHECK(parse_automaton(text).max_delta() == 2);
  CHECK(serialize_automaton(build_eq_ab()).find("maxdelta") == std::string::npos);
}

TEST_CASE("mcm syntax") {
  auto bad = [](const std::string& text) {
    try {
      parse_mcm(text);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kInvalidArgument;
  };
  const std::string head = "mcm-format 1\nstates q0 qf\ninitial q0\nfinal qf\n";
  CHECK(bad(head + "r q0 4 qf qf\n") == ErrorCode::kSyntax);
  CHECK(bad(head + "r q0 1 qf qf\n") == ErrorCode::kSyntax);
  CHECK(bad(head + "r q0 2 qx qf\n") == ErrorCode::kSyntax);
  CHECK(bad(head + "r qf 2 q0 q0\n") == ErrorCode::kValidation);
  CHECK_NOTHROW(parse_mcm(head + "r q0 1/7 qf qf\n"));
}
