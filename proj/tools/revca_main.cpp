#include <cctype>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "revca/constructions.hpp"
#include "revca/format.hpp"
#include "revca/mcm.hpp"
#include "revca/reverse.hpp"
#include "revca/valc.hpp"
#include "revca/witnesses.hpp"

using namespace revca;

namespace {

constexpr int kExitReject = 1;

CounterAutomaton load(const std::string& path) { return parse_automaton(read_file(path)); }

// Tokens from the command line: several arguments are tokens as given; a
// single argument is split on whitespace, kept whole if it is a token, or
// split into characters otherwise.
Word parse_input(const CounterAutomaton& m, const std::vector<std::string>& args) {
  std::vector<std::string> tokens;
  if (args.size() == 1) {
    const std::string& s = args[0];
    if (s.find_first_of(" \t\n") != std::string::npos) {
      std::istringstream is(s);
      for (std::string t; is >> t;) tokens.push_back(t);
    } else if (m.find_symbol(s) && s != kLeftEndText && s != kRightEndText) {
      tokens.push_back(s);
    } else {
      for (char c : s) tokens.emplace_back(1, c);
    }
  } else {
    tokens = args;
  }
  return m.encode(tokens);
}

std::string show(const CounterAutomaton& m, const Configuration& c) {
  std::ostringstream os;
  os << m.state_name(c.state) << " head=" << c.head << " counters=[";
  for (std::size_t i = 0; i < c.counters.size(); ++i) os << (i ? "," : "") << c.counters[i];
  os << "]";
  return os.str();
}

std::string status_text(std::uint32_t mask, int k) {
  if (k == 0) return "-";
  std::string s;
  for (int i = 0; i < k; ++i) s += (mask & (1u << i)) ? 'P' : 'Z';
  return s;
}

std::string delta_text(const std::vector<int>& d) {
  if (d.empty()) return "-";
  std::string s;
  for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
  return s;
}

ReversibilityVerdict reverse_of(const CounterAutomaton& m) {
  return m.max_delta() > 1 ? derive_reverse_extended(m) : derive_reverse(m);
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-")
    std::cout << text;
  else
    write_file(out, text);
}

int cmd_run(const std::string& file, const std::vector<std::string>& input, std::size_t fuel, bool trace,
            bool backward) {
  const auto m = load(file);
  const Word w = parse_input(m, input);
  const auto out = run(m, w, fuel, trace);
  if (trace)
    for (std::size_t i = 0; i < out.trace.size(); ++i) std::cout << i << ": " << show(m, out.trace[i]) << "\n";
  std::cout << to_string(out.verdict) << " steps=" << out.steps << "\n";
  if (!out.diagnostic.empty()) std::cerr << out.diagnostic << "\n";

  if (backward) {
    auto rev = reverse_of(m);
    if (!rev.reversible) throw Error(ErrorCode::kValidation, "automaton is not reversible");
    Configuration c = out.final_config;
    std::size_t steps = 0;
    while (auto prev = step_back(m, rev.table, w, c)) {
      c = std::move(*prev);
      ++steps;
      if (trace) std::cout << "back " << steps << ": " << show(m, c) << "\n";
      if (steps > out.steps) break;
    }
    const bool home = c == initial_configuration(m);
    std::cout << "BACKWARD steps=" << steps << " initial=" << (home ? "yes" : "no") << "\n";
  }
  return out.verdict == Verdict::kAccept ? 0 : kExitReject;
}

int cmd_check(const std::string& file, const std::string& mode, std::size_t max_len, std::size_t fuel) {
  const auto m = load(file);
  auto v = reverse_of(m);
  if (!v.reversible) {
    std::cout << "NOT REVERSIBLE conflicts=" << v.conflicts.size() << "\n";
    for (const auto& c : v.conflicts) {
      const auto& a = m.transitions()[c.first];
      const auto& b = m.transitions()[c.second];
      std::cout << "conflict " << m.state_name(c.key.state) << ' ' << m.symbol_text(c.key.symbol) << ' '
                << status_text(c.key.mask, m.counters()) << ": " << c.reason << " (from "
                << m.state_name(a.from) << " and " << m.state_name(b.from) << ")\n";
    }
    return kExitReject;
  }
  if (mode == "syntactic") {
    std::cout << "REVERSIBLE entries=" << v.table.size() << "\n";
    for (const auto& [k, e] : v.table.entries())
      std::cout << "b " << m.state_name(k.state) << ' ' << m.symbol_text(k.symbol) << ' '
                << status_text(k.mask, m.counters()) << " -> " << m.state_name(e.predecessor) << ' ' << e.move
                << ' ' << delta_text(e.deltas) << "\n";
    return 0;
  }
  if (auto f = verify_roundtrip(m, v.table, max_len, fuel)) {
    std::cout << "ROUNDTRIP FAILED on '";
    for (const auto& t : m.decode(f->input)) std::cout << t << ' ';
    std::cout << "' at " << show(m, f->before) << "\n";
    return kExitReject;
  }
  std::cout << "ROUNDTRIP OK max-len=" << max_len << "\n";
  return 0;
}

CounterAutomaton example_named(const std::string& name) {
  if (name == "eq-ab") return build_eq_ab();
  if (name == "regular-witness") return build_regular_witness();
  const std::string prefix = "balanced-k:";
  if (name.rfind(prefix, 0) == 0) {
    const std::string k = name.substr(prefix.size());
    if (!k.empty() && k.size() <= 2 && std::isdigit(static_cast<unsigned char>(k[0])) &&
        std::isdigit(static_cast<unsigned char>(k.back())))
      return build_balanced(std::stoi(k));
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown example " + name);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reversible one-way counter automata toolkit", "revca"};
  app.require_subcommand(1);

  std::string file, file2, out, mode = "syntactic", word, name;
  std::size_t fuel = 100000, max_len = 6, ell = 0, i = 0, fuel_mcm = 1000, fuel_valc = 200;
  int k = 2, j = 1, dollars = 1;
  std::uint64_t seed = 1;
  bool trace = false, backward = false;
  std::string part = "both";

  auto* run_cmd = app.add_subcommand("run", "Run an automaton on an input");
  run_cmd->add_option("file", file, "Automaton file")->required();
  // Input tokens are taken raw from the leftovers: an option would read a
  // bracketed VALC token as an array literal.
  run_cmd->allow_extras();
  run_cmd->footer("Positional arguments after FILE are the input tokens.");
  run_cmd->add_option("--fuel", fuel, "Step budget");
  run_cmd->add_flag("--trace", trace, "Print every configuration");
  run_cmd->add_flag("--backward", backward, "Run back to the start with the reverse function");

  auto* check_cmd = app.add_subcommand("check", "Derive and verify the reverse transition function");
  check_cmd->add_option("file", file)->required();
  check_cmd->add_option("--mode", mode)->check(CLI::IsMember({"syntactic", "roundtrip"}));
  check_cmd->add_option("--max-len", max_len);
  check_cmd->add_option("--fuel", fuel);

  auto* norm_cmd = app.add_subcommand("normalize", "Reduce per-step deltas to [-1, 1]");
  norm_cmd->add_option("file", file)->required();
  norm_cmd->add_option("-o", out)->required();

  auto* speed_cmd = app.add_subcommand("speedup", "Turn a quasi-real-time automaton into a real-time one");
  speed_cmd->add_option("file", file)->required();
  speed_cmd->add_option("--ell", ell)->required();
  speed_cmd->add_option("-o", out)->required();

  auto* prod_cmd = app.add_subcommand("product", "Intersection of two automata");
  prod_cmd->add_option("file1", file)->required();
  prod_cmd->add_option("file2", file2)->required();
  prod_cmd->add_option("-o", out)->required();

  auto* ex_cmd = app.add_subcommand("example", "Emit a built-in automaton");
  ex_cmd->add_option("name", name, "eq-ab, balanced-k:K or regular-witness")->required();
  ex_cmd->add_option("-o", out);

  auto* lk_cmd = app.add_subcommand("lk", "L_k membership and generation");
  lk_cmd->require_subcommand(1);
  auto* lk_decide = lk_cmd->add_subcommand("decide");
  lk_decide->add_option("--k", k)->required();
  lk_decide->add_option("word", word)->required();
  auto* lk_gen = lk_cmd->add_subcommand("gen");
  lk_gen->add_option("--k", k)->required();
  lk_gen->add_option("--j", j)->required();
  lk_gen->add_option("--i", dollars)->required();
  lk_gen->add_option("--seed", seed);

  auto* mcm_cmd = app.add_subcommand("mcm", "Multiplying counter machines");
  mcm_cmd->require_subcommand(1);
  auto* mcm_run_cmd = mcm_cmd->add_subcommand("run");
  mcm_run_cmd->add_option("file", file)->required();
  mcm_run_cmd->add_option("--i", i)->required();
  mcm_run_cmd->add_option("--fuel", fuel_mcm);

  auto* valc_cmd = app.add_subcommand("valc", "Computation histories of multiplying counter machines");
  valc_cmd->require_subcommand(1);
  auto* valc_enc = valc_cmd->add_subcommand("encode");
  valc_enc->add_option("file", file)->required();
  valc_enc->add_option("--i", i)->required();
  valc_enc->add_option("--fuel", fuel_valc);
  auto* valc_build = valc_cmd->add_subcommand("build");
  valc_build->add_option("file", file)->required();
  valc_build->add_option("--part", part)->check(CLI::IsMember({"1", "2", "both"}));
  valc_build->add_option("-o", out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*run_cmd) return cmd_run(file, run_cmd->remaining(), fuel, trace, backward);
    if (*check_cmd) return cmd_check(file, mode, max_len, fuel);
    if (*norm_cmd) {
      const auto m = load(file);
      auto src = reverse_of(m);
      auto n = normalize_extended(m, src.reversible ? &src.table : nullptr);
      write_file(out, serialize_automaton(n.automaton));
      std::cout << "states=" << n.automaton.num_states() << " transitions=" << n.automaton.transitions().size()
                << " modulus=" << n.modulus << "\n";
      return 0;
    }
    if (*speed_cmd) {
      auto r = speedup(load(file), ell);
      write_file(out, serialize_automaton(r.automaton));
      for (const auto& note : r.notes) std::cerr << note << "\n";
      std::cout << "states=" << r.automaton.num_states() << " macro-steps=" << r.macro_steps
                << " removed-left-end-loops=" << r.removed_left_end_loops << "\n";
      return 0;
    }
    if (*prod_cmd) {
      auto p = product_intersection(load(file), load(file2));
      write_file(out, serialize_automaton(p));
      std::cout << "states=" << p.num_states() << " transitions=" << p.transitions().size() << "\n";
      return 0;
    }
    if (*ex_cmd) {
      emit(out, serialize_automaton(example_named(name)));
      return 0;
    }
    if (*lk_decide) {
      const bool member = decide_Lk(k, word);
      std::cout << (member ? "MEMBER" : "NOT MEMBER") << "\n";
      return member ? 0 : kExitReject;
    }
    if (*lk_gen) {
      std::cout << gen_Lk_member(k, j, dollars, seed) << "\n";
      return 0;
    }
    if (*mcm_run_cmd) {
      const auto m = parse_mcm(read_file(file));
      const auto t = mcm_run(m, i, fuel_mcm);
      for (const auto& c : t.configs) std::cout << c.state << " a^" << c.n << "\n";
      std::cerr << to_string(t.outcome) << "\n";
      return t.outcome == McmOutcome::kHaltedFinal ? 0 : kExitReject;
    }
    if (*valc_enc) {
      std::cout << join(valc_encode(parse_mcm(read_file(file)), i, fuel_valc)) << "\n";
      return 0;
    }
    if (*valc_build) {
      const auto m = parse_mcm(read_file(file));
      const auto a = part == "1" ? build_valc1(m) : part == "2" ? build_valc2(m) : build_valc(m);
      write_file(out, serialize_automaton(a));
      std::cout << "states=" << a.num_states() << " transitions=" << a.transitions().size() << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
