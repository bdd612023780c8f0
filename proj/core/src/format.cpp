#include "revca/format.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

namespace revca {

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> words;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++number;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::istringstream is{std::string(line)};
    Line l{number, {}};
    for (std::string w; is >> w;) l.words.push_back(std::move(w));
    if (!l.words.empty()) out.push_back(std::move(l));
    pos = end + 1;
  }
  return out;
}

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
  throw Error(ErrorCode::kSyntax, "line " + std::to_string(line) + ": " + msg);
}

std::optional<int> to_int(std::string_view s) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

// Header keywords must appear once, in this order, before any rule line.
void expect_header(const std::vector<Line>& lines, std::size_t& i, std::string_view key, bool optional,
                   std::vector<std::string>& args) {
  if (i < lines.size() && lines[i].words[0] == key) {
    args.assign(lines[i].words.begin() + 1, lines[i].words.end());
    ++i;
    return;
  }
  if (!optional) {
    const std::size_t at = i < lines.size() ? lines[i].number : (lines.empty() ? 1 : lines.back().number);
    fail(at, "expected '" + std::string(key) + "'");
  }
}

void expect_version(const std::vector<Line>& lines, std::size_t& i, std::string_view magic) {
  std::vector<std::string> args;
  expect_header(lines, i, magic, false, args);
  if (args.size() != 1 || args[0] != "1") fail(lines[i - 1].number, "unsupported format version");
}

}  // namespace

CounterAutomaton parse_automaton(std::string_view text, bool check) {
  const auto lines = tokenize(text);
  std::size_t i = 0;
  expect_version(lines, i, "revca-format");

  std::vector<std::string> args;
  expect_header(lines, i, "counters", false, args);
  if (args.size() != 1 || !to_int(args[0]) || *to_int(args[0]) < 0 || *to_int(args[0]) > 31)
    fail(lines[i - 1].number, "counters needs a number in [0, 31]");
  const int k = *to_int(args[0]);

  int max_delta = 1;
  args.clear();
  expect_header(lines, i, "maxdelta", true, args);
  if (!args.empty()) {
    if (args.size() != 1 || !to_int(args[0]) || *to_int(args[0]) < 1)
      fail(lines[i - 1].number, "maxdelta needs a positive number");
    max_delta = *to_int(args[0]);
  }

  CounterAutomaton m(k, max_delta);
  expect_header(lines, i, "alphabet", false, args);
  for (const auto& t : args) {
    if (t == kLeftEndText || t == kRightEndText) fail(lines[i - 1].number, "endmarker in alphabet");
    if (m.find_symbol(t)) fail(lines[i - 1].number, "duplicate token " + t);
    m.add_token(t);
  }
  expect_header(lines, i, "states", false, args);
  if (args.empty()) fail(lines[i - 1].number, "no states");
  for (const auto& s : args) {
    if (m.find_state(s)) fail(lines[i - 1].number, "duplicate state " + s);
    m.add_state(s);
  }
  auto state = [&](const std::string& name, std::size_t line) {
    auto s = m.find_state(name);
    if (!s) fail(line, "unknown state " + name);
    return *s;
  };
  expect_header(lines, i, "initial", false, args);
  if (args.size() != 1) fail(lines[i - 1].number, "initial needs one state");
  m.set_initial(state(args[0], lines[i - 1].number));
  expect_header(lines, i, "accepting", false, args);
  for (const auto& s : args) m.set_accepting(state(s, lines[i - 1].number));

  for (; i < lines.size(); ++i) {
    const auto& w = lines[i].words;
    const auto ln = lines[i].number;
    if (w[0] != "t") fail(ln, "unexpected '" + w[0] + "'");
    if (w.size() != 8 || w[4] != "->") fail(ln, "expected 't <state> <token> <status> -> <state> <move> <deltas>'");
    Transition t;
    t.from = state(w[1], ln);
    auto sym = m.find_symbol(w[2]);
    if (!sym) fail(ln, "unknown token " + w[2]);
    t.symbol = *sym;
    if (k == 0) {
      if (w[3] != "-") fail(ln, "status must be '-' without counters");
    } else {
      if (w[3].size() != static_cast<std::size_t>(k)) fail(ln, "status needs " + std::to_string(k) + " entries");
      for (char c : w[3]) {
        if (c != 'Z' && c != 'P') fail(ln, "status letters are Z and P");
        t.status.push_back(c == 'P' ? Status::kPositive : Status::kZero);
      }
    }
    t.to = state(w[5], ln);
    auto move = to_int(w[6]);
    if (!move || (*move != 0 && *move != 1)) fail(ln, "move must be 0 or 1");
    t.move = *move;
    if (k == 0) {
      if (w[7] != "-") fail(ln, "deltas must be '-' without counters");
    } else {
      std::string_view rest = w[7];
      while (true) {
        auto comma = rest.find(',');
        auto d = to_int(rest.substr(0, comma));
        if (!d) fail(ln, "bad delta list " + w[7]);
        t.deltas.push_back(*d);
        if (comma == std::string_view::npos) break;
        rest = rest.substr(comma + 1);
      }
      if (t.deltas.size() != static_cast<std::size_t>(k)) fail(ln, "deltas need " + std::to_string(k) + " entries");
    }
    m.add_transition(std::move(t));
  }

  if (check) {
    auto defects = validate(m);
    if (!defects.empty()) {
      std::string msg;
      for (const auto& d : defects) msg += "\n  " + std::string(to_string(d.kind)) + ": " + d.message;
      throw Error(ErrorCode::kValidation, std::to_string(defects.size()) + " defect(s)" + msg);
    }
  }
  return m;
}

std::string serialize_automaton(const CounterAutomaton& m) {
  std::ostringstream os;
  os << "revca-format 1\n";
  os << "counters " << m.counters() << "\n";
  if (m.max_delta() != 1) os << "maxdelta " << m.max_delta() << "\n";
  os << "alphabet";
  for (const auto& t : m.alphabet()) os << ' ' << t;
  os << "\nstates";
  for (StateId s = 0; s < m.num_states(); ++s) os << ' ' << m.state_name(s);
  os << "\ninitial " << m.state_name(m.initial()) << "\naccepting";
  for (StateId s = 0; s < m.num_states(); ++s)
    if (m.is_accepting(s)) os << ' ' << m.state_name(s);
  os << "\n";

  std::vector<const Transition*> ts;
  for (const auto& t : m.transitions()) ts.push_back(&t);
  // Status order follows the letters: Z before P, first counter first.
  auto status_key = [](const StatusVector& s) {
    std::string out;
    for (auto v : s) out += v == Status::kPositive ? 'P' : 'Z';
    return out;
  };
  std::stable_sort(ts.begin(), ts.end(), [&](const Transition* a, const Transition* b) {
    if (a->from != b->from) return a->from < b->from;
    if (a->symbol != b->symbol) return a->symbol < b->symbol;
    return std::lexicographical_compare(a->status.begin(), a->status.end(), b->status.begin(), b->status.end());
  });
  for (const auto* t : ts) {
    os << "t " << m.state_name(t->from) << ' ' << m.symbol_text(t->symbol) << ' ';
    os << (m.counters() == 0 ? std::string("-") : status_key(t->status));
    os << " -> " << m.state_name(t->to) << ' ' << t->move << ' ';
    if (m.counters() == 0) {
      os << '-';
    } else {
      for (std::size_t i = 0; i < t->deltas.size(); ++i) os << (i ? "," : "") << t->deltas[i];
    }
    os << "\n";
  }
  return os.str();
}

McmMachine parse_mcm(std::string_view text) {
  const auto lines = tokenize(text);
  std::size_t i = 0;
  expect_version(lines, i, "mcm-format");
  McmMachine m;
  std::vector<std::string> args;
  expect_header(lines, i, "states", false, args);
  if (args.empty()) fail(lines[i - 1].number, "no states");
  m.states = args;
  expect_header(lines, i, "initial", false, args);
  if (args.size() != 1) fail(lines[i - 1].number, "initial needs one state");
  m.initial = args[0];
  expect_header(lines, i, "final", false, args);
  if (args.size() != 1) fail(lines[i - 1].number, "final needs one state");
  m.final_state = args[0];
  for (; i < lines.size(); ++i) {
    const auto& w = lines[i].words;
    const auto ln = lines[i].number;
    if (w[0] != "r") fail(ln, "unexpected '" + w[0] + "'");
    if (w.size() != 5) fail(ln, "expected 'r <q> <mult> <p> <r>'");
    auto k = parse_multiplicand(w[2]);
    if (!k || !is_rule_multiplicand(*k)) fail(ln, "bad multiplicand " + w[2]);
    for (const auto* s : {&w[1], &w[3], &w[4]})
      if (!m.has_state(*s)) fail(ln, "unknown state " + *s);
    m.rules.push_back(McmRule{w[1], *k, w[3], w[4]});
  }
  m.validate();
  return m;
}

std::string serialize_mcm(const McmMachine& m) {
  std::ostringstream os;
  os << "mcm-format 1\nstates";
  for (const auto& s : m.states) os << ' ' << s;
  os << "\ninitial " << m.initial << "\nfinal " << m.final_state << "\n";
  for (const auto& r : m.rules) os << "r " << r.q << ' ' << to_string(r.k) << ' ' << r.p << ' ' << r.r << "\n";
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write " + path);
  out << text;
}

}  // namespace revca
