#include "revca/valc.hpp"

#include <set>

#include "revca/constructions.hpp"

namespace revca {

namespace {

const char* const kPrefixText = "[q0']";

const std::vector<Multiplicand>& all_ells() {
  static const std::vector<Multiplicand> v = {{1, 1}, {2, 1}, {3, 1}, {5, 1}, {7, 1},
                                              {1, 2}, {1, 3}, {1, 5}, {1, 7}};
  return v;
}

}  // namespace

std::string lead_token(std::string_view state, const Multiplicand& ell) {
  return "[" + std::string(state) + "|l=" + to_string(ell) + "]";
}

std::string trail_token(std::string_view state, const Multiplicand& ell, int phi) {
  return "[" + std::string(state) + "|l=" + to_string(ell) + "|p=" + std::to_string(phi) + "]";
}

std::string to_string(const ValcToken& t) {
  switch (t.kind) {
    case ValcToken::Kind::kA: return "a";
    case ValcToken::Kind::kAMarked: return "a'";
    case ValcToken::Kind::kPrefix: return kPrefixText;
    case ValcToken::Kind::kLead: return lead_token(t.state, t.ell);
    case ValcToken::Kind::kTrail: return trail_token(t.state, t.ell, t.phi);
  }
  return "?";
}

std::optional<ValcToken> parse_valc_token(std::string_view text) {
  using K = ValcToken::Kind;
  if (text == "a") return ValcToken{K::kA, {}, {}, 0};
  if (text == "a'") return ValcToken{K::kAMarked, {}, {}, 0};
  if (text == kPrefixText) return ValcToken{K::kPrefix, {}, {}, 0};
  if (text.size() < 2 || text.front() != '[' || text.back() != ']') return std::nullopt;
  text = text.substr(1, text.size() - 2);

  std::vector<std::string_view> parts;
  for (std::size_t pos = 0;;) {
    auto bar = text.find('|', pos);
    parts.push_back(text.substr(pos, bar == std::string_view::npos ? std::string_view::npos : bar - pos));
    if (bar == std::string_view::npos) break;
    pos = bar + 1;
  }
  if (parts.size() < 2 || parts.size() > 3 || parts[0].empty()) return std::nullopt;
  if (parts[1].substr(0, 2) != "l=") return std::nullopt;
  auto ell = parse_multiplicand(parts[1].substr(2));
  if (!ell) return std::nullopt;
  ValcToken t{K::kLead, std::string(parts[0]), *ell, 0};
  if (parts.size() == 3) {
    if (parts[2].size() != 3 || parts[2].substr(0, 2) != "p=" || parts[2][2] < '0' || parts[2][2] > '6')
      return std::nullopt;
    t.kind = K::kTrail;
    t.phi = parts[2][2] - '0';
  }
  return t;
}

std::vector<std::string> valc_texts(const ValcWord& w) {
  std::vector<std::string> out;
  out.reserve(w.size());
  for (const auto& t : w) out.push_back(to_string(t));
  return out;
}

std::string join(const ValcWord& w) {
  std::string out;
  for (const auto& t : w) {
    if (!out.empty()) out += ' ';
    out += to_string(t);
  }
  return out;
}

std::string primed_final(const McmMachine& m) { return m.final_state + "'"; }

ValcWord valc_encode(const McmMachine& m, std::size_t i, std::size_t fuel) {
  using K = ValcToken::Kind;
  const auto trace = mcm_run(m, i, fuel);
  if (trace.outcome != McmOutcome::kHaltedFinal)
    throw Error(ErrorCode::kNotAccepting,
                std::string("run from 2^") + std::to_string(i) + " ended " + to_string(trace.outcome));

  ValcWord w;
  auto a_run = [&](const BigInt& n, bool marked) {
    if (n > 10'000'000) throw Error(ErrorCode::kInvalidArgument, "configuration too long to spell out");
    auto len = n.convert_to<std::size_t>();
    for (std::size_t p = 0; p < len; ++p)
      w.push_back(ValcToken{p == 0 && marked ? K::kAMarked : K::kA, {}, {}, 0});
  };
  auto lead = [&](const std::string& q, Multiplicand ell) { w.push_back(ValcToken{K::kLead, q, ell, 0}); };

  for (std::size_t p = 0; p < i; ++p) {
    w.push_back(ValcToken{K::kPrefix, {}, {}, 0});
    a_run(BigInt(1) << p, p == 0);
    w.push_back(ValcToken{K::kPrefix, {}, {}, 0});
  }

  const auto& cs = trace.configs;
  const std::size_t n = cs.size() - 1;
  Multiplicand ell{2, 1};
  for (std::size_t j = 0; j <= n; ++j) {
    if (j > 0) {
      const auto k = m.rule_for(cs[j - 1].state)->k;
      ell = (k.den == 1 || cs[j - 1].n % k.den == 0) ? k : Multiplicand{1, 1};
    }
    const bool marked = i == 0 && j == 0;
    if (j < n) {
      const auto k = m.rule_for(cs[j].state)->k;
      const int phi = k.den > 1 ? static_cast<int>(cs[j].n % k.den) : 0;
      lead(cs[j].state, ell);
      a_run(cs[j].n, marked);
      w.push_back(ValcToken{K::kTrail, cs[j].state, ell, phi});
    } else if ((n + i + 1) % 2 == 1) {
      const auto fp = primed_final(m);
      lead(fp, ell);
      a_run(cs[j].n, marked);
      lead(fp, ell);
      lead(m.final_state, {1, 1});
      a_run(cs[j].n, false);
      lead(m.final_state, {1, 1});
    } else {
      lead(m.final_state, ell);
      a_run(cs[j].n, marked);
      lead(m.final_state, ell);
    }
  }
  return w;
}

namespace {

int residue_modulus(const McmMachine& m, std::string_view q) {
  const auto* r = m.rule_for(q);
  return r != nullptr && r->k.den > 1 ? r->k.den : 1;
}

void check_names(const McmMachine& m) {
  m.validate();
  for (const auto& s : m.states)
    if (s.empty() || s.find_first_of("[]| \t\n") != std::string::npos || s == "q0'")
      throw Error(ErrorCode::kInvalidArgument, "state name '" + s + "' cannot appear in a token");
  if (m.has_state(primed_final(m)))
    throw Error(ErrorCode::kInvalidArgument, "state " + primed_final(m) + " is reserved");
}

}  // namespace

std::vector<std::string> valc_alphabet(const McmMachine& m) {
  std::vector<std::string> out{"a", "a'", kPrefixText};
  std::vector<std::string> names = m.states;
  names.push_back(primed_final(m));
  for (const auto& q : names)
    for (const auto& ell : all_ells()) out.push_back(lead_token(q, ell));
  for (const auto& q : m.states) {
    if (m.rule_for(q) == nullptr) continue;
    for (const auto& ell : all_ells())
      for (int phi = 0; phi < residue_modulus(m, q); ++phi) out.push_back(trail_token(q, ell, phi));
  }
  return out;
}

namespace {

// Assembles one part. Every block starts and ends with an empty counter.
// An X block counts its a's (the first one kept in the state), a Y block
// consumes the count at the rate given by its superscript.
class PartBuilder {
 public:
  PartBuilder(const McmMachine& m, int part)
      : m_(m), part_(part), fp_(primed_final(m)), a_(1, 1) {
    for (const auto& t : valc_alphabet(m)) a_.add_token(t);
  }

  CounterAutomaton build() {
    a_.set_initial(st("Start"));
    add("Start", "<", 'Z', "Init", 1, 0);
    a_.set_accepting(st("Accept"));
    add("AtEnd", ">", 'Z', "Accept", 0, 0);
    add("AtEnd", ">", 'P', "Accept", 0, 0);

    const Multiplicand two{2, 1};
    const std::string& q0 = m_.initial;
    if (part_ == 1) {
      add("Init", kPrefixText, 'Z', "XP0'", 1, 0);
      add("XP0'", "a'", 'Z', "XP1'", 1, 0);
      add("XP1'", kPrefixText, 'Z', prefix_w(), 1, 0);
      add("Init", lead_token(q0, two), 'Z', "XR0':" + q0, 1, 0);
      const int d = residue_modulus(m_, q0);
      const std::string x1 = "XR1':" + q0 + ":" + std::to_string(1 % d);
      add("XR0':" + q0, "a'", 'Z', x1, 1, 0);
      if (auto w = target_w(*m_.rule_for(q0), 1 % d)) add(x1, trail_token(q0, two, 1 % d), 'Z', *w, 1, 0);
    } else {
      add("Init", kPrefixText, 'Z', "F1P", 1, 0);
      add("F1P", "a'", 'Z', y_end("q0'", two), 1, 0);
      add("Init", lead_token(q0, two), 'Z', "F1R", 1, 0);
      add("F1R", "a'", 'Z', y_end(q0, two), 1, 0);
    }

    add("BeforeP", kPrefixText, 'Z', "XP0", 1, 0);
    add("XP0", "a", 'Z', "XP1", 1, 0);
    add("XP1", "a", 'Z', "XP1", 1, 1);
    add("XP1", "a", 'P', "XP1", 1, 1);
    add("XP1", kPrefixText, 'P', prefix_w(), 1, 0);
    x_block("BeforeP", q0, two);

    for (const auto& rule : m_.rules)
      if (rule.q != q0)
        for (const auto& ell : all_ells()) x_block("BeforeR", rule.q, ell);

    for (const auto& ell : all_ells()) {
      const std::string e = to_string(ell);
      if (part_ == 1) {
        // q_f' as the first of the last two configurations.
        add("BeforeR", lead_token(fp_, ell), 'Z', "XF0:" + e, 1, 0);
        add("XF0:" + e, "a", 'Z', "XF1:" + e, 1, 0);
        for (char s : {'Z', 'P'}) {
          add("XF1:" + e, "a", s, "XF1:" + e, 1, 1);
          add("XF1:" + e, lead_token(fp_, ell), s, *w_state(m_.final_state, {1, 1}), 1, 0);
        }
      } else {
        // The last configuration is only format checked here.
        add("BeforeR", lead_token(m_.final_state, ell), 'Z', "FF0:" + e, 1, 0);
        add("FF0:" + e, "a", 'Z', "FF1:" + e, 1, 0);
        for (char s : {'Z', 'P'}) {
          add("FF1:" + e, "a", s, "FF1:" + e, 1, 1);
          add("FF1:" + e, lead_token(m_.final_state, ell), s, "AtEnd", 1, 0);
        }
      }
    }
    return std::move(a_);
  }

 private:
  StateId st(const std::string& name) {
    auto f = a_.find_state(name);
    return f ? *f : a_.add_state(name);
  }

  void add(const std::string& from, const std::string& tok, char status, const std::string& to, int move,
           int delta) {
    const StateId f = st(from);
    const StateId t = st(to);
    a_.add_transition(Transition{f, *a_.find_symbol(tok),
                                 {status == 'P' ? Status::kPositive : Status::kZero}, t, move, {delta}});
  }

  bool once(const std::string& key) { return made_.insert(key).second; }

  // Name used for a successor state in this part's Y blocks; empty for
  // states whose configurations can never lead anywhere.
  std::string y_name(const std::string& q) const {
    if (q == m_.final_state) return part_ == 1 ? m_.final_state : fp_;
    return m_.rule_for(q) != nullptr ? q : std::string();
  }

  // Y block for configuration name^(ell); returns its end state.
  std::string y_end(const std::string& name, const Multiplicand& ell) {
    const std::string base = "Y:" + name + ":" + to_string(ell);
    const std::string end = "Yend:" + name + ":" + to_string(ell);
    if (!once(base)) return end;
    auto y = [&](int g) { return base + ":" + std::to_string(g); };
    if (ell.den > 1) {
      // 1/d: every a takes d decrements, d - 1 of them stationary.
      const int d = ell.den;
      for (int s = 0; s + 1 < d; ++s) add(y(s), "a", 'P', y(s + 1), 0, -1);
      add(y(d - 1), "a", 'P', y(0), 1, -1);
      add(y(d - 1), "a", 'Z', end, 1, 0);
    } else {
      // k: one decrement per k a's; superscript 1 is the plain copy.
      const int k = ell.num;
      for (int g = 0; g + 1 < k; ++g)
        for (char s : {'Z', 'P'}) add(y(g), "a", s, y(g + 1), 1, 0);
      add(y(k - 1), "a", 'P', y(0), 1, -1);
      add(y(k - 1), "a", 'Z', end, 1, 0);
    }
    if (name == "q0'") {
      add(end, kPrefixText, 'Z', "BeforeP", 1, 0);
    } else if (name == m_.final_state) {
      add(end, lead_token(name, ell), 'Z', "AtEnd", 1, 0);
    } else if (name == fp_) {
      add(end, lead_token(name, ell), 'Z', "BeforeR", 1, 0);
    } else {
      for (int phi = 0; phi < residue_modulus(m_, name); ++phi)
        add(end, trail_token(name, ell, phi), 'Z', "BeforeR", 1, 0);
    }
    return end;
  }

  std::string y_start(const std::string& name, const Multiplicand& ell) {
    y_end(name, ell);
    return "Y:" + name + ":" + to_string(ell) + ":0";
  }

  // The state between an X block and a Y block for successor q^(ell).
  std::optional<std::string> w_state(const std::string& q, const Multiplicand& ell) {
    const std::string name = y_name(q);
    if (name.empty()) return std::nullopt;
    const std::string w = "W:" + name + ":" + to_string(ell);
    if (once(w)) {
      const std::string y0 = y_start(name, ell);
      for (char s : {'Z', 'P'}) add(w, lead_token(name, ell), s, y0, 1, 0);
    }
    return w;
  }

  std::optional<std::string> target_w(const McmRule& rule, int phi) {
    if (rule.k.den == 1 || phi == 0) return w_state(rule.p, rule.k);
    return w_state(rule.r, {1, 1});
  }

  std::string prefix_w() {
    const std::string w = "Wpre";
    if (once(w)) {
      const Multiplicand two{2, 1};
      const std::string yp = y_start("q0'", two);
      const std::string yq = y_start(m_.initial, two);
      for (char s : {'Z', 'P'}) {
        add(w, kPrefixText, s, yp, 1, 0);
        add(w, lead_token(m_.initial, two), s, yq, 1, 0);
      }
    }
    return w;
  }

  // X block for q^(ell) entered from `pre`; the phase tracks n mod (1/k).
  void x_block(const std::string& pre, const std::string& q, const Multiplicand& ell) {
    const McmRule& rule = *m_.rule_for(q);
    const int d = residue_modulus(m_, q);
    const std::string tag = q + ":" + to_string(ell);
    const std::string x0 = "XR0:" + tag;
    auto x1 = [&](int ph) { return "XR1:" + tag + ":" + std::to_string(ph); };
    add(pre, lead_token(q, ell), 'Z', x0, 1, 0);
    add(x0, "a", 'Z', x1(1 % d), 1, 0);
    for (int ph = 0; ph < d; ++ph) {
      for (char s : {'Z', 'P'}) add(x1(ph), "a", s, x1((ph + 1) % d), 1, 1);
      auto w = target_w(rule, ph);
      if (!w) continue;
      // The initial configuration has at least two a's unless it holds a'.
      if (q != m_.initial) add(x1(ph), trail_token(q, ell, ph), 'Z', *w, 1, 0);
      add(x1(ph), trail_token(q, ell, ph), 'P', *w, 1, 0);
    }
  }

  const McmMachine& m_;
  int part_;
  std::string fp_;
  CounterAutomaton a_;
  std::set<std::string> made_;
};

}  // namespace

CounterAutomaton build_valc_part_quasi(const McmMachine& m, int part) {
  if (part != 1 && part != 2) throw Error(ErrorCode::kInvalidArgument, "part must be 1 or 2");
  check_names(m);
  return PartBuilder(m, part).build();
}

CounterAutomaton build_valc1(const McmMachine& m) {
  return speedup(build_valc_part_quasi(m, 1), kValcStationaryBudget).automaton;
}

CounterAutomaton build_valc2(const McmMachine& m) {
  return speedup(build_valc_part_quasi(m, 2), kValcStationaryBudget).automaton;
}

CounterAutomaton build_valc(const McmMachine& m) {
  return product_intersection(build_valc1(m), build_valc2(m));
}

}  // namespace revca
