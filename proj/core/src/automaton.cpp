#include "revca/automaton.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <set>
#include <sstream>
#include <tuple>

namespace revca {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidConfiguration: return "INVALID_CONFIGURATION";
    case ErrorCode::kInvalidTransitionEffect: return "INVALID_TRANSITION_EFFECT";
    case ErrorCode::kUnknownToken: return "UNKNOWN_TOKEN";
    case ErrorCode::kNegativeCounter: return "NEGATIVE_COUNTER";
    case ErrorCode::kNegativeResult: return "NEGATIVE_RESULT";
    case ErrorCode::kExtendedDelta: return "EXTENDED_DELTA";
    case ErrorCode::kNotQuasiRealtime: return "NOT_QUASI_REALTIME";
    case ErrorCode::kAlphabetMismatch: return "ALPHABET_MISMATCH";
    case ErrorCode::kMoveDisagreement: return "MOVE_DISAGREEMENT";
    case ErrorCode::kUnknownLetter: return "UNKNOWN_LETTER";
    case ErrorCode::kLengthNotDivisible: return "LENGTH_NOT_DIVISIBLE";
    case ErrorCode::kUnknownDigit: return "UNKNOWN_DIGIT";
    case ErrorCode::kNotAccepting: return "NOT_ACCEPTING";
    case ErrorCode::kSyntax: return "SYNTAX";
    case ErrorCode::kValidation: return "VALIDATION";
    case ErrorCode::kInvalidArgument: return "INVALID_ARGUMENT";
  }
  return "UNKNOWN";
}

const char* to_string(DefectKind kind) {
  switch (kind) {
    case DefectKind::kNondeterministicKey: return "nondeterministic key";
    case DefectKind::kDecrementOnZero: return "decrement on zero status";
    case DefectKind::kUnknownState: return "unknown state";
    case DefectKind::kUnknownToken: return "unknown token";
    case DefectKind::kDeltaTooLarge: return "delta exceeds max delta";
    case DefectKind::kStatusLength: return "status vector length";
    case DefectKind::kDeltaLength: return "delta vector length";
    case DefectKind::kBadMove: return "move not in {0,1}";
    case DefectKind::kMoveBeyondRightEnd: return "move beyond right endmarker";
    case DefectKind::kBadInitial: return "bad initial state";
  }
  return "unknown defect";
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kAccept: return "ACCEPT";
    case Verdict::kRejectHalt: return "REJECT";
    case Verdict::kFuelExhausted: return "FUEL_EXHAUSTED";
  }
  return "?";
}

StatusVector status_of(std::span<const std::int64_t> counters) {
  StatusVector out;
  out.reserve(counters.size());
  for (auto v : counters) {
    if (v < 0) throw Error(ErrorCode::kNegativeCounter, "counter value " + std::to_string(v));
    out.push_back(v == 0 ? Status::kZero : Status::kPositive);
  }
  return out;
}

std::uint32_t status_mask(const StatusVector& statuses) {
  std::uint32_t mask = 0;
  for (std::size_t i = 0; i < statuses.size() && i < 32; ++i)
    if (statuses[i] == Status::kPositive) mask |= 1u << i;
  return mask;
}

StatusVector status_from_mask(std::uint32_t mask, int counters) {
  StatusVector out(static_cast<std::size_t>(counters), Status::kZero);
  for (int i = 0; i < counters; ++i)
    if (mask & (1u << i)) out[static_cast<std::size_t>(i)] = Status::kPositive;
  return out;
}

namespace {

bool has_space(std::string_view s) {
  return std::any_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

std::uint32_t counters_mask(std::span<const std::int64_t> counters) {
  std::uint32_t mask = 0;
  for (std::size_t i = 0; i < counters.size(); ++i)
    if (counters[i] > 0) mask |= 1u << i;
  return mask;
}

}  // namespace

CounterAutomaton::CounterAutomaton(int counters, int max_delta)
    : counters_(counters), max_delta_(max_delta) {
  if (counters < 0 || counters > 16)
    throw Error(ErrorCode::kInvalidArgument, "counter count must be in [0,16]");
  if (max_delta < 1) throw Error(ErrorCode::kInvalidArgument, "max delta must be >= 1");
}

StateId CounterAutomaton::add_state(std::string name) {
  if (name.empty() || has_space(name) || name.front() == '#')
    throw Error(ErrorCode::kInvalidArgument, "bad state name '" + name + "'");
  if (state_index_.count(name)) throw Error(ErrorCode::kInvalidArgument, "duplicate state " + name);
  auto id = static_cast<StateId>(states_.size());
  state_index_.emplace(name, id);
  states_.push_back(std::move(name));
  accepting_.push_back(false);
  return id;
}

Symbol CounterAutomaton::add_token(std::string text) {
  if (text.empty() || has_space(text) || text.front() == '#' || text == kLeftEndText ||
      text == kRightEndText)
    throw Error(ErrorCode::kInvalidArgument, "bad token '" + text + "'");
  if (token_index_.count(text)) throw Error(ErrorCode::kInvalidArgument, "duplicate token " + text);
  auto sym = static_cast<Symbol>(kFirstLetter + alphabet_.size());
  token_index_.emplace(text, sym);
  alphabet_.push_back(std::move(text));
  return sym;
}

void CounterAutomaton::set_initial(StateId state) { initial_ = state; }

void CounterAutomaton::set_accepting(StateId state, bool accepting) {
  accepting_.at(state) = accepting;
}

void CounterAutomaton::add_transition(Transition t) {
  Key key{t.from, t.symbol, status_mask(t.status)};
  transitions_.push_back(std::move(t));
  index_.try_emplace(key, transitions_.size() - 1);
}

std::optional<StateId> CounterAutomaton::find_state(std::string_view name) const {
  auto it = state_index_.find(std::string(name));
  if (it == state_index_.end()) return std::nullopt;
  return it->second;
}

std::string CounterAutomaton::symbol_text(Symbol sym) const {
  if (sym == kLeftEnd) return std::string(kLeftEndText);
  if (sym == kRightEnd) return std::string(kRightEndText);
  return alphabet_.at(sym - kFirstLetter);
}

std::optional<Symbol> CounterAutomaton::find_symbol(std::string_view text) const {
  if (text == kLeftEndText) return kLeftEnd;
  if (text == kRightEndText) return kRightEnd;
  auto it = token_index_.find(std::string(text));
  if (it == token_index_.end()) return std::nullopt;
  return it->second;
}

const Transition* CounterAutomaton::find(StateId state, Symbol sym, std::uint32_t mask) const {
  auto it = index_.find(Key{state, sym, mask});
  return it == index_.end() ? nullptr : &transitions_[it->second];
}

Word CounterAutomaton::encode(std::span<const std::string> tokens) const {
  Word w;
  w.reserve(tokens.size());
  for (const auto& t : tokens) {
    auto it = token_index_.find(t);
    if (it == token_index_.end()) throw Error(ErrorCode::kUnknownToken, "'" + t + "'");
    w.push_back(it->second);
  }
  return w;
}

std::vector<std::string> CounterAutomaton::decode(std::span<const Symbol> word) const {
  std::vector<std::string> out;
  out.reserve(word.size());
  for (auto s : word) out.push_back(symbol_text(s));
  return out;
}

bool operator==(const CounterAutomaton& a, const CounterAutomaton& b) {
  if (a.counters_ != b.counters_ || a.max_delta_ != b.max_delta_) return false;
  if (a.states_ != b.states_ || a.alphabet_ != b.alphabet_) return false;
  if (a.initial_ != b.initial_ || a.accepting_ != b.accepting_) return false;
  if (a.transitions_.size() != b.transitions_.size()) return false;
  auto order = [](const Transition& x, const Transition& y) {
    return std::tie(x.from, x.symbol, x.status, x.to, x.move, x.deltas) <
           std::tie(y.from, y.symbol, y.status, y.to, y.move, y.deltas);
  };
  auto ta = a.transitions_;
  auto tb = b.transitions_;
  std::sort(ta.begin(), ta.end(), order);
  std::sort(tb.begin(), tb.end(), order);
  return ta == tb;
}

std::vector<Defect> validate(const CounterAutomaton& m) {
  std::vector<Defect> defects;
  auto add = [&](DefectKind kind, std::size_t index, const std::string& detail) {
    std::ostringstream os;
    os << "transition #" << index << ": " << to_string(kind);
    if (!detail.empty()) os << " (" << detail << ")";
    defects.push_back({kind, os.str()});
  };

  if (m.num_states() == 0 || m.initial() >= m.num_states())
    defects.push_back({DefectKind::kBadInitial, "initial state is not a declared state"});

  const auto k = static_cast<std::size_t>(m.counters());
  std::set<std::tuple<StateId, Symbol, StatusVector>> seen;
  const auto& ts = m.transitions();
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const auto& t = ts[i];
    if (t.from >= m.num_states() || t.to >= m.num_states()) add(DefectKind::kUnknownState, i, "");
    if (t.symbol >= m.num_symbols()) add(DefectKind::kUnknownToken, i, "");
    if (t.status.size() != k)
      add(DefectKind::kStatusLength, i, std::to_string(t.status.size()) + " != " + std::to_string(k));
    if (t.deltas.size() != k)
      add(DefectKind::kDeltaLength, i, std::to_string(t.deltas.size()) + " != " + std::to_string(k));
    if (t.move != 0 && t.move != 1) add(DefectKind::kBadMove, i, std::to_string(t.move));
    if (t.symbol == kRightEnd && t.move == 1) add(DefectKind::kMoveBeyondRightEnd, i, "");
    for (std::size_t c = 0; c < std::min(t.status.size(), t.deltas.size()); ++c) {
      if (t.status[c] == Status::kZero && t.deltas[c] < 0)
        add(DefectKind::kDecrementOnZero, i, "counter " + std::to_string(c + 1));
    }
    for (std::size_t c = 0; c < t.deltas.size(); ++c) {
      if (std::abs(t.deltas[c]) > m.max_delta())
        add(DefectKind::kDeltaTooLarge, i, "counter " + std::to_string(c + 1));
    }
    if (!seen.emplace(t.from, t.symbol, t.status).second) add(DefectKind::kNondeterministicKey, i, "");
  }
  return defects;
}

Configuration initial_configuration(const CounterAutomaton& m) {
  return Configuration{m.initial(), 0, std::vector<std::int64_t>(static_cast<std::size_t>(m.counters()), 0)};
}

Symbol scanned(std::span<const Symbol> input, std::size_t head) {
  if (head == 0) return kLeftEnd;
  if (head == input.size() + 1) return kRightEnd;
  return input[head - 1];
}

std::optional<Configuration> step(const CounterAutomaton& m, std::span<const Symbol> input,
                                  const Configuration& cfg) {
  if (cfg.state >= m.num_states() || cfg.head > input.size() + 1 ||
      cfg.counters.size() != static_cast<std::size_t>(m.counters()) ||
      std::any_of(cfg.counters.begin(), cfg.counters.end(), [](auto v) { return v < 0; }))
    throw Error(ErrorCode::kInvalidConfiguration, "configuration does not fit the automaton");

  const Transition* t = m.find(cfg.state, scanned(input, cfg.head), counters_mask(cfg.counters));
  if (t == nullptr) return std::nullopt;

  Configuration next{t->to, cfg.head + static_cast<std::size_t>(t->move), cfg.counters};
  for (std::size_t i = 0; i < next.counters.size(); ++i) {
    next.counters[i] += t->deltas[i];
    if (next.counters[i] < 0)
      throw Error(ErrorCode::kInvalidTransitionEffect,
                  "counter " + std::to_string(i + 1) + " driven negative in state " +
                      m.state_name(cfg.state));
  }
  if (next.head > input.size() + 1)
    throw Error(ErrorCode::kInvalidTransitionEffect, "head moved beyond the right endmarker");
  return next;
}

RunOutcome run(const CounterAutomaton& m, std::span<const Symbol> input, std::size_t fuel,
               bool capture_trace) {
  for (auto s : input)
    if (s < kFirstLetter || s >= m.num_symbols())
      throw Error(ErrorCode::kUnknownToken, "symbol id " + std::to_string(s));

  RunOutcome out;
  out.final_config = initial_configuration(m);
  if (capture_trace) out.trace.push_back(out.final_config);

  for (;;) {
    std::optional<Configuration> next;
    try {
      next = step(m, input, out.final_config);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kInvalidTransitionEffect) throw;
      out.verdict = Verdict::kRejectHalt;
      out.diagnostic = e.what();
      return out;
    }
    if (!next) {
      out.verdict = m.is_accepting(out.final_config.state) ? Verdict::kAccept : Verdict::kRejectHalt;
      return out;
    }
    if (out.steps == fuel) {
      out.verdict = Verdict::kFuelExhausted;
      return out;
    }
    out.final_config = std::move(*next);
    ++out.steps;
    if (capture_trace) out.trace.push_back(out.final_config);
  }
}

}  // namespace revca
