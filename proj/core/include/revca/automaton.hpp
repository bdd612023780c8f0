#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "revca/error.hpp"

namespace revca {

using StateId = std::uint32_t;
using Symbol = std::uint32_t;
using Word = std::vector<Symbol>;

// Endmarkers occupy the first two symbol ids; alphabet tokens follow.
inline constexpr Symbol kLeftEnd = 0;
inline constexpr Symbol kRightEnd = 1;
inline constexpr Symbol kFirstLetter = 2;

inline constexpr std::string_view kLeftEndText = "<";
inline constexpr std::string_view kRightEndText = ">";

enum class Status : std::uint8_t { kZero, kPositive };
using StatusVector = std::vector<Status>;

/// Componentwise zero test. Throws kNegativeCounter on a negative value.
StatusVector status_of(std::span<const std::int64_t> counters);

/// Bit i set iff counter i is positive.
std::uint32_t status_mask(const StatusVector& statuses);
StatusVector status_from_mask(std::uint32_t mask, int counters);

struct Transition {
  StateId from = 0;
  Symbol symbol = 0;
  StatusVector status;
  StateId to = 0;
  int move = 0;             // 0 stationary, 1 right
  std::vector<int> deltas;  // one per counter, |d| <= max_delta

  friend bool operator==(const Transition&, const Transition&) = default;
};

// A deterministic one-way k-counter automaton. Built incrementally, then
// treated as an immutable value: every query is const and thread-safe.
class CounterAutomaton {
 public:
  explicit CounterAutomaton(int counters = 0, int max_delta = 1);

  StateId add_state(std::string name);
  Symbol add_token(std::string text);
  void set_initial(StateId state);
  void set_accepting(StateId state, bool accepting = true);
  // Duplicate keys are kept in the transition list so validate() can report
  // them; lookups resolve to the first one added.
  void add_transition(Transition t);

  int counters() const noexcept { return counters_; }
  int max_delta() const noexcept { return max_delta_; }
  std::size_t num_states() const noexcept { return states_.size(); }
  std::size_t num_symbols() const noexcept { return kFirstLetter + alphabet_.size(); }

  const std::string& state_name(StateId s) const { return states_.at(s); }
  std::optional<StateId> find_state(std::string_view name) const;
  const std::vector<std::string>& alphabet() const noexcept { return alphabet_; }
  std::string symbol_text(Symbol sym) const;
  /// Resolves an alphabet token or one of the endmarker spellings.
  std::optional<Symbol> find_symbol(std::string_view text) const;

  StateId initial() const noexcept { return initial_; }
  bool is_accepting(StateId s) const { return accepting_.at(s); }
  const std::vector<Transition>& transitions() const noexcept { return transitions_; }

  const Transition* find(StateId state, Symbol sym, std::uint32_t mask) const;

  /// Maps whitespace-free token strings onto symbols; throws kUnknownToken.
  Word encode(std::span<const std::string> tokens) const;
  std::vector<std::string> decode(std::span<const Symbol> word) const;

  /// Structural equality by names: same states, alphabet, counters, initial
  /// and accepting states, and the same set of transitions.
  friend bool operator==(const CounterAutomaton& a, const CounterAutomaton& b);

 private:
  struct Key {
    StateId state;
    Symbol symbol;
    std::uint32_t mask;
    friend bool operator==(const Key&, const Key&) = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
      std::uint64_t h = (std::uint64_t{k.state} << 32) ^ (std::uint64_t{k.symbol} << 8) ^ k.mask;
      h ^= h >> 33;
      h *= 0xff51afd7ed558ccdULL;
      h ^= h >> 33;
      return static_cast<std::size_t>(h);
    }
  };

  int counters_;
  int max_delta_;
  std::vector<std::string> states_;
  std::unordered_map<std::string, StateId> state_index_;
  std::vector<std::string> alphabet_;
  std::unordered_map<std::string, Symbol> token_index_;
  StateId initial_ = 0;
  std::vector<bool> accepting_;
  std::vector<Transition> transitions_;
  std::unordered_map<Key, std::size_t, KeyHash> index_;
};

enum class DefectKind {
  kNondeterministicKey,
  kDecrementOnZero,
  kUnknownState,
  kUnknownToken,
  kDeltaTooLarge,
  kStatusLength,
  kDeltaLength,
  kBadMove,
  kMoveBeyondRightEnd,
  kBadInitial,
};

struct Defect {
  DefectKind kind;
  std::string message;
};

const char* to_string(DefectKind kind);

/// Every violated well-formedness condition; empty means well-formed.
std::vector<Defect> validate(const CounterAutomaton& m);

struct Configuration {
  StateId state = 0;
  std::size_t head = 0;  // 0 scans the left endmarker, |w|+1 the right one
  std::vector<std::int64_t> counters;

  friend bool operator==(const Configuration&, const Configuration&) = default;
};

Configuration initial_configuration(const CounterAutomaton& m);

/// The symbol under the head, endmarkers included.
Symbol scanned(std::span<const Symbol> input, std::size_t head);

/// One forward step, or nullopt when the machine halts.
/// Throws kInvalidConfiguration on a malformed configuration and
/// kInvalidTransitionEffect when a counter would go negative.
std::optional<Configuration> step(const CounterAutomaton& m, std::span<const Symbol> input,
                                  const Configuration& cfg);

enum class Verdict { kAccept, kRejectHalt, kFuelExhausted };
const char* to_string(Verdict v);

struct RunOutcome {
  Verdict verdict = Verdict::kRejectHalt;
  std::size_t steps = 0;
  Configuration final_config;
  std::vector<Configuration> trace;  // filled only when requested
  std::string diagnostic;
};

RunOutcome run(const CounterAutomaton& m, std::span<const Symbol> input, std::size_t fuel,
               bool capture_trace = false);

/// Advances w to the next word of the same length in lexicographic order.
inline bool next_word(Word& w, std::size_t alphabet_size) {
  for (std::size_t i = w.size(); i-- > 0;) {
    if (w[i] + 1 < kFirstLetter + alphabet_size) {
      ++w[i];
      return true;
    }
    w[i] = kFirstLetter;
  }
  return false;
}

/// Calls fn(word) for every word over the alphabet of length <= max_len,
/// in shortlex order. Stops early (returning false) when fn returns false.
template <typename Fn>
bool for_each_word(std::size_t alphabet_size, std::size_t max_len, Fn&& fn) {
  for (std::size_t len = 0; len <= max_len; ++len) {
    if (len > 0 && alphabet_size == 0) break;
    Word w(len, kFirstLetter);
    do {
      if (!fn(static_cast<const Word&>(w))) return false;
    } while (next_word(w, alphabet_size));
  }
  return true;
}

}  // namespace revca
