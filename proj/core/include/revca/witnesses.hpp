#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "revca/automaton.hpp"

namespace revca {

using BigInt = boost::multiprecision::cpp_int;

// L_k words are written over a, b, A (barred a), B (barred b) and $.

/// Letterwise a,A -> 0 and b,B -> 1. Throws kUnknownLetter.
std::string phi(std::string_view w);

/// Most-significant bit first; leading zeros allowed, "" is 0.
BigInt eta(std::string_view bits);

/// Bits at 1-indexed positions i, k+i, 2k+i, ... Throws kLengthNotDivisible.
std::string scattered_factor(std::string_view bits, int k, int i);

bool decide_Lk(int k, std::string_view w);

/// A member of L_k with |u z1| = j*k and i dollars. Deterministic in seed.
std::string gen_Lk_member(int k, int j, int i, std::uint64_t seed);

/// Membership in ((aa+a)(bb+b))*(aa+a+lambda) by a fixed 6-state recognizer.
bool decide_regular_witness(std::string_view w);

/// The one-counter machine for |w|_a = |w|_b with its twelve transitions.
CounterAutomaton build_eq_ab();

/// |w|_{a1} = ... = |w|_{ak} over letters a, b, c, ...; k-1 counters.
CounterAutomaton build_balanced(int k);

/// The regular witness as a counter-free automaton.
CounterAutomaton build_regular_witness();

}  // namespace revca
