#pragma once

#include "alterweight/polynomial.hpp"

namespace alterweight {

// A word as letter indices into an automaton's alphabet.
using Word = std::vector<int>;

// Weighted alternating finite automaton. States are ordered and variable
// x_i of a polynomial stands for states[i-1]; delta[q][a] is the transition
// polynomial of states[q] under letters[a], with zero meaning no move.
struct Wafa {
  SemiringPtr semiring;
  std::vector<std::string> states;
  std::vector<std::string> letters;
  std::vector<std::vector<Polynomial>> delta;  // [state][letter]
  Polynomial initial;
  std::vector<Value> final_weights;

  int state_count() const { return static_cast<int>(states.size()); }
  int letter_count() const { return static_cast<int>(letters.size()); }
  int letter_index(const std::string&) const;  // -1 when unknown
};

// Structural validation: nonempty ordered state set, distinct printable
// names, matching dimensions and variable counts.
void check_wafa(const Wafa&);

// Single-character alphabets read words letter-by-letter, everything else
// is whitespace separated; the empty string is the empty word.
Word parse_word(const Wafa&, const std::string&);
std::string word_to_string(const Wafa&, const Word&);

// Per-state values for a word, computed right to left: the empty word has
// the final weights, and one letter costs one numeric evaluation of each
// transition polynomial. The evaluator never composes polynomials
// symbolically; that route blows up exponentially.
std::vector<Value> state_behavior(const Wafa&, const Word&);
Value behavior(const Wafa&, const Word&);

// Normal-form property flags. Nice means: canonical monomial sums, no
// constant monomials anywhere, and the initial polynomial is exactly x1.
// Pure adds: every monomial coefficient is 1. Equalized means all
// transition monomials share one degree.
bool is_nice(const Wafa&);
bool is_pure(const Wafa&);
bool is_equalized(const Wafa&);

// True iff the initial polynomial and every transition polynomial is a
// linear combination of single states.
bool is_wfa(const Wafa&);

// Behavior-preserving normal forms. make_nice works on anything; the other
// two insist on a nice input.
Wafa make_nice(const Wafa&);
Wafa make_pure(const Wafa&);
Wafa equalize(const Wafa&);

// Pointwise product of behaviors via a disjoint state union and a product
// initial polynomial. Requires identical semiring and alphabet.
Wafa hadamard_wafa(const Wafa&, const Wafa&);

}  // namespace alterweight
