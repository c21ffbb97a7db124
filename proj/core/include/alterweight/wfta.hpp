#pragma once

#include <map>

#include "alterweight/polynomial.hpp"
#include "alterweight/tree.hpp"

namespace alterweight {

// Transition key of a weighted bottom-up tree automaton: symbol index into
// the alphabet, child states left to right, target state. Map order over
// these keys is the canonical iteration and serialization order.
struct WftaKey {
  int symbol = 0;
  std::vector<int> from;
  int to = 0;

  friend bool operator<(const WftaKey& a, const WftaKey& b) {
    if (a.symbol != b.symbol) return a.symbol < b.symbol;
    if (a.from != b.from) return a.from < b.from;
    return a.to < b.to;
  }
};

// Weighted bottom-up finite tree automaton with sparse transitions;
// missing entries weigh zero, stored entries must not.
struct Wfta {
  SemiringPtr semiring;
  std::vector<std::string> states;
  RankedAlphabet alphabet;
  std::map<WftaKey, Value> transitions;
  std::vector<Value> root_weights;

  int state_count() const { return static_cast<int>(states.size()); }
  int state_index(const std::string&) const;  // -1 when unknown
};

void check_wfta(const Wfta&);

// Bottom-up dynamic program, one value vector per distinct subtree; shared
// subtrees are computed once. The per-state value is the sum over all runs
// ending in that state of the product of local transition weights.
std::vector<Value> wfta_state_behavior(const Wfta&, const TreePtr&);
Value wfta_behavior(const Wfta&, const TreePtr&);

// Weight table of a pattern over the alphabet plus the single variable x1.
// Entry (p_1..p_r, q) is the weight of reaching q when the variable
// occurrences, in left-to-right order, are pinned to those states; ground
// patterns have r = 0 and reproduce the state behavior.
struct ExtendedDelta {
  int occurrences = 0;
  std::vector<Value> table;  // indexed by tuple-major, target-state-minor
};
ExtendedDelta extended_delta_table(const Wfta&, const TreePtr& pattern);
Value extended_delta(const Wfta&, const TreePtr& pattern,
                     const std::vector<int>& pinned, int target);

// Product-state automaton multiplying behaviors pointwise.
Wfta hadamard_wfta(const Wfta&, const Wfta&);

// Deterministic complete tree automaton: a boolean Wfta where every
// (symbol, tuple) has exactly one successor, plus that successor map.
struct Dta {
  Wfta automaton;
  std::map<std::pair<int, std::vector<int>>, int> next;
};

// Validates determinism and completes a partial automaton with an implicit
// rejecting sink. Rejects non-boolean semirings and conflicting entries.
Dta make_dta(Wfta);

int dta_state(const Dta&, const TreePtr&);
bool dta_accepts(const Dta&, const TreePtr&);

// States realized by at least one ground tree.
std::vector<bool> dta_reachable(const Dta&);

// The characteristic function of D's language as a weighted automaton
// over an arbitrary semiring: every tree has exactly one run of weight 1.
Wfta char_lift(const Dta&, SemiringPtr);

// Preimage automaton: accepts t iff D accepts the image of t. The new
// successor of (g, tuple) evaluates the image pattern of g through D's
// successor map with variables pinned to the tuple.
Dta dta_inverse_hom(const Dta&, const TreeHom&);

// Finite sum of weighted characteristic functions of recognizable tree
// languages. The partition flag records that the cells are pairwise
// disjoint and cover all trees.
struct StepCell {
  Dta language;
  Value weight;
};
struct StepFunction {
  SemiringPtr semiring;
  std::vector<StepCell> cells;
  bool partition = false;
};

Value step_eval(const StepFunction&, const TreePtr&);

// Refines the cells into a genuine partition via the product automaton of
// all cell languages, grouping product states by their acceptance pattern;
// each nonempty group becomes one cell weighing the sum of the accepting
// cells' weights.
StepFunction step_partition(const StepFunction&);

// Composition with a tree homomorphism: every cell is pulled back through
// dta_inverse_hom. Requires the partition flag.
StepFunction step_compose_hom(const StepFunction&, const TreeHom&);

// Audit used by tests: do the cells partition the set of all trees?
bool step_is_partition(const StepFunction&);

}  // namespace alterweight
