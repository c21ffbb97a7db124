#pragma once

// Shared test helpers: brute-force oracles and random instance generators.
// Oracles deliberately take routes the library forbids or avoids (symbolic
// composition, explicit run enumeration) so that agreement is meaningful.

#include <random>
#include <unordered_map>
#include <vector>

#include "alterweight/wafa.hpp"
#include "alterweight/wfta.hpp"

namespace alterweight::testsupport {

inline std::vector<Word> all_words(int letters, int max_len) {
  std::vector<Word> out{{}};
  size_t round_start = 0;
  for (int len = 1; len <= max_len; ++len) {
    size_t round_end = out.size();
    for (size_t i = round_start; i < round_end; ++i)
      for (int l = 0; l < letters; ++l) {
        Word w = out[i];
        w.push_back(l);
        out.push_back(std::move(w));
      }
    round_start = round_end;
  }
  return out;
}

// Oracle: compose the transition polynomials symbolically along the word,
// then evaluate once at tau. The library's evaluator is numeric-only, so
// this is an independent route to the same value.
inline Value symbolic_behavior(const Wafa& a, const Word& w) {
  const Semiring& s = *a.semiring;
  Polynomial p = a.initial;
  for (int letter : w) {
    std::vector<Polynomial> column;
    column.reserve(a.states.size());
    for (int q = 0; q < a.state_count(); ++q) column.push_back(a.delta[q][letter]);
    p = poly_substitute(s, p, column);
  }
  return poly_evaluate(s, p, a.final_weights);
}

inline Value random_value(std::mt19937& rng, const Semiring& s) {
  auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
  switch (s.kind()) {
    case SemiringKind::nat:
      return Value(static_cast<long>(pick(4)));
    case SemiringKind::rat: {
      int num = pick(7) - 3;
      int den = 1 + pick(2);
      return Value(Rat(num, den));
    }
    case SemiringKind::boolean:
      return Value(pick(2) == 1);
    case SemiringKind::minplus:
      return pick(4) == 0 ? Value(MinPlus::infinity())
                          : Value(MinPlus::of(pick(4)));
    case SemiringKind::poly: {
      const Semiring& base = *s.base();
      int vars = s.poly_vars();
      std::vector<Monomial> terms;
      int count = pick(3);
      for (int t = 0; t < count; ++t) {
        ExpVec e;
        int deg = pick(3);
        for (int d = 0; d < deg; ++d) e[1 + pick(vars)] += 1;
        terms.push_back({random_value(rng, base), e});
      }
      return Value(Polynomial::from_terms(base, vars, std::move(terms)));
    }
  }
  throw domain_error("unreachable");
}

struct RandomWafaConfig {
  int max_states = 3;
  int max_letters = 2;
  int max_degree = 2;
  int max_monomials = 3;
  bool bias_small = false;  // mostly 1-2 states, sparse transitions
};

inline Polynomial random_poly(std::mt19937& rng, const Semiring& s, int vars,
                              const RandomWafaConfig& cfg) {
  auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
  std::vector<Monomial> terms;
  int count = pick(cfg.max_monomials + 1);
  for (int t = 0; t < count; ++t) {
    ExpVec e;
    int deg = pick(cfg.max_degree + 1);
    for (int d = 0; d < deg; ++d) e[1 + pick(vars)] += 1;
    terms.push_back({random_value(rng, s), e});
  }
  return Polynomial::from_terms(s, vars, std::move(terms));
}

inline Wafa random_wafa(std::mt19937& rng, SemiringPtr semiring,
                        const RandomWafaConfig& cfg = {}) {
  auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
  Wafa a;
  a.semiring = std::move(semiring);
  int n = cfg.bias_small ? 1 + pick(2) : 1 + pick(cfg.max_states);
  int letters = 1 + pick(cfg.max_letters);
  for (int i = 0; i < n; ++i) a.states.push_back("q" + std::to_string(i + 1));
  for (int l = 0; l < letters; ++l) a.letters.push_back(std::string(1, 'a' + l));
  a.delta.assign(n, std::vector<Polynomial>(letters));
  for (int q = 0; q < n; ++q)
    for (int l = 0; l < letters; ++l) {
      if (cfg.bias_small && pick(3) == 0) {
        a.delta[q][l] = Polynomial::zero(n);
        continue;
      }
      a.delta[q][l] = random_poly(rng, *a.semiring, n, cfg);
    }
  a.initial = random_poly(rng, *a.semiring, n, cfg);
  for (int q = 0; q < n; ++q) a.final_weights.push_back(random_value(rng, *a.semiring));
  return a;
}

// All ground trees of depth at most max_depth, smallest first.
inline std::vector<TreePtr> all_trees(const RankedAlphabet& alphabet, int max_depth) {
  std::vector<TreePtr> level;
  for (const auto& [name, rank] : alphabet.symbols)
    if (rank == 0) level.push_back(Tree::symbol(name));
  for (int d = 1; d <= max_depth; ++d) {
    std::vector<TreePtr> next;
    for (const auto& [name, rank] : alphabet.symbols) {
      if (rank == 0) {
        next.push_back(Tree::symbol(name));
        continue;
      }
      std::vector<size_t> pick(rank, 0);
      while (true) {
        std::vector<TreePtr> kids(rank);
        for (int i = 0; i < rank; ++i) kids[i] = level[pick[i]];
        next.push_back(Tree::symbol(name, std::move(kids)));
        int j = rank - 1;
        while (j >= 0 && pick[j] + 1 == level.size()) pick[j--] = 0;
        if (j < 0) break;
        ++pick[j];
      }
    }
    level = std::move(next);
  }
  return level;
}

// Oracle: every run of a tree automaton, explicitly, as (root state, run
// weight) pairs; zero-weight runs are dropped, which does not change any
// sum. Shared subtrees may share run lists because runs label positions
// independently.
using RunList = std::vector<std::pair<int, Value>>;

inline const RunList& collect_runs(
    const Wfta& b, const Tree* t,
    std::unordered_map<const Tree*, RunList>& memo) {
  auto hit = memo.find(t);
  if (hit != memo.end()) return hit->second;
  const Semiring& s = *b.semiring;
  std::vector<const RunList*> kids;
  for (const TreePtr& c : t->children()) kids.push_back(&collect_runs(b, c.get(), memo));
  RunList out;
  int g = b.alphabet.index(t->label());
  for (const auto& [key, weight] : b.transitions) {
    if (key.symbol != g) continue;
    bool impossible = false;
    for (const RunList* kid : kids)
      if (kid->empty()) impossible = true;
    if (impossible) continue;
    std::vector<size_t> pick(kids.size(), 0);
    while (true) {
      Value w = weight;
      bool match = true;
      for (size_t i = 0; i < kids.size() && match; ++i) {
        const auto& [state, kw] = (*kids[i])[pick[i]];
        if (state != key.from[i]) match = false;
        else w = s.mul(w, kw);
      }
      if (match && !s.is_zero(w)) out.emplace_back(key.to, w);
      int j = static_cast<int>(kids.size()) - 1;
      while (j >= 0 && pick[j] + 1 == kids[j]->size()) pick[j--] = 0;
      if (j < 0) break;
      ++pick[j];
    }
  }
  return memo.emplace(t, std::move(out)).first->second;
}

inline std::vector<Value> runs_state_behavior(const Wfta& b, const TreePtr& t) {
  std::unordered_map<const Tree*, RunList> memo;
  const Semiring& s = *b.semiring;
  std::vector<Value> out(b.state_count(), s.zero());
  for (const auto& [state, w] : collect_runs(b, t.get(), memo))
    out[state] = s.add(out[state], w);
  return out;
}

inline Value runs_behavior(const Wfta& b, const TreePtr& t) {
  const Semiring& s = *b.semiring;
  std::vector<Value> v = runs_state_behavior(b, t);
  Value out = s.zero();
  for (int q = 0; q < b.state_count(); ++q)
    out = s.add(out, s.mul(b.root_weights[q], v[q]));
  return out;
}

inline Wfta random_wfta(std::mt19937& rng, SemiringPtr semiring,
                        const RankedAlphabet& alphabet, int states,
                        int density_percent = 50) {
  auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
  Wfta b;
  b.semiring = std::move(semiring);
  b.alphabet = alphabet;
  for (int i = 0; i < states; ++i) b.states.push_back("q" + std::to_string(i + 1));
  for (int g = 0; g < static_cast<int>(alphabet.symbols.size()); ++g) {
    int rank = alphabet.symbols[g].second;
    long long tuples = 1;
    for (int i = 0; i < rank; ++i) tuples *= states;
    for (long long tp = 0; tp < tuples; ++tp)
      for (int q = 0; q < states; ++q) {
        if (pick(100) >= density_percent) continue;
        Value w = random_value(rng, *b.semiring);
        if (b.semiring->is_zero(w)) continue;
        WftaKey key;
        key.symbol = g;
        key.to = q;
        long long rest = tp;
        key.from.assign(rank, 0);
        for (int i = rank - 1; i >= 0; --i) {
          key.from[i] = static_cast<int>(rest % states);
          rest /= states;
        }
        b.transitions.emplace(key, w);
      }
  }
  for (int i = 0; i < states; ++i)
    b.root_weights.push_back(random_value(rng, *b.semiring));
  return b;
}

}  // namespace alterweight::testsupport
