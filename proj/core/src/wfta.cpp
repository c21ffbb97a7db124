#include "alterweight/wfta.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <set>
#include <unordered_map>

#include "names.hpp"

namespace alterweight {

namespace {

bool printable_name(const std::string& s) {
  if (s.empty() || s == "#") return false;
  return s.find_first_of("(),: \t\n#") == std::string::npos;
}

// Enumeration guard: tuple spaces in determinization, pattern tables and
// product constructions are desk scale by design; refuse to explode.
long long checked_space(long long base, int exp, const char* what) {
  long long size = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && size > 4'000'000 / (base ? base : 1))
      throw resource_error(std::string(what) + " needs more than 4e6 entries");
    size *= base;
  }
  if (size > 4'000'000)
    throw resource_error(std::string(what) + " needs more than 4e6 entries");
  return size;
}

std::pair<std::map<WftaKey, Value>::const_iterator,
          std::map<WftaKey, Value>::const_iterator>
symbol_range(const Wfta& b, int symbol) {
  WftaKey lo{symbol, {}, std::numeric_limits<int>::min()};
  WftaKey hi{symbol + 1, {}, std::numeric_limits<int>::min()};
  return {b.transitions.lower_bound(lo), b.transitions.lower_bound(hi)};
}

}  // namespace

int Wfta::state_index(const std::string& name) const {
  for (size_t i = 0; i < states.size(); ++i)
    if (states[i] == name) return static_cast<int>(i);
  return -1;
}

void check_wfta(const Wfta& b) {
  if (!b.semiring) throw domain_error("automaton has no semiring");
  int n = b.state_count();
  if (n == 0) throw domain_error("automaton needs at least one state");
  std::set<std::string> seen;
  for (const std::string& q : b.states) {
    if (!printable_name(q)) throw domain_error("bad state name '" + q + "'");
    if (!seen.insert(q).second) throw domain_error("duplicate state '" + q + "'");
  }
  if (b.alphabet.symbols.empty()) throw domain_error("empty ranked alphabet");
  seen.clear();
  for (const auto& [name, rank] : b.alphabet.symbols) {
    if (name.empty()) throw domain_error("empty symbol name");
    if (rank < 0) throw domain_error("negative rank for symbol '" + name + "'");
    if (!seen.insert(name).second)
      throw domain_error("duplicate symbol '" + name + "'");
  }
  if (static_cast<int>(b.root_weights.size()) != n)
    throw domain_error("root weight count does not match the states");
  int symbols = static_cast<int>(b.alphabet.symbols.size());
  for (const auto& [key, weight] : b.transitions) {
    if (key.symbol < 0 || key.symbol >= symbols)
      throw domain_error("transition symbol index out of range");
    int rank = b.alphabet.symbols[key.symbol].second;
    if (static_cast<int>(key.from.size()) != rank)
      throw domain_error("transition tuple arity does not match the rank of '" +
                         b.alphabet.symbols[key.symbol].first + "'");
    for (int p : key.from)
      if (p < 0 || p >= n) throw domain_error("transition state index out of range");
    if (key.to < 0 || key.to >= n)
      throw domain_error("transition state index out of range");
    if (b.semiring->is_zero(weight))
      throw domain_error("stored transition with weight zero");
  }
}

namespace {

std::vector<Value> state_behavior_impl(
    const Wfta& b, const Tree* t,
    std::unordered_map<const Tree*, std::vector<Value>>& memo) {
  auto hit = memo.find(t);
  if (hit != memo.end()) return hit->second;
  const Semiring& s = *b.semiring;
  int n = b.state_count();
  std::vector<std::vector<Value>> kids;
  kids.reserve(t->children().size());
  for (const TreePtr& c : t->children())
    kids.push_back(state_behavior_impl(b, c.get(), memo));

  std::vector<Value> out(n, s.zero());
  int g = b.alphabet.index(t->label());
  auto [it, end] = symbol_range(b, g);
  for (; it != end; ++it) {
    Value w = it->second;
    for (size_t i = 0; i < it->first.from.size(); ++i)
      w = s.mul(w, kids[i][it->first.from[i]]);
    out[it->first.to] = s.add(out[it->first.to], w);
  }
  memo.emplace(t, out);
  return out;
}

}  // namespace

std::vector<Value> wfta_state_behavior(const Wfta& b, const TreePtr& t) {
  check_tree(b.alphabet, t, false);
  std::unordered_map<const Tree*, std::vector<Value>> memo;
  return state_behavior_impl(b, t.get(), memo);
}

Value wfta_behavior(const Wfta& b, const TreePtr& t) {
  const Semiring& s = *b.semiring;
  std::vector<Value> v = wfta_state_behavior(b, t);
  Value out = s.zero();
  for (int q = 0; q < b.state_count(); ++q)
    out = s.add(out, s.mul(b.root_weights[q], v[q]));
  return out;
}

namespace {

void require_x1_only(const TreePtr& t) {
  if (t->is_var()) {
    if (t->var_index() != 1)
      throw domain_error("patterns may only use the variable x1");
    return;
  }
  for (const TreePtr& c : t->children()) require_x1_only(c);
}

ExtendedDelta extended_delta_impl(const Wfta& b, const TreePtr& t) {
  const Semiring& s = *b.semiring;
  int n = b.state_count();
  ExtendedDelta out;
  if (t->is_var()) {
    out.occurrences = 1;
    out.table.assign(static_cast<size_t>(n) * n, s.zero());
    for (int p = 0; p < n; ++p) out.table[static_cast<size_t>(p) * n + p] = s.one();
    return out;
  }

  std::vector<ExtendedDelta> kids;
  kids.reserve(t->children().size());
  for (const TreePtr& c : t->children()) kids.push_back(extended_delta_impl(b, c));
  int k = static_cast<int>(kids.size());
  for (const ExtendedDelta& kid : kids) out.occurrences += kid.occurrences;

  long long tuples = checked_space(n, out.occurrences, "extended transition table");
  out.table.assign(static_cast<size_t>(tuples) * n, s.zero());

  std::vector<long long> kid_tuples(k);
  for (int i = 0; i < k; ++i)
    kid_tuples[i] = checked_space(n, kids[i].occurrences, "extended transition table");

  int g = b.alphabet.index(t->label());
  auto [it, end] = symbol_range(b, g);
  std::vector<long long> pick(k, 0);
  for (; it != end; ++it) {
    const WftaKey& key = it->first;
    // odometer over the children's tuple spaces; the combined index is the
    // concatenation of the children's pinned-state tuples
    std::fill(pick.begin(), pick.end(), 0);
    while (true) {
      Value w = it->second;
      long long combined = 0;
      for (int i = 0; i < k; ++i) {
        combined = combined * kid_tuples[i] + pick[i];
        w = s.mul(w, kids[i].table[static_cast<size_t>(pick[i]) * n + key.from[i]]);
      }
      size_t slot = static_cast<size_t>(combined) * n + key.to;
      out.table[slot] = s.add(out.table[slot], w);
      int j = k - 1;
      while (j >= 0 && pick[j] + 1 == kid_tuples[j]) pick[j--] = 0;
      if (j < 0) break;
      ++pick[j];
    }
  }
  return out;
}

}  // namespace

ExtendedDelta extended_delta_table(const Wfta& b, const TreePtr& pattern) {
  check_wfta(b);
  check_tree(b.alphabet, pattern, true);
  require_x1_only(pattern);
  return extended_delta_impl(b, pattern);
}

Value extended_delta(const Wfta& b, const TreePtr& pattern,
                     const std::vector<int>& pinned, int target) {
  ExtendedDelta ext = extended_delta_table(b, pattern);
  int n = b.state_count();
  if (static_cast<int>(pinned.size()) != ext.occurrences)
    throw domain_error("pinned tuple length " + std::to_string(pinned.size()) +
                       " does not match the " + std::to_string(ext.occurrences) +
                       " variable occurrences");
  if (target < 0 || target >= n) throw domain_error("target state out of range");
  long long index = 0;
  for (int p : pinned) {
    if (p < 0 || p >= n) throw domain_error("pinned state out of range");
    index = index * n + p;
  }
  return ext.table[static_cast<size_t>(index) * n + target];
}

Wfta hadamard_wfta(const Wfta& a, const Wfta& b) {
  check_wfta(a);
  check_wfta(b);
  if (a.semiring->name() != b.semiring->name())
    throw domain_error("hadamard product needs one semiring, got " +
                       a.semiring->name() + " and " + b.semiring->name());
  if (!(a.alphabet == b.alphabet))
    throw domain_error("hadamard product needs identical ranked alphabets");
  const Semiring& s = *a.semiring;
  int na = a.state_count();
  int nb = b.state_count();
  checked_space(na, 1, "product automaton");
  checked_space(static_cast<long long>(na) * nb, 1, "product automaton");

  Wfta c;
  c.semiring = a.semiring;
  c.alphabet = a.alphabet;
  std::set<std::string> taken;
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j)
      c.states.push_back(uniquify_name(a.states[i] + "." + b.states[j], taken));
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j)
      c.root_weights.push_back(s.mul(a.root_weights[i], b.root_weights[j]));

  for (int g = 0; g < static_cast<int>(a.alphabet.symbols.size()); ++g) {
    auto [ia, enda] = symbol_range(a, g);
    for (; ia != enda; ++ia) {
      auto [ib, endb] = symbol_range(b, g);
      for (; ib != endb; ++ib) {
        Value w = s.mul(ia->second, ib->second);
        if (s.is_zero(w)) continue;
        WftaKey key;
        key.symbol = g;
        key.to = ia->first.to * nb + ib->first.to;
        key.from.resize(ia->first.from.size());
        for (size_t i = 0; i < key.from.size(); ++i)
          key.from[i] = ia->first.from[i] * nb + ib->first.from[i];
        c.transitions.emplace(key, w);
      }
    }
  }
  return c;
}

namespace {

// All state tuples of the given length, in lexicographic order.
void for_each_tuple(int states, int length, const char* what,
                    const std::function<void(const std::vector<int>&)>& fn) {
  checked_space(states, length, what);
  std::vector<int> tuple(length, 0);
  if (length == 0) {
    fn(tuple);
    return;
  }
  if (states == 0) return;
  while (true) {
    fn(tuple);
    int j = length - 1;
    while (j >= 0 && tuple[j] + 1 == states) tuple[j--] = 0;
    if (j < 0) break;
    ++tuple[j];
  }
}

}  // namespace

Dta make_dta(Wfta w) {
  check_wfta(w);
  if (w.semiring->kind() != SemiringKind::boolean)
    throw domain_error("deterministic automata live over the boolean semiring");

  Dta d;
  d.automaton = std::move(w);
  Wfta& a = d.automaton;
  for (const auto& [key, weight] : a.transitions) {
    auto [it, fresh] = d.next.emplace(std::make_pair(key.symbol, key.from), key.to);
    if (!fresh)
      throw domain_error("nondeterministic successor for symbol '" +
                         a.alphabet.symbols[key.symbol].first + "'");
  }

  int n = a.state_count();
  bool incomplete = false;
  for (int g = 0; !incomplete && g < static_cast<int>(a.alphabet.symbols.size()); ++g)
    for_each_tuple(n, a.alphabet.symbols[g].second, "determinization", [&](const std::vector<int>& tuple) {
      if (!d.next.count({g, tuple})) incomplete = true;
    });

  if (incomplete) {
    std::set<std::string> taken(a.states.begin(), a.states.end());
    a.states.push_back(uniquify_name("dead", taken));
    a.root_weights.push_back(a.semiring->zero());
    ++n;
    int sink = n - 1;
    for (int g = 0; g < static_cast<int>(a.alphabet.symbols.size()); ++g)
      for_each_tuple(n, a.alphabet.symbols[g].second, "determinization", [&](const std::vector<int>& tuple) {
        d.next.emplace(std::make_pair(g, tuple), sink);
      });
  }

  // keep the sparse transition map in lockstep with the successor map
  a.transitions.clear();
  for (const auto& [key, to] : d.next)
    a.transitions.emplace(WftaKey{key.first, key.second, to}, a.semiring->one());
  return d;
}

namespace {

int dta_state_impl(const Dta& d, const Tree* t,
                   std::unordered_map<const Tree*, int>& memo) {
  auto hit = memo.find(t);
  if (hit != memo.end()) return hit->second;
  std::vector<int> tuple;
  tuple.reserve(t->children().size());
  for (const TreePtr& c : t->children()) tuple.push_back(dta_state_impl(d, c.get(), memo));
  int g = d.automaton.alphabet.index(t->label());
  auto it = d.next.find({g, tuple});
  if (it == d.next.end())
    throw domain_error("incomplete deterministic automaton at symbol '" +
                       t->label() + "'");
  memo.emplace(t, it->second);
  return it->second;
}

}  // namespace

int dta_state(const Dta& d, const TreePtr& t) {
  check_tree(d.automaton.alphabet, t, false);
  std::unordered_map<const Tree*, int> memo;
  return dta_state_impl(d, t.get(), memo);
}

bool dta_accepts(const Dta& d, const TreePtr& t) {
  return d.automaton.semiring->is_one(d.automaton.root_weights[dta_state(d, t)]);
}

std::vector<bool> dta_reachable(const Dta& d) {
  int n = d.automaton.state_count();
  std::vector<bool> reach(n, false);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [key, to] : d.next) {
      if (reach[to]) continue;
      bool all = true;
      for (int p : key.second)
        if (!reach[p]) { all = false; break; }
      if (all) {
        reach[to] = true;
        changed = true;
      }
    }
  }
  return reach;
}

Wfta char_lift(const Dta& d, SemiringPtr semiring) {
  if (!semiring) throw domain_error("char_lift needs a semiring");
  const Semiring& s = *semiring;
  Wfta b;
  b.semiring = semiring;
  b.states = d.automaton.states;
  b.alphabet = d.automaton.alphabet;
  for (const auto& [key, to] : d.next)
    b.transitions.emplace(WftaKey{key.first, key.second, to}, s.one());
  for (const Value& w : d.automaton.root_weights)
    b.root_weights.push_back(lift_bool(s, d.automaton.semiring->is_one(w)));
  return b;
}

namespace {

int eval_pattern_state(const Dta& d, const TreePtr& pattern,
                       const std::vector<int>& pinned) {
  if (pattern->is_var()) return pinned[pattern->var_index() - 1];
  std::vector<int> tuple;
  tuple.reserve(pattern->children().size());
  for (const TreePtr& c : pattern->children())
    tuple.push_back(eval_pattern_state(d, c, pinned));
  int g = d.automaton.alphabet.index(pattern->label());
  auto it = d.next.find({g, tuple});
  if (it == d.next.end())
    throw domain_error("incomplete deterministic automaton at symbol '" +
                       pattern->label() + "'");
  return it->second;
}

}  // namespace

Dta dta_inverse_hom(const Dta& d, const TreeHom& h) {
  if (!(h.target == d.automaton.alphabet))
    throw domain_error("homomorphism target does not match the automaton alphabet");
  Dta out;
  out.automaton.semiring = d.automaton.semiring;
  out.automaton.states = d.automaton.states;
  out.automaton.alphabet = h.source;
  out.automaton.root_weights = d.automaton.root_weights;
  int n = d.automaton.state_count();
  for (int g = 0; g < static_cast<int>(h.source.symbols.size()); ++g) {
    const TreePtr& pattern = h.patterns.at(h.source.symbols[g].first);
    for_each_tuple(n, h.source.symbols[g].second, "inverse homomorphism",
                   [&](const std::vector<int>& tuple) {
                     int to = eval_pattern_state(d, pattern, tuple);
                     out.next.emplace(std::make_pair(g, tuple), to);
                     out.automaton.transitions.emplace(WftaKey{g, tuple, to},
                                                       d.automaton.semiring->one());
                   });
  }
  return out;
}

Value step_eval(const StepFunction& f, const TreePtr& t) {
  if (!f.semiring) throw domain_error("step function has no semiring");
  const Semiring& s = *f.semiring;
  Value out = s.zero();
  for (const StepCell& cell : f.cells)
    if (dta_accepts(cell.language, t)) out = s.add(out, cell.weight);
  return out;
}

namespace {

struct CellProduct {
  Dta product;                  // root weights all zero; set per derived cell
  std::vector<std::uint64_t> masks;  // bit i: cell i accepts at this state
};

CellProduct product_of_cells(const StepFunction& f) {
  if (f.cells.empty()) throw domain_error("step function needs at least one cell");
  if (f.cells.size() > 32) throw resource_error("more than 32 step cells");
  const RankedAlphabet& alphabet = f.cells.front().language.automaton.alphabet;
  for (const StepCell& cell : f.cells)
    if (!(cell.language.automaton.alphabet == alphabet))
      throw domain_error("step cells disagree on the ranked alphabet");

  int k = static_cast<int>(f.cells.size());
  long long total = 1;
  for (const StepCell& cell : f.cells)
    total = checked_space(total * cell.language.automaton.state_count(), 1,
                          "cell product");

  CellProduct out;
  Wfta& a = out.product.automaton;
  a.semiring = bool_semiring();
  a.alphabet = alphabet;
  out.masks.assign(static_cast<size_t>(total), 0);

  // state index: mixed radix over the cells, first cell most significant
  std::vector<int> sizes(k);
  for (int i = 0; i < k; ++i) sizes[i] = f.cells[i].language.automaton.state_count();

  std::set<std::string> taken;
  std::vector<int> digits(k, 0);
  for (long long idx = 0; idx < total; ++idx) {
    long long rest = idx;
    for (int i = k - 1; i >= 0; --i) {
      digits[i] = static_cast<int>(rest % sizes[i]);
      rest /= sizes[i];
    }
    std::string name;
    std::uint64_t mask = 0;
    for (int i = 0; i < k; ++i) {
      const Wfta& cell = f.cells[i].language.automaton;
      if (i) name += ".";
      name += cell.states[digits[i]];
      if (cell.semiring->is_one(cell.root_weights[digits[i]]))
        mask |= std::uint64_t(1) << i;
    }
    a.states.push_back(uniquify_name(name, taken));
    a.root_weights.push_back(a.semiring->zero());
    out.masks[static_cast<size_t>(idx)] = mask;
  }

  for (int g = 0; g < static_cast<int>(alphabet.symbols.size()); ++g) {
    int rank = alphabet.symbols[g].second;
    for_each_tuple(static_cast<int>(total), rank, "cell product",
                   [&](const std::vector<int>& tuple) {
                     long long to = 0;
                     for (int i = 0; i < k; ++i) {
                       std::vector<int> component(rank);
                       for (int j = 0; j < rank; ++j) {
                         long long rest = tuple[j];
                         for (int m = k - 1; m > i; --m) rest /= sizes[m];
                         component[j] = static_cast<int>(rest % sizes[i]);
                       }
                       const Dta& cell = f.cells[i].language;
                       auto it = cell.next.find({g, component});
                       if (it == cell.next.end())
                         throw domain_error("incomplete cell automaton");
                       to = to * sizes[i] + it->second;
                     }
                     out.product.next.emplace(std::make_pair(g, tuple),
                                              static_cast<int>(to));
                     a.transitions.emplace(
                         WftaKey{g, tuple, static_cast<int>(to)}, a.semiring->one());
                   });
  }
  return out;
}

}  // namespace

StepFunction step_partition(const StepFunction& f) {
  if (!f.semiring) throw domain_error("step function has no semiring");
  const Semiring& s = *f.semiring;
  CellProduct prod = product_of_cells(f);
  std::vector<bool> reach = dta_reachable(prod.product);

  std::set<std::uint64_t> realized;
  for (size_t i = 0; i < prod.masks.size(); ++i)
    if (reach[i]) realized.insert(prod.masks[i]);

  StepFunction out;
  out.semiring = f.semiring;
  out.partition = true;
  for (std::uint64_t mask : realized) {
    StepCell cell;
    cell.language = prod.product;
    for (size_t i = 0; i < prod.masks.size(); ++i)
      cell.language.automaton.root_weights[i] =
          lift_bool(*cell.language.automaton.semiring, prod.masks[i] == mask);
    cell.weight = s.zero();
    for (size_t i = 0; i < f.cells.size(); ++i)
      if (mask & (std::uint64_t(1) << i)) cell.weight = s.add(cell.weight, f.cells[i].weight);
    out.cells.push_back(std::move(cell));
  }
  return out;
}

StepFunction step_compose_hom(const StepFunction& f, const TreeHom& h) {
  if (!f.partition)
    throw domain_error("composition needs a partition step function");
  StepFunction out;
  out.semiring = f.semiring;
  out.partition = true;
  for (const StepCell& cell : f.cells)
    out.cells.push_back({dta_inverse_hom(cell.language, h), cell.weight});
  return out;
}

bool step_is_partition(const StepFunction& f) {
  CellProduct prod = product_of_cells(f);
  std::vector<bool> reach = dta_reachable(prod.product);
  for (size_t i = 0; i < prod.masks.size(); ++i) {
    if (!reach[i]) continue;
    std::uint64_t m = prod.masks[i];
    if (m == 0 || (m & (m - 1)) != 0) return false;
  }
  return true;
}

}  // namespace alterweight
