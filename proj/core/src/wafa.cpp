#include "alterweight/wafa.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "names.hpp"

namespace alterweight {

int Wafa::letter_index(const std::string& name) const {
  for (size_t i = 0; i < letters.size(); ++i)
    if (letters[i] == name) return static_cast<int>(i);
  return -1;
}

namespace {

bool printable_name(const std::string& s) {
  if (s.empty() || s == "#") return false;
  return s.find_first_of("(),: \t\n#") == std::string::npos;
}

}  // namespace

void check_wafa(const Wafa& a) {
  if (!a.semiring) throw domain_error("automaton has no semiring");
  int n = a.state_count();
  if (n == 0) throw domain_error("automaton needs at least one state");
  std::set<std::string> seen;
  for (const std::string& q : a.states) {
    if (!printable_name(q)) throw domain_error("bad state name '" + q + "'");
    if (!seen.insert(q).second) throw domain_error("duplicate state '" + q + "'");
  }
  seen.clear();
  for (const std::string& l : a.letters) {
    if (!printable_name(l)) throw domain_error("bad letter '" + l + "'");
    if (!seen.insert(l).second) throw domain_error("duplicate letter '" + l + "'");
  }
  if (static_cast<int>(a.delta.size()) != n)
    throw domain_error("transition table has " + std::to_string(a.delta.size()) +
                       " rows for " + std::to_string(n) + " states");
  for (const auto& row : a.delta) {
    if (row.size() != a.letters.size())
      throw domain_error("transition row length does not match the alphabet");
    for (const Polynomial& p : row)
      if (p.vars() != n)
        throw domain_error("transition polynomial has " + std::to_string(p.vars()) +
                           " variables for " + std::to_string(n) + " states");
  }
  if (a.initial.vars() != n)
    throw domain_error("initial polynomial has " + std::to_string(a.initial.vars()) +
                       " variables for " + std::to_string(n) + " states");
  if (static_cast<int>(a.final_weights.size()) != n)
    throw domain_error("final weight count does not match the states");
}

Word parse_word(const Wafa& a, const std::string& text) {
  Word w;
  bool single = std::all_of(a.letters.begin(), a.letters.end(),
                            [](const std::string& l) { return l.size() == 1; });
  if (single) {
    for (char c : text) {
      if (std::isspace(static_cast<unsigned char>(c))) continue;
      int idx = a.letter_index(std::string(1, c));
      if (idx < 0) throw parse_error("unknown letter '" + std::string(1, c) + "'");
      w.push_back(idx);
    }
    return w;
  }
  size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos >= text.size()) break;
    size_t end = pos;
    while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))) ++end;
    std::string letter = text.substr(pos, end - pos);
    int idx = a.letter_index(letter);
    if (idx < 0) throw parse_error("unknown letter '" + letter + "'");
    w.push_back(idx);
    pos = end;
  }
  return w;
}

std::string word_to_string(const Wafa& a, const Word& w) {
  bool single = std::all_of(a.letters.begin(), a.letters.end(),
                            [](const std::string& l) { return l.size() == 1; });
  std::string out;
  for (size_t i = 0; i < w.size(); ++i) {
    if (w[i] < 0 || w[i] >= a.letter_count())
      throw domain_error("letter index out of range");
    if (i && !single) out += " ";
    out += a.letters[w[i]];
  }
  return out;
}

std::vector<Value> state_behavior(const Wafa& a, const Word& w) {
  const Semiring& s = *a.semiring;
  std::vector<Value> v = a.final_weights;
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    int letter = *it;
    if (letter < 0 || letter >= a.letter_count())
      throw domain_error("letter index out of range");
    std::vector<Value> next(a.state_count());
    for (int q = 0; q < a.state_count(); ++q)
      next[q] = poly_evaluate(s, a.delta[q][letter], v);
    v = std::move(next);
  }
  return v;
}

Value behavior(const Wafa& a, const Word& w) {
  return poly_evaluate(*a.semiring, a.initial, state_behavior(a, w));
}

namespace {

bool no_constant_monomials(const Wafa& a) {
  if (!a.initial.is_non_constant_sum()) return false;
  for (const auto& row : a.delta)
    for (const Polynomial& p : row)
      if (!p.is_non_constant_sum()) return false;
  return true;
}

}  // namespace

bool is_nice(const Wafa& a) {
  return no_constant_monomials(a) &&
         a.initial == Polynomial::variable(*a.semiring, a.state_count(), 1);
}

bool is_pure(const Wafa& a) {
  if (!is_nice(a)) return false;
  const Semiring& s = *a.semiring;
  for (const auto& row : a.delta)
    for (const Polynomial& p : row)
      for (const Monomial& m : p.terms())
        if (!s.is_one(m.coeff)) return false;
  return true;
}

bool is_equalized(const Wafa& a) {
  long long degree = -1;
  for (const auto& row : a.delta)
    for (const Polynomial& p : row)
      for (const Monomial& m : p.terms()) {
        if (degree < 0) degree = m.degree();
        if (m.degree() != degree) return false;
      }
  return true;
}

bool is_wfa(const Wafa& a) {
  auto linear = [](const Polynomial& p) {
    for (const Monomial& m : p.terms())
      if (m.degree() != 1) return false;
    return true;
  };
  if (!linear(a.initial)) return false;
  for (const auto& row : a.delta)
    for (const Polynomial& p : row)
      if (!linear(p)) return false;
  return true;
}

namespace {

std::vector<int> identity_mapping(int n) {
  std::vector<int> m(n);
  for (int i = 0; i < n; ++i) m[i] = i + 1;
  return m;
}

// Step (ii): every constant monomial c becomes a fresh deadlock state q_c
// with a self loop on all letters and final weight c.
Wafa remove_constants(const Wafa& a) {
  const Semiring& s = *a.semiring;
  std::vector<Value> constants;
  auto note = [&](const Polynomial& p) {
    for (const Monomial& m : p.terms())
      if (m.exps.empty() &&
          std::find(constants.begin(), constants.end(), m.coeff) == constants.end())
        constants.push_back(m.coeff);
  };
  note(a.initial);
  for (const auto& row : a.delta)
    for (const Polynomial& p : row) note(p);
  if (constants.empty()) return a;

  int n = a.state_count();
  int total = n + static_cast<int>(constants.size());
  Wafa b;
  b.semiring = a.semiring;
  b.letters = a.letters;
  b.states = a.states;
  std::set<std::string> taken(a.states.begin(), a.states.end());
  for (const Value& c : constants)
    b.states.push_back(uniquify_name("k" + sanitize_name(s.to_string(c)), taken));

  auto rewrite = [&](const Polynomial& p) {
    std::vector<Monomial> terms;
    for (const Monomial& m : p.terms()) {
      if (m.exps.empty()) {
        int idx = static_cast<int>(
            std::find(constants.begin(), constants.end(), m.coeff) - constants.begin());
        terms.push_back({s.one(), ExpVec{{n + idx + 1, 1}}});
      } else {
        terms.push_back(m);
      }
    }
    return Polynomial::from_terms(s, total, std::move(terms));
  };

  b.initial = rewrite(a.initial);
  b.delta.assign(total, std::vector<Polynomial>(a.letter_count()));
  for (int q = 0; q < n; ++q)
    for (int l = 0; l < a.letter_count(); ++l)
      b.delta[q][l] = rewrite(a.delta[q][l]);
  for (size_t c = 0; c < constants.size(); ++c) {
    int idx = n + static_cast<int>(c) + 1;
    for (int l = 0; l < a.letter_count(); ++l)
      b.delta[idx - 1][l] = Polynomial::variable(s, total, idx);
  }
  b.final_weights = a.final_weights;
  for (const Value& c : constants) b.final_weights.push_back(c);
  return b;
}

// Step (iii): prepend a fresh initial state whose final weight is the old
// initial polynomial at tau and whose moves substitute the old rows into
// the old initial polynomial.
Wafa fresh_initial(const Wafa& a) {
  const Semiring& s = *a.semiring;
  int n = a.state_count();
  if (a.initial == Polynomial::variable(s, n, 1)) return a;

  std::vector<int> shift(n);
  for (int i = 0; i < n; ++i) shift[i] = i + 2;

  Wafa b;
  b.semiring = a.semiring;
  b.letters = a.letters;
  std::set<std::string> taken(a.states.begin(), a.states.end());
  b.states.push_back(uniquify_name("q0", taken));
  b.states.insert(b.states.end(), a.states.begin(), a.states.end());
  b.initial = Polynomial::variable(s, n + 1, 1);
  b.delta.assign(n + 1, std::vector<Polynomial>(a.letter_count()));
  for (int l = 0; l < a.letter_count(); ++l) {
    std::vector<Polynomial> rows;
    rows.reserve(n);
    for (int q = 0; q < n; ++q)
      rows.push_back(poly_map_vars(s, a.delta[q][l], n + 1, shift));
    b.delta[0][l] = poly_substitute(s, a.initial, rows);
    for (int q = 0; q < n; ++q) b.delta[q + 1][l] = rows[q];
  }
  b.final_weights.push_back(poly_evaluate(s, a.initial, a.final_weights));
  b.final_weights.insert(b.final_weights.end(), a.final_weights.begin(),
                         a.final_weights.end());
  return b;
}

}  // namespace

Wafa make_nice(const Wafa& a) {
  check_wafa(a);
  // (i) is the polynomial type's canonical form; (ii) twice because (iii)
  // could in principle reintroduce constants.
  return remove_constants(fresh_initial(remove_constants(a)));
}

Wafa make_pure(const Wafa& a) {
  check_wafa(a);
  if (!is_nice(a)) throw domain_error("make_pure needs a nice automaton");
  const Semiring& s = *a.semiring;
  std::vector<Value> coeffs;
  for (const auto& row : a.delta)
    for (const Polynomial& p : row)
      for (const Monomial& m : p.terms())
        if (!s.is_one(m.coeff) &&
            std::find(coeffs.begin(), coeffs.end(), m.coeff) == coeffs.end())
          coeffs.push_back(m.coeff);
  if (coeffs.empty()) return a;

  int n = a.state_count();
  int total = n + static_cast<int>(coeffs.size());
  Wafa b;
  b.semiring = a.semiring;
  b.letters = a.letters;
  b.states = a.states;
  std::set<std::string> taken(a.states.begin(), a.states.end());
  for (const Value& c : coeffs)
    b.states.push_back(uniquify_name("s" + sanitize_name(s.to_string(c)), taken));

  auto rewrite = [&](const Polynomial& p) {
    std::vector<Monomial> terms;
    for (const Monomial& m : p.terms()) {
      Monomial t{s.one(), m.exps};
      if (!s.is_one(m.coeff)) {
        int idx = static_cast<int>(
            std::find(coeffs.begin(), coeffs.end(), m.coeff) - coeffs.begin());
        t.exps[n + idx + 1] += 1;
      }
      terms.push_back(std::move(t));
    }
    return Polynomial::from_terms(s, total, std::move(terms));
  };

  b.initial = poly_map_vars(s, a.initial, total, identity_mapping(n));
  b.delta.assign(total, std::vector<Polynomial>(a.letter_count()));
  for (int q = 0; q < n; ++q)
    for (int l = 0; l < a.letter_count(); ++l)
      b.delta[q][l] = rewrite(a.delta[q][l]);
  for (size_t c = 0; c < coeffs.size(); ++c) {
    int idx = n + static_cast<int>(c) + 1;
    for (int l = 0; l < a.letter_count(); ++l)
      b.delta[idx - 1][l] = Polynomial::variable(s, total, idx);
  }
  b.final_weights = a.final_weights;
  for (const Value& c : coeffs) b.final_weights.push_back(c);
  return b;
}

Wafa equalize(const Wafa& a) {
  check_wafa(a);
  if (!is_nice(a)) throw domain_error("equalize needs a nice automaton");
  const Semiring& s = *a.semiring;
  long long d = 1;
  for (const auto& row : a.delta)
    for (const Polynomial& p : row)
      for (const Monomial& m : p.terms()) d = std::max(d, m.degree());

  int n = a.state_count();
  int pad = n + 1;
  Wafa b;
  b.semiring = a.semiring;
  b.letters = a.letters;
  b.states = a.states;
  std::set<std::string> taken(a.states.begin(), a.states.end());
  b.states.push_back(uniquify_name("h1", taken));
  b.initial = poly_map_vars(s, a.initial, pad, identity_mapping(n));

  auto rewrite = [&](const Polynomial& p) {
    std::vector<Monomial> terms;
    for (const Monomial& m : p.terms()) {
      Monomial t = m;
      long long missing = d - m.degree();
      if (missing > 0) t.exps[pad] = static_cast<int>(missing);
      terms.push_back(std::move(t));
    }
    return Polynomial::from_terms(s, pad, std::move(terms));
  };

  b.delta.assign(pad, std::vector<Polynomial>(a.letter_count()));
  for (int q = 0; q < n; ++q)
    for (int l = 0; l < a.letter_count(); ++l)
      b.delta[q][l] = rewrite(a.delta[q][l]);
  for (int l = 0; l < a.letter_count(); ++l)
    b.delta[pad - 1][l] =
        Polynomial::monomial(s, pad, s.one(), ExpVec{{pad, static_cast<int>(d)}});
  b.final_weights = a.final_weights;
  b.final_weights.push_back(s.one());
  return b;
}

Wafa hadamard_wafa(const Wafa& a, const Wafa& b) {
  check_wafa(a);
  check_wafa(b);
  if (a.semiring->name() != b.semiring->name())
    throw domain_error("hadamard product needs one semiring, got " +
                       a.semiring->name() + " and " + b.semiring->name());
  if (a.letters != b.letters)
    throw domain_error("hadamard product needs identical alphabets");
  const Semiring& s = *a.semiring;
  int na = a.state_count();
  int nb = b.state_count();
  int total = na + nb;

  Wafa c;
  c.semiring = a.semiring;
  c.letters = a.letters;
  c.states = a.states;
  std::set<std::string> taken(a.states.begin(), a.states.end());
  for (const std::string& q : b.states) c.states.push_back(uniquify_name(q, taken));

  std::vector<int> left = identity_mapping(na);
  std::vector<int> right(nb);
  for (int i = 0; i < nb; ++i) right[i] = na + i + 1;

  c.initial = poly_mul(s, poly_map_vars(s, a.initial, total, left),
                       poly_map_vars(s, b.initial, total, right));
  c.delta.assign(total, std::vector<Polynomial>(a.letter_count()));
  for (int q = 0; q < na; ++q)
    for (int l = 0; l < a.letter_count(); ++l)
      c.delta[q][l] = poly_map_vars(s, a.delta[q][l], total, left);
  for (int q = 0; q < nb; ++q)
    for (int l = 0; l < b.letter_count(); ++l)
      c.delta[na + q][l] = poly_map_vars(s, b.delta[q][l], total, right);
  c.final_weights = a.final_weights;
  c.final_weights.insert(c.final_weights.end(), b.final_weights.begin(),
                         b.final_weights.end());
  return c;
}

}  // namespace alterweight
