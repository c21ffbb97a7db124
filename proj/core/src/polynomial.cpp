#include "alterweight/polynomial.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <limits>

namespace alterweight {

namespace {

constexpr long long kDefaultDegreeLimit = 1000000;
std::atomic<long long> g_degree_limit{kDefaultDegreeLimit};

void check_degree(long long d) {
  if (d > g_degree_limit.load())
    throw resource_error("polynomial degree " + std::to_string(d) +
                         " exceeds the configured limit of " +
                         std::to_string(g_degree_limit.load()));
}

int checked_exp_add(int a, int b) {
  long long s = static_cast<long long>(a) + b;
  if (s > std::numeric_limits<int>::max())
    throw resource_error("exponent overflow");
  return static_cast<int>(s);
}

}  // namespace

long long degree_limit() { return g_degree_limit.load(); }

void set_degree_limit(long long limit) {
  if (limit < 1) throw domain_error("degree limit must be at least 1");
  g_degree_limit.store(limit);
}

long long expvec_degree(const ExpVec& e) {
  long long d = 0;
  for (const auto& [idx, k] : e) {
    d += k;
    if (d < 0) throw resource_error("exponent overflow");
  }
  return d;
}

// Graded part first, then lexicographic on the exponent vectors with
// x1 > x2 > ...: at the first index where they differ, the larger
// exponent belongs to the larger monomial.
bool grlex_less(const ExpVec& a, const ExpVec& b) {
  long long da = expvec_degree(a), db = expvec_degree(b);
  if (da != db) return da < db;
  return lex_less(a, b);
}

bool lex_less(const ExpVec& a, const ExpVec& b) {
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (ia->first != ib->first) {
      // The one with a positive exponent at the earlier variable is larger.
      return ia->first > ib->first;
    }
    if (ia->second != ib->second) return ia->second < ib->second;
    ++ia;
    ++ib;
  }
  return ia == a.end() && ib != b.end() ? true : false;
}

Polynomial Polynomial::zero(int vars) {
  if (vars < 0) throw domain_error("negative variable count");
  Polynomial p;
  p.vars_ = vars;
  return p;
}

Polynomial Polynomial::constant(const Semiring& s, int vars, const Value& c) {
  return from_terms(s, vars, {Monomial{c, {}}});
}

Polynomial Polynomial::variable(const Semiring& s, int vars, int index) {
  if (index < 1 || index > vars)
    throw domain_error("variable index " + std::to_string(index) +
                       " outside 1.." + std::to_string(vars));
  return from_terms(s, vars, {Monomial{s.one(), {{index, 1}}}});
}

Polynomial Polynomial::monomial(const Semiring& s, int vars, const Value& c,
                                const ExpVec& exps) {
  return from_terms(s, vars, {Monomial{c, exps}});
}

Polynomial Polynomial::from_terms(const Semiring& s, int vars,
                                  std::vector<Monomial> terms) {
  if (vars < 0) throw domain_error("negative variable count");
  for (Monomial& m : terms) {
    for (auto it = m.exps.begin(); it != m.exps.end();) {
      if (it->first < 1 || it->first > vars)
        throw domain_error("variable index " + std::to_string(it->first) +
                           " outside 1.." + std::to_string(vars));
      if (it->second < 0) throw domain_error("negative exponent");
      if (it->second == 0) it = m.exps.erase(it);
      else ++it;
    }
    check_degree(m.degree());
  }
  std::sort(terms.begin(), terms.end(), [](const Monomial& a, const Monomial& b) {
    return grlex_less(b.exps, a.exps);  // descending
  });
  Polynomial p;
  p.vars_ = vars;
  for (Monomial& m : terms) {
    if (!p.terms_.empty() && p.terms_.back().exps == m.exps) {
      p.terms_.back().coeff = s.add(p.terms_.back().coeff, m.coeff);
    } else {
      p.terms_.push_back(std::move(m));
    }
  }
  std::erase_if(p.terms_, [&](const Monomial& m) { return s.is_zero(m.coeff); });
  return p;
}

bool Polynomial::is_non_constant_sum() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const Monomial& m) { return m.degree() >= 1; });
}

Polynomial poly_add(const Semiring& s, const Polynomial& a, const Polynomial& b) {
  if (a.vars() != b.vars()) throw domain_error("variable count mismatch in addition");
  std::vector<Monomial> terms = a.terms();
  terms.insert(terms.end(), b.terms().begin(), b.terms().end());
  return Polynomial::from_terms(s, a.vars(), std::move(terms));
}

Polynomial poly_mul(const Semiring& s, const Polynomial& a, const Polynomial& b) {
  if (a.vars() != b.vars()) throw domain_error("variable count mismatch in multiplication");
  std::vector<Monomial> terms;
  terms.reserve(a.terms().size() * b.terms().size());
  for (const Monomial& ma : a.terms()) {
    for (const Monomial& mb : b.terms()) {
      ExpVec e = ma.exps;
      for (const auto& [idx, k] : mb.exps) {
        auto [it, fresh] = e.emplace(idx, k);
        if (!fresh) it->second = checked_exp_add(it->second, k);
      }
      terms.push_back(Monomial{s.mul(ma.coeff, mb.coeff), std::move(e)});
    }
  }
  return Polynomial::from_terms(s, a.vars(), std::move(terms));
}

Polynomial poly_pow(const Semiring& s, const Polynomial& p, long long k) {
  if (k < 0) throw domain_error("negative polynomial power");
  Polynomial result = Polynomial::constant(s, p.vars(), s.one());
  Polynomial base = p;
  while (k > 0) {
    if (k & 1) result = poly_mul(s, result, base);
    k >>= 1;
    if (k > 0) base = poly_mul(s, base, base);
  }
  return result;
}

Polynomial poly_substitute(const Semiring& s, const Polynomial& p,
                           const std::vector<Polynomial>& subs) {
  if (static_cast<int>(subs.size()) != p.vars())
    throw domain_error("substitution expects " + std::to_string(p.vars()) +
                       " replacement polynomials, got " + std::to_string(subs.size()));
  if (subs.empty()) return p;
  int target = subs.front().vars();
  for (const Polynomial& q : subs)
    if (q.vars() != target)
      throw domain_error("replacement polynomials disagree on variable count");
  Polynomial acc = Polynomial::zero(target);
  for (const Monomial& m : p.terms()) {
    Polynomial term = Polynomial::constant(s, target, m.coeff);
    for (const auto& [idx, k] : m.exps)
      term = poly_mul(s, term, poly_pow(s, subs[idx - 1], k));
    acc = poly_add(s, acc, term);
  }
  return acc;
}

Value value_pow(const Semiring& s, const Value& v, long long k) {
  if (k < 0) throw domain_error("negative power");
  Value result = s.one();
  Value base = v;
  while (k > 0) {
    if (k & 1) result = s.mul(result, base);
    k >>= 1;
    if (k > 0) base = s.mul(base, base);
  }
  return result;
}

Value poly_evaluate(const Semiring& s, const Polynomial& p,
                    const std::vector<Value>& point) {
  if (static_cast<int>(point.size()) != p.vars())
    throw domain_error("evaluation point has " + std::to_string(point.size()) +
                       " coordinates, polynomial has " + std::to_string(p.vars()) +
                       " variables");
  Value acc = s.zero();
  for (const Monomial& m : p.terms()) {
    Value term = m.coeff;
    for (const auto& [idx, k] : m.exps)
      term = s.mul(term, value_pow(s, point[idx - 1], k));
    acc = s.add(acc, term);
  }
  return acc;
}

DegreeInfo degree_info(const Polynomial& p) {
  DegreeInfo info;
  if (p.terms().empty()) return info;
  info.max_degree = std::numeric_limits<long long>::min();
  info.min_degree = std::numeric_limits<long long>::max();
  for (const Monomial& m : p.terms()) {
    long long d = m.degree();
    info.max_degree = std::max(info.max_degree, d);
    info.min_degree = std::min(info.min_degree, d);
  }
  info.uniform = info.max_degree == info.min_degree;
  return info;
}

Polynomial poly_map_vars(const Semiring& s, const Polynomial& p, int new_vars,
                         const std::vector<int>& mapping) {
  if (static_cast<int>(mapping.size()) != p.vars())
    throw domain_error("variable mapping size mismatch");
  std::vector<Monomial> terms;
  terms.reserve(p.terms().size());
  for (const Monomial& m : p.terms()) {
    ExpVec e;
    for (const auto& [idx, k] : m.exps) {
      int target = mapping[idx - 1];
      auto [it, fresh] = e.emplace(target, k);
      if (!fresh) it->second = checked_exp_add(it->second, k);
    }
    terms.push_back(Monomial{m.coeff, std::move(e)});
  }
  return Polynomial::from_terms(s, new_vars, std::move(terms));
}

namespace {

bool scalar_needs_parens(const std::string& s) {
  if (s.find_first_of("+* ()") != std::string::npos) return true;
  // A coefficient that looks like a variable factor (a nested polynomial
  // element such as "x1^2") would be re-parsed as one; wrap it.
  return s.size() > 1 && s[0] == 'x' && std::isdigit(static_cast<unsigned char>(s[1]));
}

}  // namespace

std::string poly_to_string(const Semiring& s, const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const Monomial& m : p.terms()) {
    if (!out.empty()) out += " + ";
    std::string c = s.to_string(m.coeff);
    if (scalar_needs_parens(c)) c = "(" + c + ")";
    if (m.exps.empty()) {
      out += c;
      continue;
    }
    bool wrote = false;
    if (!s.is_one(m.coeff)) {
      out += c;
      wrote = true;
    }
    for (const auto& [idx, k] : m.exps) {
      if (wrote) out += "*";
      out += "x" + std::to_string(idx);
      if (k != 1) out += "^" + std::to_string(k);
      wrote = true;
    }
  }
  return out;
}

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

// Splits at top-level occurrences of any of the given separators. A '-'
// at the start of a token is kept as part of the token (negative scalar
// literal) rather than treated as a separator.
std::vector<std::pair<char, std::string>> split_top(const std::string& s,
                                                    const std::string& seps,
                                                    char initial) {
  std::vector<std::pair<char, std::string>> parts;
  int depth = 0;
  char sign = initial;
  std::string cur;
  for (char ch : s) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    bool separator = depth == 0 && seps.find(ch) != std::string::npos;
    if (separator && ch == '-' && trim(cur).empty()) separator = false;
    if (separator) {
      parts.emplace_back(sign, cur);
      sign = ch;
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (depth != 0) throw parse_error("unbalanced parentheses in polynomial expression");
  parts.emplace_back(sign, cur);
  return parts;
}

}  // namespace

Polynomial poly_parse_expr(const Semiring& s, int vars, const std::string& text) {
  std::vector<Monomial> terms;
  for (auto& [sign, term_text] : split_top(text, "+-", '+')) {
    std::string body = trim(term_text);
    if (body.empty()) {
      if (sign == '-') continue;  // leading sign of the next term
      throw parse_error("empty term in polynomial expression '" + text + "'");
    }
    Value coeff = s.one();
    ExpVec exps;
    for (auto& [unused, factor_text] : split_top(body, "*", '*')) {
      std::string f = trim(factor_text);
      if (f.empty()) throw parse_error("empty factor in polynomial expression");
      if (f.front() == '(') {
        if (f.back() != ')') throw parse_error("bad factor '" + f + "'");
        coeff = s.mul(coeff, s.from_string(trim(f.substr(1, f.size() - 2))));
        continue;
      }
      if (f.front() == 'x' && f.size() > 1 && std::isdigit(static_cast<unsigned char>(f[1]))) {
        int power = 1;
        std::string var_part = f;
        auto caret = f.find('^');
        if (caret != std::string::npos) {
          var_part = f.substr(0, caret);
          std::string pow_part = f.substr(caret + 1);
          if (pow_part.empty() ||
              !std::all_of(pow_part.begin(), pow_part.end(),
                           [](unsigned char c) { return std::isdigit(c); }))
            throw parse_error("bad exponent in factor '" + f + "'");
          power = std::stoi(pow_part);
        }
        std::string idx_part = var_part.substr(1);
        if (!std::all_of(idx_part.begin(), idx_part.end(),
                         [](unsigned char c) { return std::isdigit(c); }))
          throw parse_error("bad variable in factor '" + f + "'");
        int idx = std::stoi(idx_part);
        if (idx < 1 || idx > vars)
          throw parse_error("variable x" + idx_part + " outside 1.." +
                            std::to_string(vars));
        auto [it, fresh] = exps.emplace(idx, power);
        if (!fresh) it->second = checked_exp_add(it->second, power);
        continue;
      }
      coeff = s.mul(coeff, s.from_string(f));
    }
    if (sign == '-') coeff = s.neg(coeff);
    terms.push_back(Monomial{std::move(coeff), std::move(exps)});
  }
  return Polynomial::from_terms(s, vars, std::move(terms));
}

}  // namespace alterweight
