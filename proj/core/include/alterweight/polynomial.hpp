#pragma once

#include <map>
#include <string>
#include <vector>

#include "alterweight/semiring.hpp"

namespace alterweight {

// Sparse exponent vector: 1-based variable index -> exponent, no zero entries.
using ExpVec = std::map<int, int>;

long long expvec_degree(const ExpVec&);

// Graded lexicographic comparison with x1 > x2 > ...; the canonical term
// order used for storage.
bool grlex_less(const ExpVec& a, const ExpVec& b);
bool lex_less(const ExpVec& a, const ExpVec& b);

struct Monomial {
  Value coeff;
  ExpVec exps;

  long long degree() const { return expvec_degree(exps); }

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.coeff == b.coeff && a.exps == b.exps;
  }
};

// Canonical multivariate polynomial over an explicit coefficient semiring.
// Terms are kept grlex-descending with pairwise distinct exponent vectors
// and no zero coefficients; the zero polynomial has no terms.
class Polynomial {
 public:
  Polynomial() = default;

  static Polynomial zero(int vars);
  static Polynomial constant(const Semiring&, int vars, const Value& c);
  static Polynomial variable(const Semiring&, int vars, int index);
  static Polynomial monomial(const Semiring&, int vars, const Value& c, const ExpVec&);
  static Polynomial from_terms(const Semiring&, int vars, std::vector<Monomial> terms);

  int vars() const { return vars_; }
  const std::vector<Monomial>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  // True iff every monomial has degree >= 1 (vacuously true for zero).
  bool is_non_constant_sum() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

 private:
  int vars_ = 0;
  std::vector<Monomial> terms_;
};

Polynomial poly_add(const Semiring&, const Polynomial&, const Polynomial&);
Polynomial poly_mul(const Semiring&, const Polynomial&, const Polynomial&);
Polynomial poly_pow(const Semiring&, const Polynomial&, long long k);

// Simultaneous substitution x_i := subs[i-1]; all replacement polynomials
// live over the same variable count, which is the result's.
Polynomial poly_substitute(const Semiring&, const Polynomial&,
                           const std::vector<Polynomial>& subs);

Value poly_evaluate(const Semiring&, const Polynomial&, const std::vector<Value>& point);

Value value_pow(const Semiring&, const Value&, long long k);

struct DegreeInfo {
  long long max_degree = 0;
  long long min_degree = 0;
  bool uniform = true;  // all monomials share one degree (true when zero)
};
DegreeInfo degree_info(const Polynomial&);

// Reindexes variable i to mapping[i-1] (1-based targets) in a new_vars space.
Polynomial poly_map_vars(const Semiring&, const Polynomial&, int new_vars,
                         const std::vector<int>& mapping);

std::string poly_to_string(const Semiring&, const Polynomial&);
Polynomial poly_parse_expr(const Semiring&, int vars, const std::string&);

// Global degree cap; exceeding it (or overflowing exponent arithmetic)
// raises resource_error.
long long degree_limit();
void set_degree_limit(long long);

}  // namespace alterweight
