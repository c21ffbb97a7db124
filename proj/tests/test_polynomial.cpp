#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "alterweight/polynomial.hpp"

using namespace alterweight;

namespace {

const Semiring& nat() { return *nat_semiring(); }
const Semiring& rat() { return *rat_semiring(); }

Polynomial p(const Semiring& s, int vars, const std::string& text) {
  return poly_parse_expr(s, vars, text);
}

std::string str(const Semiring& s, const Polynomial& q) { return poly_to_string(s, q); }

}  // namespace

TEST_CASE("term order") {
  ExpVec e1{{1, 1}};           // x1
  ExpVec e2{{2, 1}};           // x2
  ExpVec e11{{1, 2}};          // x1^2
  ExpVec e12{{1, 1}, {2, 1}};  // x1 x2
  ExpVec e22{{2, 2}};          // x2^2

  CHECK(grlex_less(e2, e1));    // x2 < x1
  CHECK(grlex_less(e1, e22));   // degree wins first
  CHECK(grlex_less(e12, e11));  // same degree, lex on x1 > x2
  CHECK(grlex_less(e22, e12));
  CHECK_FALSE(grlex_less(e1, e1));

  CHECK(lex_less(e2, e1));
  CHECK(lex_less(e1, e11));  // x1 < x1^2 lexicographically
  CHECK(lex_less(e22, e1));  // any power of x2 is below x1 in pure lex
  CHECK(lex_less(ExpVec{}, e2));
}

TEST_CASE("canonical form") {
  std::vector<Monomial> terms = {
      {Value(1L), ExpVec{{2, 1}}},
      {Value(2L), ExpVec{{1, 1}}},
      {Value(3L), ExpVec{{2, 1}}},
      {Value(0L), ExpVec{{1, 2}}},
      {Value(5L), ExpVec{}},
  };
  Polynomial q = Polynomial::from_terms(nat(), 2, terms);
  CHECK(str(nat(), q) == "2*x1 + 4*x2 + 5");
  CHECK(q.terms().size() == 3);
  CHECK(q == p(nat(), 2, "5 + 4*x2 + 2*x1"));

  CHECK(Polynomial::zero(3).is_zero());
  CHECK(str(nat(), Polynomial::zero(3)) == "0");
  CHECK(Polynomial::constant(nat(), 2, Value(0L)).is_zero());
  CHECK(str(nat(), Polynomial::variable(nat(), 2, 2)) == "x2");
  CHECK_THROWS_AS(Polynomial::variable(nat(), 2, 3), domain_error);
  CHECK_THROWS_AS(
      Polynomial::from_terms(nat(), 1, {{Value(1L), ExpVec{{1, -1}}}}),
      domain_error);
}

TEST_CASE("arithmetic") {
  Polynomial x = p(nat(), 2, "x1");
  Polynomial y = p(nat(), 2, "x2");
  Polynomial s = poly_add(nat(), x, y);
  CHECK(str(nat(), poly_mul(nat(), s, s)) == "x1^2 + 2*x1*x2 + x2^2");
  CHECK(str(nat(), poly_pow(nat(), s, 3)) ==
        "x1^3 + 3*x1^2*x2 + 3*x1*x2^2 + x2^3");
  CHECK(poly_pow(nat(), s, 0) == p(nat(), 2, "1"));
  CHECK(poly_mul(nat(), s, Polynomial::zero(2)).is_zero());

  // cancellation over the rationals
  Polynomial d = poly_add(rat(), p(rat(), 1, "x1"), p(rat(), 1, "-1*x1"));
  CHECK(d.is_zero());
}

TEST_CASE("substitution is simultaneous") {
  Polynomial q = p(nat(), 2, "x1*x2");
  Polynomial swapped = poly_substitute(
      nat(), q, {p(nat(), 2, "x2"), p(nat(), 2, "x1")});
  CHECK(swapped == q);

  Polynomial sq = p(nat(), 1, "x1^2");
  Polynomial r = poly_substitute(nat(), sq, {p(nat(), 2, "x1 + x2")});
  CHECK(str(nat(), r) == "x1^2 + 2*x1*x2 + x2^2");
  CHECK(r.vars() == 2);

  // constants substitute to themselves in the new variable space
  Polynomial c = poly_substitute(nat(), p(nat(), 2, "3"), {Polynomial::zero(5), Polynomial::zero(5)});
  CHECK(c == p(nat(), 5, "3"));

  CHECK_THROWS_AS(poly_substitute(nat(), q, {p(nat(), 2, "x1")}), domain_error);
  CHECK_THROWS_AS(
      poly_substitute(nat(), q, {p(nat(), 2, "x1"), p(nat(), 3, "x1")}),
      domain_error);
}

TEST_CASE("evaluation") {
  Polynomial q = p(nat(), 2, "x1^2*x2 + 3*x2 + 7");
  CHECK(poly_evaluate(nat(), q, {Value(2L), Value(5L)}) == Value(42L));
  CHECK(poly_evaluate(nat(), Polynomial::zero(2), {Value(2L), Value(5L)}) ==
        Value(0L));
  CHECK(value_pow(nat(), Value(3L), 4) == Value(81L));
  CHECK(value_pow(nat(), Value(3L), 0) == Value(1L));
  CHECK_THROWS_AS(poly_evaluate(nat(), q, {Value(2L)}), domain_error);
}

TEST_CASE("degree info") {
  DegreeInfo z = degree_info(Polynomial::zero(2));
  CHECK(z.uniform);
  CHECK(z.max_degree == 0);

  DegreeInfo u = degree_info(p(nat(), 2, "x1*x2 + x2^2"));
  CHECK(u.uniform);
  CHECK(u.max_degree == 2);

  DegreeInfo m = degree_info(p(nat(), 2, "x1^3 + x2"));
  CHECK_FALSE(m.uniform);
  CHECK(m.max_degree == 3);
  CHECK(m.min_degree == 1);

  CHECK(p(nat(), 2, "x1^2 + x2").is_non_constant_sum());
  CHECK_FALSE(p(nat(), 2, "x1 + 1").is_non_constant_sum());
  CHECK(Polynomial::zero(2).is_non_constant_sum());
}

TEST_CASE("variable reindexing") {
  Polynomial q = p(nat(), 2, "x1 + x2");
  CHECK(str(nat(), poly_map_vars(nat(), q, 3, {3, 1})) == "x1 + x3");
  // non-injective mappings merge monomials
  CHECK(str(nat(), poly_map_vars(nat(), q, 1, {1, 1})) == "2*x1");
  CHECK_THROWS_AS(poly_map_vars(nat(), q, 1, {1, 2}), domain_error);
}

TEST_CASE("parse and print round trip") {
  auto& s = rat();
  for (const std::string text : {"0", "1", "x1", "2*x1^2 + x2", "-1/2*x1 + 3",
                                 "x1^2*x2^3 + 1/3"}) {
    Polynomial q = p(s, 2, text);
    CHECK(p(s, 2, str(s, q)) == q);
  }
  CHECK(str(s, p(s, 2, "x2 + x1")) == "x1 + x2");
  CHECK(str(s, p(s, 2, "3 + -1/2*x1")) == "-1/2*x1 + 3");

  CHECK_THROWS_AS(p(s, 2, "x3"), parse_error);
  CHECK_THROWS_AS(p(s, 2, "x1^"), parse_error);
  CHECK_THROWS_AS(p(s, 2, ""), parse_error);
  CHECK_THROWS_AS(p(s, 2, "x1 + + x2"), parse_error);
  CHECK_THROWS_AS(p(nat(), 2, "x1 - x2"), domain_error);  // no subtraction in nat
}

TEST_CASE("polynomial coefficients nest") {
  auto ps = poly_semiring(bool_semiring(), 1);
  Polynomial q = poly_parse_expr(*ps, 1, "(x1)*x1 + 1");
  CHECK(poly_to_string(*ps, q) == "(x1)*x1 + 1");
  Value at_one = poly_evaluate(*ps, q, {ps->one()});
  CHECK(at_one == ps->from_string("1 + x1"));
}

TEST_CASE("degree cap") {
  long long saved = degree_limit();
  set_degree_limit(8);
  Polynomial x = p(nat(), 1, "x1");
  CHECK_THROWS_AS(poly_pow(nat(), x, 9), resource_error);
  CHECK(str(nat(), poly_pow(nat(), x, 8)) == "x1^8");
  set_degree_limit(saved);
}
