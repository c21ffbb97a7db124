#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "alterweight/polynomial.hpp"
#include "alterweight/semiring.hpp"

using namespace alterweight;

TEST_CASE("naturals") {
  auto s = nat_semiring();
  CHECK(s->kind() == SemiringKind::nat);
  CHECK(s->name() == "nat");
  CHECK(s->zero() == Value(0L));
  CHECK(s->one() == Value(1L));
  CHECK(s->add(Value(2L), Value(3L)) == Value(5L));
  CHECK(s->mul(Value(2L), Value(3L)) == Value(6L));
  CHECK_FALSE(s->has_subtraction());
  CHECK_THROWS_AS(s->neg(Value(1L)), domain_error);

  CHECK(s->from_string("0") == s->zero());
  CHECK(s->to_string(s->from_string("340282366920938463463374607431768211456")) ==
        "340282366920938463463374607431768211456");
  CHECK_THROWS_AS(s->from_string("-1"), parse_error);
  CHECK_THROWS_AS(s->from_string("1/2"), parse_error);
  CHECK_THROWS_AS(s->from_string(""), parse_error);
  CHECK_THROWS_AS(s->from_string("two"), parse_error);
}

TEST_CASE("rationals") {
  auto s = rat_semiring();
  CHECK(s->has_subtraction());
  CHECK(s->from_string("3/6") == s->from_string("1/2"));
  CHECK(s->to_string(s->from_string("3/6")) == "1/2");
  CHECK(s->to_string(s->from_string("4/2")) == "2");
  CHECK(s->to_string(s->from_string("-4/6")) == "-2/3");
  CHECK(s->add(s->from_string("1/2"), s->from_string("1/3")) == s->from_string("5/6"));
  CHECK(s->mul(s->from_string("2/3"), s->from_string("3/2")) == s->one());
  CHECK(s->add(s->from_string("1/2"), s->neg(s->from_string("1/2"))) == s->zero());
  CHECK_THROWS_AS(s->from_string("1/0"), parse_error);
  CHECK_THROWS_AS(s->from_string("x"), parse_error);
}

TEST_CASE("booleans") {
  auto s = bool_semiring();
  CHECK(s->zero() == Value(false));
  CHECK(s->one() == Value(true));
  CHECK(s->add(s->one(), s->one()) == s->one());
  CHECK(s->mul(s->one(), s->zero()) == s->zero());
  CHECK(s->from_string("0") == s->zero());
  CHECK(s->from_string("1") == s->one());
  CHECK(s->to_string(s->one()) == "1");
  CHECK_THROWS_AS(s->from_string("true"), parse_error);
  CHECK(lift_bool(*s, true) == s->one());
  CHECK(lift_bool(*nat_semiring(), false) == nat_semiring()->zero());
}

TEST_CASE("min-plus") {
  auto s = minplus_semiring();
  CHECK(s->zero() == Value(MinPlus::infinity()));
  CHECK(s->one() == Value(MinPlus::of(0)));
  CHECK(s->add(Value(MinPlus::of(3)), Value(MinPlus::of(5))) == Value(MinPlus::of(3)));
  CHECK(s->mul(Value(MinPlus::of(3)), Value(MinPlus::of(5))) == Value(MinPlus::of(8)));
  CHECK(s->add(s->zero(), Value(MinPlus::of(7))) == Value(MinPlus::of(7)));
  CHECK(s->mul(s->zero(), Value(MinPlus::of(7))) == s->zero());
  CHECK(s->from_string("inf") == s->zero());
  CHECK(s->to_string(s->zero()) == "inf");
  CHECK(s->to_string(Value(MinPlus::of(12))) == "12");
  CHECK_THROWS_AS(s->from_string("1.5"), parse_error);
}

TEST_CASE("polynomial semiring elements") {
  auto s = poly_semiring(nat_semiring(), 2);
  CHECK(s->kind() == SemiringKind::poly);
  CHECK(s->name() == "poly(nat,2)");
  CHECK(s->base()->name() == "nat");
  CHECK(s->poly_vars() == 2);

  Value x1 = s->from_string("x1");
  Value two_x2 = s->from_string("2*x2");
  Value sum = s->add(x1, two_x2);
  CHECK(s->to_string(sum) == "x1 + 2*x2");
  CHECK(s->to_string(s->mul(sum, sum)) == "x1^2 + 4*x1*x2 + 4*x2^2");
  CHECK(s->to_string(s->zero()) == "0");
  CHECK(s->is_one(s->from_string("1")));

  // element arity is part of the type
  CHECK_THROWS_AS(s->from_string("x3"), parse_error);
}

TEST_CASE("semiring_by_name") {
  CHECK(semiring_by_name("nat")->kind() == SemiringKind::nat);
  CHECK(semiring_by_name("minplus")->kind() == SemiringKind::minplus);
  auto nested = semiring_by_name("poly(poly(bool,1),2)");
  CHECK(nested->name() == "poly(poly(bool,1),2)");
  CHECK(nested->base()->name() == "poly(bool,1)");
  CHECK(nested->base()->base()->kind() == SemiringKind::boolean);
  CHECK_THROWS_AS(semiring_by_name("field"), parse_error);
  CHECK_THROWS_AS(semiring_by_name("poly(nat)"), parse_error);
  CHECK_THROWS_AS(semiring_by_name("poly(nat,0)"), parse_error);
}

TEST_CASE("axioms hold on samples") {
  auto nat = nat_semiring();
  CHECK(check_axioms(*nat, {nat->zero(), nat->one(), Value(2L), Value(7L)}).ok);

  auto rat = rat_semiring();
  CHECK(check_axioms(*rat, {rat->zero(), rat->one(), rat->from_string("-1/2"),
                            rat->from_string("3")})
            .ok);

  auto b = bool_semiring();
  CHECK(check_axioms(*b, {b->zero(), b->one()}).ok);

  auto mp = minplus_semiring();
  CHECK(check_axioms(*mp, {mp->zero(), mp->one(), Value(MinPlus::of(2)),
                           Value(MinPlus::of(5))})
            .ok);

  auto ps = poly_semiring(bool_semiring(), 1);
  CHECK(check_axioms(*ps, {ps->zero(), ps->one(), ps->from_string("x1"),
                           ps->from_string("1 + x1^2")})
            .ok);
}

TEST_CASE("value accessors reject the wrong alternative") {
  Value n(3L);
  CHECK(n.as_int() == 3);
  CHECK_THROWS_AS(n.as_bool(), domain_error);
  CHECK_THROWS_AS(n.as_rat(), domain_error);
  CHECK_THROWS_AS(n.as_minplus(), domain_error);
  CHECK_THROWS_AS(n.poly(), domain_error);
  CHECK_FALSE(n.is_poly());
}
