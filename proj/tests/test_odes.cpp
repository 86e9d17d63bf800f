#include "doctest.h"
#include "gk/odes.hpp"

using namespace gk;

namespace {

RatFunc P(const std::string& s) { return parse(s); }
RatFunc P(const std::string& s, const std::vector<std::string>& syms) { return parse(s, syms); }

SLForm sl(const std::string& q) { return {"x", P(q), std::nullopt}; }
// theta is defined up to sign and integer shift.
bool same_exponent_class(const RatFunc& raw, const RatFunc& expect) {
  for (int sign : {1, -1})
    for (int shift = -2; shift <= 2; ++shift)
      if (BigRat(sign) * raw + BigRat(shift) == expect) return true;
  return false;
}

RationalMap map(const std::string& v) { return {"x", P(v)}; }
Point at(const std::string& v) { return parse_point(v); }

const char* kDW = "1/x - 2/(9*x^2)";
const char* kP2 = "x^4 + t*x^2 + 2*alpha*x + 2*H + 3/(4*(x-q)^2) - p/(x-q)";

}  // namespace

TEST_CASE("normal form") {
  GeneralScalar dc{"x", P("2/(3*x)", {"x"}), P("-1/x", {"x"}), std::nullopt};
  CHECK(sl_normalize(dc).Q == P(kDW, {"x"}));
  GeneralScalar plain{"x", RatFunc(make_ring({"x"})), P("x^3+1", {"x"}), std::nullopt};
  CHECK(sl_normalize(plain).Q == P("-x^3-1", {"x"}));
  std::vector<std::string> s{"x", "a", "c"};
  GeneralScalar kummer{"x", P("c/x - 1", s), P("-a/x", s), std::nullopt};
  CHECK(sl_normalize(kummer).Q == P("1/4 + (2*a-c)/(2*x) + ((c-1)^2-1)/(4*x^2)", s));
}

TEST_CASE("gauge inverts the normal form up to projective equivalence") {
  GeneralScalar dc{"x", P("2/(3*x)", {"x"}), P("-1/x", {"x"}), std::nullopt};
  SLForm q = sl_normalize(dc);
  CHECK(sl_normalize(gauge(q)).Q == q.Q);
}

TEST_CASE("schwarzian") {
  CHECK(schwarzian(map("x^2")) == P("-3/(2*x^2)"));
  CHECK(schwarzian(map("x^3")) == P("-4/x^2"));
  CHECK(schwarzian(map("(2*x+1)/(3*x-5)")).is_zero());
  CHECK_THROWS_AS(schwarzian(map("7")), std::invalid_argument);
}

TEST_CASE("pull-back") {
  CHECK(sl_pullback({"x", RatFunc(make_ring({"x"})), std::nullopt}, map("x^2")).Q == P("3/(4*x^2)"));
  SLForm dw{"z", P("1/z - 2/(9*z^2)"), std::nullopt};
  CHECK(sl_pullback(dw, map("4*x^3/9")).Q == P("4*x"));
  CHECK(sl_pullback(sl("3/(4*x^2)"), map("x+1")).Q == P("3/(4*(x+1)^2)"));
}

TEST_CASE("local invariants of the degenerate confluent form") {
  auto zero = local_invariants(sl(kDW), at("0"));
  CHECK(zero.kappa == HalfInt::integer(0));
  CHECK(zero.pole_order == 2);
  REQUIRE(zero.theta);
  CHECK(*zero.theta == Exponent(BigRat(1, 3)));
  auto inf = local_invariants(sl(kDW), at("inf"));
  CHECK(inf.kappa == HalfInt::from_twice(1));
  CHECK(inf.pole_order == 3);
  CHECK(*inf.theta == Exponent(0));
}

TEST_CASE("local invariants at infinity") {
  auto airy = local_invariants(sl("x"), at("inf"));
  CHECK(airy.kappa == HalfInt::from_twice(3));
  CHECK(airy.pole_order == 5);
  auto weber = local_invariants(sl("x^2 - 2*a"), at("inf"));
  CHECK(weber.kappa == HalfInt::integer(2));
  REQUIRE(weber.theta_raw);
  // Up to sign and integer shift, the exponent is 2a - 1.
  CHECK(same_exponent_class(*weber.theta_raw, P("2*a - 1", {"a"})));
  CHECK(weber.theta->to_string() == "2*a");
}

TEST_CASE("local invariants of the second Painleve linear problem") {
  std::vector<std::string> s{"x", "t", "alpha", "H", "q", "p"};
  SLForm q{"x", P(kP2, s), std::nullopt};
  auto inf = local_invariants(q, Point::at_infinity());
  CHECK(inf.kappa == HalfInt::integer(3));
  REQUIRE(inf.theta_raw);
  CHECK(same_exponent_class(*inf.theta_raw, P("1 - 2*alpha", s)));
  auto apparent = local_invariants(q, Point::at(P("q", s)));
  CHECK(apparent.kappa == HalfInt::integer(0));
  CHECK(*apparent.theta_raw == P("2", s));
}

TEST_CASE("non-square leading coefficient is unsupported") {
  CHECK_THROWS_AS(local_invariants(sl("2*x^2"), at("inf")), UnsupportedInput);
}

TEST_CASE("apparent points") {
  CHECK(apparent_obstruction(sl("3/(4*x^2)"), at("0")).is_zero());
  CHECK(*local_invariants(sl("3/(4*x^2)"), at("0")).apparent);
  CHECK_FALSE(*local_invariants(sl("3/(4*x^2) + 1/x"), at("0")).apparent);
  CHECK_THROWS_AS(apparent_obstruction(sl(kDW), at("0")), std::invalid_argument);
}

TEST_CASE("accessory parameter of the second Painleve linear problem") {
  std::vector<std::string> s{"x", "t", "alpha", "H", "q", "p"};
  RatFunc hii = P("(p^2 - q^4 - t*q^2 - 2*alpha*q)/2", s);
  SLForm with_h{"x", substitute(P(kP2, s), {{"H", hii}}), std::nullopt};
  CHECK(apparent_obstruction(with_h, Point::at(P("q", s))).is_zero());
  SLForm free_h{"x", P(kP2, s), std::nullopt};
  RatFunc ob = apparent_obstruction(free_h, Point::at(P("q", s)));
  CHECK_FALSE(ob.is_zero());
  // Affine in H with root H_II.
  CHECK(differentiate(differentiate(ob, "H"), "H").is_zero());
  CHECK(substitute(ob, {{"H", hii}}).is_zero());
  GeneralScalar tmpl{"x", RatFunc(make_ring(s)), -P(kP2, s), std::nullopt};
  auto sol = solve_accessory(tmpl, {"H"}, {Point::at(P("q", s))});
  CHECK(sol.at("H") == hii);
}

TEST_CASE("accessory solve on a curve") {
  auto ctx = AlgebraicContext::from_text("q", {"t"}, "q^2 - t");
  std::vector<std::string> s{"x", "q", "t", "p", "H"};
  RatFunc q = P("3/(4*(x-q)^2) - p/(x-q) + x^2 + H", s);
  GeneralScalar tmpl{"x", RatFunc(make_ring(s)), -q, ctx};
  auto sol = solve_accessory(tmpl, {"H"}, {Point::at(P("q", s))});
  CHECK(equals_mod(sol.at("H"), P("p^2 - t", s), ctx));
}

TEST_CASE("free critical points") {
  std::vector<std::string> s{"x", "t1", "t2"};
  RationalMap phi{"x", P("(x^2+3*t1*x-3*t2)^2/(36*x)", s)};
  RatFunc crit = free_critical_points(phi, {Point::at(RatFunc(make_ring(s))), Point::at_infinity()});
  CHECK(crit == P("x^2 + t1*x + t2", s));
  CHECK(free_critical_points(map("x^2"), {}) == P("x", {"x"}));
  CHECK(free_critical_points(map("(2*x+1)/(x-3)"), {}).constant_value() == 1);
  // Declaring the fiber over 0 removes the critical point of x^2.
  CHECK(free_critical_points(map("x^2"), {at("0")}).constant_value() == 1);
}

TEST_CASE("rational poles") {
  auto poles = rational_poles(sl("1/(x-1/2)^2 + 3/(x+2) + x"));
  REQUIRE(poles.size() == 3);
  CHECK(poles[0].value.constant_value() == -2);
  CHECK(poles[1].value.constant_value() == BigRat(1, 2));
  CHECK(poles[2].infinity);
  CHECK(rational_poles(sl("1/x^4")).size() == 1);
  CHECK_THROWS_AS(rational_poles(sl("1/(x-t)")), UnsupportedInput);
}

TEST_CASE("point specs") {
  CHECK(parse_point("inf").infinity);
  CHECK(parse_point(" infinity ").infinity);
  CHECK(format_point(parse_point("1/2")) == "1/2");
  CHECK(format_point(Point::at_infinity()) == "inf");
}
