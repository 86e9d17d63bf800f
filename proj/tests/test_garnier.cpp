#include "doctest.h"
#include "gk/classifier.hpp"
#include "gk/covers.hpp"
#include "gk/garnier.hpp"
#include "json.hpp"

using namespace gk;

namespace {

bool all_zero(const std::vector<Residual>& rs) {
  for (const auto& r : rs)
    if (!r.zero) return false;
  return true;
}

FormalData essential_poles(const PullbackReport& rep) {
  FormalData out;
  for (const auto& [name, inv] : rep.poles) {
    if (inv.kappa == HalfInt::integer(0) && inv.apparent && *inv.apparent) continue;
    REQUIRE(inv.theta);
    out.push_back(FormalDatum::make(inv.kappa, *inv.theta));
  }
  return out;
}

const KnownRow& row_labelled(SearchMode mode, const std::string& label) {
  for (const auto& r : known_rows(mode))
    if (r.label == label) return r;
  throw std::logic_error("no row " + label);
}

}  // namespace

TEST_CASE("builtin systems") {
  auto kaw = builtin_system("kaw4");
  REQUIRE(kaw.hamiltonians.size() == 2);
  CHECK(kaw.times.size() == kaw.coords.size());
  CHECK(kaw.momenta.size() == kaw.hamiltonians.size());
  const auto& ring = kaw.hamiltonians[0].ring();
  RatFunc term = parse("t2^2/(2*u2)", ring->names());
  CHECK_FALSE(kaw.hamiltonians[0].is_polynomial());
  CHECK((kaw.hamiltonians[0] - term).is_polynomial());

  auto k23 = builtin_system("kim23");
  const auto& syms = k23.hamiltonians[0].ring()->names();
  // Leading part in p1: 2 q1^2/(q1-q2) p1^2.
  RatFunc h1 = k23.hamiltonians[0];
  CHECK(differentiate(differentiate(h1, "p1"), "p1") == parse("4*q1^2/(q1-q2)", syms));

  CHECK_THROWS_AS(builtin_system("nope"), std::invalid_argument);
  CHECK_THROWS_AS(builtin_solution("nope"), std::invalid_argument);
}

TEST_CASE("second Painleve residual form") {
  PainleveSolution sol{"x", "x", PainleveForm::II, {}, "t", {}, {}, ""};
  std::vector<std::string> s{"t", "alpha"};
  sol.t = parse("t", s);
  sol.q = parse("t", s);
  RatFunc alpha = parse("alpha", s);
  // q'' - 2q^3 - t q - alpha with q = t.
  CHECK(painleve_residual(PainleveForm::II, {alpha}, sol) == parse("-2*t^3 - t^2 - alpha", s));
  CHECK_THROWS_AS(painleve_residual(PainleveForm::II, {}, sol), std::invalid_argument);
}

TEST_CASE("accessory parameters from the linear problems") {
  auto pii = builtin_system("pii");
  auto h = solve_accessory(*pii.linear_template, pii.accessory, pii.apparent_points);
  const auto& s = pii.hamiltonians[0].ring()->names();
  CHECK(h.at("H") == parse("(p^2 - q^4 - t*q^2 - 2*alpha*q)/2", s));

  auto k23 = builtin_system("kim23");
  auto corrected = solve_accessory(kim23_template(), k23.accessory, k23.apparent_points);
  CHECK(corrected.at("H1") == k23.hamiltonians[0]);
  CHECK(corrected.at("H2") == k23.hamiltonians[1]);
  auto verbatim = solve_accessory(kim23_template_printed(), k23.accessory, k23.apparent_points);
  CHECK(verbatim.at("H1") != k23.hamiltonians[0]);
}

TEST_CASE("the printed (1,2,2) Hamiltonians carry a momentum typo") {
  auto sys = builtin_system("kim122");
  auto printed = kim122_printed_hamiltonians(false);
  auto fixed = kim122_printed_hamiltonians(true);
  CHECK(sys.printed_hamiltonians[0] == printed[0]);
  for (int i = 0; i < 2; ++i) {
    CHECK(sys.hamiltonians[i] != printed[i]);
    CHECK(sys.hamiltonians[i] == fixed[i]);
  }
}

TEST_CASE("hamilton residuals of the algebraic solutions") {
  for (const char* id : {"kaw4", "pii", "kim23", "kim122"}) {
    CAPTURE(id);
    auto [sys, sol] = builtin_solution(id);
    auto res = hamilton_residual(sys, sol);
    CHECK(res.size() == 2 * sys.times.size() * sys.coords.size());
    CHECK(all_zero(res));
  }
}

TEST_CASE("perturbed solution fails") {
  auto [sys, sol] = builtin_solution("kaw4");
  sol.assignments.at("v1") = RatFunc(sol.assignments.at("v1").ring(), 1);
  CHECK_FALSE(all_zero(hamilton_residual(sys, sol)));
}

TEST_CASE("relations are conserved along the solutions") {
  for (const char* id : {"kim122", "kim23"}) {
    CAPTURE(id);
    auto [sys, sol] = builtin_solution(id);
    REQUIRE(sol.ctx);
    const auto& ctx = *sol.ctx;
    RatFunc g(ctx.relation());
    for (const auto& t : sys.times) {
      RatFunc total = differentiate(g, t) + differentiate(g, ctx.generator()) * implicit_derivative(
                                                                                    RatFunc::variable(g.ring(), ctx.generator()), t, ctx);
      CHECK(is_zero_mod(total, ctx));
    }
  }
}

TEST_CASE("implicit derivative on a cubic") {
  auto ctx = AlgebraicContext::from_text("q", {"t"}, "q^3 - t");
  RatFunc q = RatFunc::variable(ctx.relation().ring(), "q");
  CHECK(equals_mod(implicit_derivative(q, "t", ctx), BigRat(1, 3) * (q * q).inverse(), ctx));
}

TEST_CASE("Painleve table rows") {
  for (const auto& id : painleve_solution_ids()) {
    CAPTURE(id);
    auto sol = painleve_solution(id);
    CHECK(painleve_residual(sol.form, sol.params, sol).is_zero());
  }
  CHECK_THROWS_AS(painleve_solution("nope"), std::invalid_argument);
}

TEST_CASE("Painleve negative controls") {
  auto piv = painleve_solution("piv-rat");
  piv.q = -piv.t;
  CHECK_FALSE(painleve_residual(piv.form, piv.params, piv).is_zero());
  // The square-root rows need the Okamoto normalization of the third equation.
  for (const char* id : {"piii-d6", "piii-d8"}) {
    auto sol = painleve_solution(id);
    CHECK_FALSE(painleve_residual(PainleveForm::III, sol.params, sol).is_zero());
  }
  auto d7 = painleve_solution("piii-d7");
  CHECK_FALSE(painleve_residual(PainleveForm::IIIOkamoto, d7.params, d7).is_zero());
}

TEST_CASE("pull-back of the (1,2,2) cover") {
  auto rep = verify_pullback("kim122");
  CHECK(rep.equal);
  CHECK(rep.ok());
  REQUIRE(rep.poles.size() == 5);
  CHECK(rep.poles[0].second.pole_order == 4);
  CHECK(rep.poles[1].second.pole_order == 4);
  CHECK(rep.poles[2].second.pole_order == 2);
  for (int i : {3, 4}) {
    const auto& inv = rep.poles[i].second;
    CHECK(inv.kappa == HalfInt::integer(0));
    CHECK(*inv.theta_raw == RatFunc(inv.theta_raw->ring(), 2));
    CHECK(*inv.apparent);
  }
  const auto& known = row_labelled(SearchMode::Scattered, "Gar2(0,1,1)");
  CHECK(gauge_equivalent(essential_poles(rep), parse_formal_data(known.target)));
  auto base = BaseEquation{0, parse_formal_data(known.base), std::nullopt};
  auto analysis = analyze_cover(base, parse_passport(known.passport));
  CHECK(gauge_equivalent(essential_poles(rep), analysis.target));
}

TEST_CASE("pull-back of the (2,3) cover") {
  auto rep = verify_pullback("kim23");
  CHECK(rep.ok());
  REQUIRE(rep.poles.size() == 4);
  CHECK(rep.poles[0].second.kappa == HalfInt::integer(1));
  CHECK(rep.poles[1].second.kappa == HalfInt::integer(2));
  CHECK(*rep.poles[2].second.apparent);
  CHECK(*rep.poles[3].second.apparent);
  const auto& known = row_labelled(SearchMode::Confluent, "Gar2(1,2)");
  CHECK(gauge_equivalent(essential_poles(rep), parse_formal_data(known.target)));
}

TEST_CASE("pull-back of the quartic cover recovers the rational solution") {
  auto rep = verify_pullback("kaw4");
  CHECK(rep.equal);
  CHECK(rep.extraction_ok);
  const auto& s = rep.expected.at("u1").ring()->names();
  CHECK(rep.extracted.at("u1") == parse("-t1", s));
  CHECK(rep.extracted.at("u2") == parse("t2", s));
  CHECK(rep.extracted.at("v1").is_zero());
  CHECK(rep.extracted.at("v2") == parse("3/(4*t2)", s));
  REQUIRE(rep.poles.size() == 4);
  CHECK(rep.poles[0].second.kappa == HalfInt::from_twice(1));
  CHECK(rep.poles[1].second.kappa == HalfInt::from_twice(3));
  CHECK(*rep.poles[2].second.apparent);
  CHECK(*rep.poles[3].second.apparent);
  CHECK_THROWS_AS(verify_pullback("nope"), std::invalid_argument);
}

TEST_CASE("solution records as JSON") {
  auto [sys, sol] = builtin_solution("kim23");
  auto j = nlohmann::json::parse(solution_json(sol));
  CHECK(j["label"] == "kim23");
  CHECK(j["generator"] == "q1");
  const auto& syms = sol.assignments.at("q2").ring()->names();
  RatFunc rel = parse(j["relation"].get<std::string>(), syms);
  CHECK(rel.num() == sol.ctx->relation());
  for (const auto& [k, v] : sol.assignments) CHECK(parse(j["assignments"][k].get<std::string>(), syms) == v);
  CHECK(solution_json(sol) == solution_json(builtin_solution("kim23").second));
  auto kaw = builtin_solution("kaw4").second;
  CHECK(nlohmann::json::parse(solution_json(kaw))["relation"].is_null());
}
