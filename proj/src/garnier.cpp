#include "gk/garnier.hpp"

#include <stdexcept>

#include "json.hpp"

namespace gk {

namespace {

const std::vector<std::string>& kim_symbols() {
  static const std::vector<std::string> s{"x",  "q1", "q2", "p1",     "p2",     "t1",      "t2",
                                          "H1", "H2", "theta0", "theta1", "thetainf"};
  return s;
}

const std::vector<std::string>& kaw_symbols() {
  static const std::vector<std::string> s{"x", "q1", "q2", "p1", "p2", "t1", "t2", "H1", "H2", "u1", "u2", "v1", "v2"};
  return s;
}

const std::vector<std::string>& pii_symbols() {
  static const std::vector<std::string> s{"x", "q", "p", "t", "H", "alpha"};
  return s;
}

RatFunc K(const std::string& text) { return parse(text, kim_symbols()); }
RatFunc W(const std::string& text) { return parse(text, kaw_symbols()); }

GeneralScalar scalar(const RatFunc& f, const RatFunc& g) { return {"x", f, g, std::nullopt}; }

// Block of the printed accessory formulas: p^2 - (...)*pp + c/(q(q-1)).
std::string kim122_block(const std::string& q, const std::string& p, const std::string& a, const std::string& b,
                         const std::string& pp) {
  return "(" + p + "^2 - (" + a + "/" + q + " - t2/" + q + "^2 + " + b + "/(" + q + "-1) - t1/(" + q + "-1)^2)*" + pp +
         " + ((theta0+theta1-1)^2 - thetainf^2)/(4*" + q + "*(" + q + "-1)))";
}


std::string kim23_block(const std::string& q, const std::string& p, const std::string& a) {
  return "(" + p + "^2 - (" + a + "/" + q + " - t2/" + q + "^2 + " + q + "/2 + t1)*" + p +
         " + (theta0+thetainf-1)/8)";
}

std::vector<RatFunc> kim23_printed() {
  std::string h1 = "2*q1^2/(q1-q2)*" + kim23_block("q1", "p1", "theta0") + " - 2*q2^2/(q1-q2)*" +
                   kim23_block("q2", "p2", "theta0");
  std::string h2 = "-q1^2*q2/(t2*(q1-q2))*" + kim23_block("q1", "p1", "(theta0-1)") + " + q1*q2^2/(t2*(q1-q2))*" +
                   kim23_block("q2", "p2", "(theta0-1)");
  return {K(h1), K(h2)};
}

std::vector<Point> two_points(const std::vector<std::string>& syms) {
  return {Point::at(parse("q1", syms)), Point::at(parse("q2", syms))};
}

std::map<std::string, RatFunc> merged(std::map<std::string, RatFunc> a, const std::map<std::string, RatFunc>& b) {
  for (const auto& [k, v] : b) a.insert_or_assign(k, v);
  return a;
}

RatFunc total_derivative(const RatFunc& x, const std::string& t, const std::optional<AlgebraicContext>& ctx) {
  return ctx ? implicit_derivative_raw(x, t, *ctx) : differentiate(x, t);
}

RatFunc value_of(const std::string& sym, const AlgebraicSolutionRecord& sol, const RingPtr& ring) {
  auto it = sol.assignments.find(sym);
  if (it != sol.assignments.end()) return it->second;
  if (sol.ctx && sol.ctx->generator() == sym) return RatFunc::variable(ring, sym);
  throw std::invalid_argument("solution does not assign " + sym);
}

}  // namespace

std::vector<RatFunc> kim122_printed_hamiltonians(bool fix_momentum) {
  std::string tail = fix_momentum ? "p2" : "p1";
  std::string h1 = "-q1^2*(q1-1)^2*(q2-1)/(t1*(q1-q2))*" + kim122_block("q1", "p1", "theta0", "(theta1-1)", "p1") +
                   " + (q1-1)*q2^2*(q2-1)^2/(t1*(q1-q2))*" + kim122_block("q2", "p2", "theta0", "(theta1-1)", tail);
  std::string h2 = "-q1^2*(q1-1)^2*q2/(t2*(q1-q2))*" + kim122_block("q1", "p1", "(theta0-1)", "theta1", "p1") +
                   " + q1*q2^2*(q2-1)^2/(t2*(q1-q2))*" + kim122_block("q2", "p2", "(theta0-1)", "theta1", tail);
  return {K(h1), K(h2)};
}

GeneralScalar kim122_template() {
  return scalar(K("t2/x^2 + (2-theta0)/x + t1/(x-1)^2 + (2-theta1)/(x-1) - 1/(x-q1) - 1/(x-q2)"),
                K("((theta0+theta1-1)^2 - thetainf^2)/(4*x*(x-1)) - t1*H1/(x*(x-1)^2) + t2*H2/(x^2*(x-1))"
                  " + q1*(q1-1)*p1/(x*(x-1)*(x-q1)) + q2*(q2-1)*p2/(x*(x-1)*(x-q2))"));
}

GeneralScalar kim23_template_printed() {
  return scalar(K("t2/x^2 + (2-theta0)/x - t1 - x/2 - 1/(x-q1) - 1/(x-q2)"),
                K("(theta0+thetainf-1)/8 - H1/(2*x) + t2*H2/x^2"
                  " + q1*(q1-1)*p1/(x*(x-1)*(x-q1)) + q2*(q2-1)*p2/(x*(x-1)*(x-q2))"));
}

GeneralScalar kim23_template() {
  return scalar(K("t2/x^2 + (2-theta0)/x - t1 - x/2 - 1/(x-q1) - 1/(x-q2)"),
                K("(theta0+thetainf-1)/8 - H1/(2*x) - t2*H2/x^2 + q1*p1/(x*(x-q1)) + q2*p2/(x*(x-q2))"));
}

GeneralScalar kaw4_template() {
  RatFunc g = W("t2^2/(4*x^3) + H1/x^2 + H2/x + t1/2 + x/4"
                " + 3/(4*(x-q1)^2) - p1/(x-q1) + 3/(4*(x-q2)^2) - p2/(x-q2)");
  return scalar(RatFunc(g.ring()), -g);
}

GeneralScalar pii_template() {
  RatFunc q = parse("x^4 + t*x^2 + 2*alpha*x + 2*H + 3/(4*(x-q)^2) - p/(x-q)", pii_symbols());
  return scalar(RatFunc(q.ring()), -q);
}

HamiltonianSystem builtin_system(const std::string& id) {
  HamiltonianSystem sys;
  sys.id = id;
  if (id == "kim122" || id == "kim23") {
    sys.times = {"t1", "t2"};
    sys.coords = {"q1", "q2"};
    sys.momenta = {"p1", "p2"};
    sys.accessory = {"H1", "H2"};
    sys.apparent_points = two_points(kim_symbols());
    if (id == "kim122") {
      sys.parameters = {"theta0", "theta1", "thetainf"};
      sys.linear_template = kim122_template();
      auto h = solve_accessory(*sys.linear_template, sys.accessory, sys.apparent_points);
      sys.hamiltonians = {h.at("H1"), h.at("H2")};
      sys.printed_hamiltonians = kim122_printed_hamiltonians(false);
    } else {
      sys.parameters = {"theta0", "thetainf"};
      sys.linear_template = kim23_template();
      sys.hamiltonians = kim23_printed();
    }
    return sys;
  }
  if (id == "kaw4") {
    sys.times = {"t1", "t2"};
    sys.coords = {"u1", "u2"};
    sys.momenta = {"v1", "v2"};
    sys.hamiltonians = {W("2*u1*v1^2 + 4*u2*v1*v2 - 4*v1 - u1^2/2 - t1*u1 + u2/2 + t2^2/(2*u2)"),
                        W("(-2*u2*v1^2 + 2*u2^2*v2^2 - 2*u2*v2 + u1*u2/2 + t1*u2 - t2^2*u1/(2*u2))/t2")};
    sys.linear_template = kaw4_template();
    sys.accessory = {"H1", "H2"};
    sys.apparent_points = two_points(kaw_symbols());
    return sys;
  }
  if (id == "pii") {
    sys.times = {"t"};
    sys.coords = {"q"};
    sys.momenta = {"p"};
    sys.parameters = {"alpha"};
    sys.hamiltonians = {parse("(p^2 - q^4 - t*q^2 - 2*alpha*q)/2", pii_symbols())};
    sys.linear_template = pii_template();
    sys.accessory = {"H"};
    sys.apparent_points = {Point::at(parse("q", pii_symbols()))};
    return sys;
  }
  throw std::invalid_argument("unknown system: " + id);
}

std::pair<HamiltonianSystem, AlgebraicSolutionRecord> builtin_solution(const std::string& id) {
  HamiltonianSystem sys = builtin_system(id);
  AlgebraicSolutionRecord sol;
  sol.label = id;
  if (id == "kim122") {
    sol.ctx = AlgebraicContext::from_text("q1", {"t1", "t2"}, "(q1*(q1+1)/((q1-1)*(q1-2)))^3 - (t2/t1)^2");
    sol.parameters = {{"theta0", K("0")}, {"theta1", K("0")}, {"thetainf", K("1/3")}};
    sol.assignments = {
        {"q2", K("(q1+1)/(2*q1-1)")},
        {"p1", K("-1/2*t1/(q1-1)^2 - 1/2*t2/q1^2 - 1/6*(2*q1-1)/(q1*(q1-1))")},
        {"p2", K("-1/2*(2*q1-1)^2*t1/(q1-2)^2 - 1/2*(2*q1-1)^2*t2/(q1+1)^2 + 1/2*(2*q1-1)/((q1-2)*(q1+1))")}};
  } else if (id == "kim23") {
    sol.ctx = AlgebraicContext::from_text("q1", {"t1", "t2"}, "(q1*(3*q1+2*t1)/3)^3 - 2*t2^2");
    sol.parameters = {{"theta0", K("0")}, {"thetainf", K("-1")}};
    sol.assignments = {{"q2", K("-q1 - 2/3*t1")},
                       {"p1", K("q1/4 + t1/2 - 1/(6*q1) - t2/(2*q1^2)")},
                       {"p2", K("-q1/4 + t1/3 + 1/(2*(3*q1+2*t1)) - 9*t2/(2*(3*q1+2*t1)^2)")}};
  } else if (id == "kaw4") {
    sol.assignments = {{"u1", W("-t1")}, {"u2", W("t2")}, {"v1", W("0")}, {"v2", W("3/(4*t2)")}};
  } else if (id == "pii") {
    sol.parameters = {{"alpha", parse("0", pii_symbols())}};
    sol.assignments = {{"q", parse("0", pii_symbols())}, {"p", parse("0", pii_symbols())}};
  } else {
    throw std::invalid_argument("unknown solution: " + id);
  }
  return {std::move(sys), std::move(sol)};
}

std::vector<Residual> hamilton_residual(const HamiltonianSystem& sys, const AlgebraicSolutionRecord& sol) {
  std::vector<Residual> out;
  const auto& ctx = sol.ctx;
  auto bind = merged(sol.parameters, sol.assignments);
  for (std::size_t i = 0; i < sys.times.size(); ++i) {
    const std::string& t = sys.times[i];
    RatFunc h = substitute(sys.hamiltonians[i], sol.parameters);
    for (std::size_t j = 0; j < sys.coords.size(); ++j) {
      const std::string &q = sys.coords[j], &p = sys.momenta[j];
      RatFunc qv = value_of(q, sol, h.ring()), pv = value_of(p, sol, h.ring());
      RatFunc dq = total_derivative(qv, t, ctx) - substitute(differentiate(h, p), bind);
      RatFunc dp = total_derivative(pv, t, ctx) + substitute(differentiate(h, q), bind);
      for (auto& [name, r] : {std::pair{"d" + q + "/d" + t, dq}, std::pair{"d" + p + "/d" + t, dp}}) {
        Residual res{name, ctx ? reduce_mod(r, *ctx) : r, false};
        res.zero = res.value.is_zero();
        out.push_back(std::move(res));
      }
    }
  }
  return out;
}

std::string painleve_form_name(PainleveForm f) {
  switch (f) {
    case PainleveForm::I: return "P_I";
    case PainleveForm::II: return "P_II";
    case PainleveForm::III: return "P_III";
    case PainleveForm::IIIOkamoto: return "P_III'";
    case PainleveForm::IV: return "P_IV";
    case PainleveForm::V: return "P_V";
    case PainleveForm::VI: return "P_VI";
  }
  return "?";
}

RatFunc painleve_residual(PainleveForm form, const std::vector<RatFunc>& params, const PainleveSolution& sol) {
  static const std::map<PainleveForm, std::size_t> arity{{PainleveForm::I, 0},          {PainleveForm::II, 1},
                                                         {PainleveForm::III, 4},        {PainleveForm::IIIOkamoto, 4},
                                                         {PainleveForm::IV, 2},         {PainleveForm::V, 4},
                                                         {PainleveForm::VI, 4}};
  if (params.size() != arity.at(form)) throw std::invalid_argument("wrong number of Painleve parameters");
  const std::string& s = sol.uniformizer;
  RatFunc rho = differentiate(sol.t, s);
  if (rho.is_zero()) throw std::invalid_argument("uniformizer map has zero derivative");
  auto d = [&](const RatFunc& e) { return differentiate(e, s) / rho; };
  const RatFunc &q = sol.q, &t = sol.t;
  RatFunc q1 = d(q), q2 = d(q1);
  auto c = [](long n) { return BigRat(n); };
  auto a = [&](std::size_t i) { return params[i]; };
  RatFunc one(q.ring(), 1);
  RatFunc rhs;
  switch (form) {
    case PainleveForm::I: rhs = c(6) * q * q + t; break;
    case PainleveForm::II: rhs = c(2) * q.pow(3) + t * q + a(0); break;
    case PainleveForm::III:
      rhs = q1 * q1 / q - q1 / t + (a(0) * q * q + a(1)) / t + a(2) * q.pow(3) + a(3) / q;
      break;
    case PainleveForm::IIIOkamoto:
      rhs = q1 * q1 / q - q1 / t + q * q * (a(2) * q + a(0)) / (c(4) * t * t) + a(1) / (c(4) * t) + a(3) / (c(4) * q);
      break;
    case PainleveForm::IV:
      rhs = q1 * q1 / (c(2) * q) + BigRat(3, 2) * q.pow(3) + c(4) * t * q * q + c(2) * (t * t - a(0)) * q + a(1) / q;
      break;
    case PainleveForm::V:
      rhs = (one / (c(2) * q) + one / (q - one)) * q1 * q1 - q1 / t +
            (q - one).pow(2) / (t * t) * (a(0) * q + a(1) / q) + a(2) * q / t + a(3) * q * (q + one) / (q - one);
      break;
    case PainleveForm::VI:
      rhs = BigRat(1, 2) * (one / q + one / (q - one) + one / (q - t)) * q1 * q1 -
            (one / t + one / (t - one) + one / (q - t)) * q1 +
            q * (q - one) * (q - t) / (t * t * (t - one).pow(2)) *
                (a(0) + a(1) * t / (q * q) + a(2) * (t - one) / (q - one).pow(2) +
                 a(3) * t * (t - one) / (q - t).pow(2));
      break;
  }
  return q2 - rhs;
}

std::vector<std::string> painleve_solution_ids() {
  return {"pv-rat", "pv-lag", "pv-alg", "piv-rat", "piv-her", "piii-d6", "piii-d8", "piii-d7", "p34", "pii"};
}

PainleveSolution painleve_solution(const std::string& id) {
  const std::vector<std::string> syms{"s", "t", "theta"};
  auto E = [&](const std::string& e) { return parse(e, syms); };
  auto row = [&](std::string name, PainleveForm form, std::vector<std::string> params, std::string u, std::string q,
                 std::string t, std::string printed) {
    PainleveSolution p;
    p.id = id;
    p.name = std::move(name);
    p.form = form;
    for (const auto& e : params) p.params.push_back(E(e));
    p.uniformizer = std::move(u);
    p.q = E(q);
    p.t = E(t);
    p.q_text = std::move(printed);
    return p;
  };
  using F = PainleveForm;
  if (id == "pv-rat") return row("P_V-rat", F::V, {"theta^2/2", "-theta^2/2", "0", "-1/2"}, "t", "-1", "t", "q=-1");
  if (id == "pv-lag")
    return row("P_V-Lag", F::V, {"theta^2/2", "-1/2", "theta", "-1/2"}, "t", "t/theta+1", "t", "q=t/theta+1");
  if (id == "pv-alg")
    return row("P_V-alg", F::V, {"theta^2/2", "-1/8", "-2", "0"}, "s", "2*s/theta+1", "s^2", "q=2*sqrt(t)/theta+1");
  if (id == "piv-rat") return row("P_IV-rat", F::IV, {"0", "-2/9"}, "t", "-2*t/3", "t", "q=-2t/3");
  if (id == "piv-her") return row("P_IV-Her", F::IV, {"0", "-2"}, "t", "-2*t", "t", "q=-2t");
  if (id == "piii-d6")
    return row("P_III^D6-alg", F::IIIOkamoto, {"4*theta", "-4*theta", "4", "-4"}, "s", "s", "s^2", "q=sqrt(t)");
  if (id == "piii-d8") return row("P_III^D8-alg", F::IIIOkamoto, {"4", "-4", "0", "0"}, "s", "s", "s^2", "q=sqrt(t)");
  if (id == "piii-d7")
    return row("P_III^D7-alg", F::III, {"-8", "0", "0", "-4"}, "s", "s", "-2*s^3", "q=(-t/2)^(1/3)");
  if (id == "p34") return row("P_34-rat", F::II, {"0"}, "t", "0", "t", "q=0");
  if (id == "pii") return row("P_II-rat", F::II, {"0"}, "t", "0", "t", "q=0");
  throw std::invalid_argument("unknown Painleve solution: " + id);
}

PullbackReport verify_pullback(const std::string& id) {
  PullbackReport rep;
  rep.id = id;
  const bool kaw = id == "kaw4";
  if (!kaw && id != "kim122" && id != "kim23") throw std::invalid_argument("unknown pull-back case: " + id);
  const auto& syms = kaw ? kaw_symbols() : kim_symbols();
  std::vector<std::string> zsyms = syms;
  zsyms.push_back("z");
  SLForm base{"z", parse(kaw ? "1/z - 3/(16*z^2)" : "1/z - 2/(9*z^2)", zsyms), std::nullopt};
  rep.base_q = base.Q;
  if (id == "kim122")
    rep.cover = {"x", K("t2^2*(2*x-4*q1*x+q1^2+q1)^3/(16*q1^3*(q1+1)^3*x^2*(x-1)^2)")};
  else if (id == "kim23")
    rep.cover = {"x", K("(3*x^2+8*t1*x+4*q1*t1+6*q1^2)^3/(6912*x^2)")};
  else
    rep.cover = {"x", W("(x^2+3*t1*x-3*t2)^2/(36*x)")};
  rep.pulled = sl_pullback(base, rep.cover).Q;

  std::optional<AlgebraicContext> ctx;
  GeneralScalar tmpl;
  std::vector<std::pair<std::string, Point>> points;
  if (!kaw) {
    auto [sys, sol] = builtin_solution(id);
    ctx = sol.ctx;
    auto bind = merged(sol.parameters, sol.assignments);
    std::map<std::string, RatFunc> hs;
    for (std::size_t i = 0; i < sys.accessory.size(); ++i)
      hs.emplace(sys.accessory[i], substitute(substitute(sys.hamiltonians[i], sol.parameters), sol.assignments));
    const GeneralScalar& raw = *sys.linear_template;
    tmpl = {"x", substitute(substitute(raw.f, bind), hs), substitute(substitute(raw.g, bind), hs), ctx};
    points = {{"0", Point::at(K("0"))}};
    if (id == "kim122") points.push_back({"1", Point::at(K("1"))});
    points.push_back({"inf", Point::at_infinity()});
    points.push_back({"q1", Point::at(K("q1"))});
    points.push_back({"q2", Point::at(sol.assignments.at("q2"))});
  } else {
    RatFunc crit = free_critical_points(rep.cover, {Point::at(W("0")), Point::at_infinity()});
    // Roots of the monic quadratic: q1 generic, q2 = -(x coefficient) - q1.
    auto coeffs = crit.num().coeffs_in(*crit.ring()->index("x"));
    if (coeffs.size() != 3) throw std::logic_error("expected two free critical points");
    RatFunc c1 = RatFunc(coeffs[1]) / RatFunc(coeffs[2]);
    RatFunc relation = substitute(crit, {{"x", W("q1")}});
    ctx = AlgebraicContext("q1", {"t1", "t2"}, relation.num());
    RatFunc q1 = W("q1"), q2 = -c1 - q1;
    auto residue = [&](const RatFunc& at) {
      return -local_laurent(rep.pulled, "x", Point::at(at), -1, 1, &*ctx)[0];
    };
    RatFunc p1 = reduce_mod(residue(q1), *ctx), p2 = reduce_mod(residue(q2), *ctx);
    RatFunc dq = q1 - q2;
    rep.extracted["u1"] = reduce_mod(q1 + q2, *ctx);
    rep.extracted["u2"] = reduce_mod(q1 * q2, *ctx);
    rep.extracted["v1"] = reduce_mod((q1 + q2) / (BigRat(2) * dq * dq) + (p1 * q1 - p2 * q2) / dq, *ctx);
    rep.extracted["v2"] = reduce_mod(-(dq * dq).inverse() - (p1 - p2) / dq, *ctx);
    auto [sys, sol] = builtin_solution("kaw4");
    rep.expected = sol.assignments;
    for (const auto& [k, v] : rep.expected)
      if (!equals_mod(rep.extracted.at(k), v, *ctx)) rep.extraction_ok = false;
    std::map<std::string, RatFunc> at{{"q2", q2}, {"p1", p1}, {"p2", p2}};
    GeneralScalar raw = kaw4_template();
    GeneralScalar on_curve{"x", raw.f, substitute(raw.g, at), ctx};
    auto hs = solve_accessory(on_curve, {"H1", "H2"}, {Point::at(q1), Point::at(q2)});
    tmpl = {"x", raw.f, substitute(on_curve.g, hs), ctx};
    points = {{"0", Point::at(W("0"))}, {"inf", Point::at_infinity()}, {"q1", Point::at(q1)}, {"q2", Point::at(q2)}};
  }
  rep.target = sl_normalize(tmpl).Q;
  rep.difference = reduce_mod(rep.pulled - rep.target, *ctx);
  rep.equal = rep.difference.is_zero();
  SLForm pulled{"x", rep.pulled, ctx};
  for (const auto& [name, pt] : points) rep.poles.push_back({name, local_invariants(pulled, pt)});
  return rep;
}

std::string solution_json(const AlgebraicSolutionRecord& sol) {
  nlohmann::ordered_json j;
  j["label"] = sol.label;
  if (sol.ctx) {
    j["generator"] = sol.ctx->generator();
    j["relation"] = sol.ctx->relation().to_string();
  } else {
    j["generator"] = nullptr;
    j["relation"] = nullptr;
  }
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : sol.parameters) params[k] = v.to_string();
  j["parameters"] = params;
  nlohmann::ordered_json assign = nlohmann::ordered_json::object();
  for (const auto& [k, v] : sol.assignments) assign[k] = v.to_string();
  j["assignments"] = assign;
  return j.dump(2);
}

}  // namespace gk
