#include "gk/algebraic.hpp"
#include "gk/polygcd.hpp"
#include "props.hpp"

namespace gk::props {

namespace {

const RingPtr& xyz() {
  static const RingPtr r = make_ring({"x", "y", "z"});
  return r;
}

std::string fail_if(bool bad, const std::string& what) { return bad ? what : std::string(); }

}  // namespace

std::vector<Outcome> exactalg_suite(int cases) {
  std::vector<Outcome> out;
  const RingPtr& ring = xyz();

  out.push_back(run("canonical form of p*r/(q*r)", cases, 11, [&](std::mt19937_64& rng, int) {
    Gen g(rng);
    MPoly p = g.poly(ring, 3, 2, 5), q = g.nonzero_poly(ring, 3, 2, 5), r = g.nonzero_poly(ring, 3, 2, 5);
    RatFunc a(p * r, q * r), b(p, q);
    if (a.num() != b.num() || a.den() != b.den()) return "representations differ: " + a.to_string() + " vs " + b.to_string();
    return fail_if(a.to_string() != b.to_string(), "printed forms differ");
  }));

  out.push_back(run("field axioms", cases, 12, [&](std::mt19937_64& rng, int) {
    Gen g(rng);
    RatFunc a = g.ratfunc(ring, 3, 2, 4), b = g.ratfunc(ring, 3, 2, 4), c = g.nonzero_ratfunc(ring, 3, 2, 4);
    if ((a + b) + c != a + (b + c)) return std::string("additive associativity");
    if ((a * b) * c != a * (b * c)) return std::string("multiplicative associativity");
    if (a * (b + c) != a * b + a * c) return std::string("distributivity");
    if (a + b != b + a || a * b != b * a) return std::string("commutativity");
    if (!(a - a).is_zero()) return std::string("additive inverse");
    if (c * c.inverse() != RatFunc(ring, 1)) return std::string("multiplicative inverse");
    return fail_if(a / c * c != a, "division round trip");
  }));

  out.push_back(run("Leibniz rule", cases, 13, [&](std::mt19937_64& rng, int) {
    Gen g(rng);
    RatFunc a = g.ratfunc(ring, 3, 2, 4), b = g.ratfunc(ring, 3, 2, 4);
    const char* v = ring->name(g.uniform(0, 2)).c_str();
    return fail_if(differentiate(a * b, v) != a * differentiate(b, v) + b * differentiate(a, v), "d(ab) mismatch");
  }));

  out.push_back(run("substitution is a ring homomorphism", cases, 14, [&](std::mt19937_64& rng, int) {
    Gen g(rng);
    RatFunc a = g.ratfunc(ring, 3, 2, 4), b = g.ratfunc(ring, 3, 2, 4);
    std::map<std::string, RatFunc> sigma;
    RatFunc sa, sb;
    for (;;) {
      sigma = {{"x", g.ratfunc(ring, 2, 2, 3)}, {"y", RatFunc(g.poly(ring, 2, 1, 3))}};
      try {
        sa = substitute(a, sigma);
        sb = substitute(b, sigma);
        break;
      } catch (const ZeroDenominator&) {
      }
    }
    if (substitute(a + b, sigma) != sa + sb) return std::string("sum");
    return fail_if(substitute(a * b, sigma) != sa * sb, "product");
  }));

  out.push_back(run("gcd heuristic route agrees with subresultant route", cases, 15, [&](std::mt19937_64& rng, int) {
    Gen g(rng);
    MPoly c = g.nonzero_poly(ring, 3, 2, 6);
    MPoly a = g.nonzero_poly(ring, 3, 2, 6) * c, b = g.nonzero_poly(ring, 3, 2, 6) * c;
    MPoly fast = poly_gcd(a, b), ref = poly_gcd_subresultant(a, b);
    if (fast != ref) return "routes differ: " + fast.to_string() + " vs " + ref.to_string();
    if (!a.divide(fast) || !b.divide(fast)) return std::string("gcd does not divide");
    return fail_if(!fast.divide(c.primitive_integer()), "common factor lost");
  }));

  out.push_back(run("laurent coefficients reconstruct", cases, 16, [&](std::mt19937_64& rng, int) {
    Gen g(rng);
    RatFunc r = g.nonzero_ratfunc(ring, 3, 2, 4);
    bool at_inf = g.coin();
    Point center = at_inf ? Point::at_infinity() : Point::at(RatFunc(MPoly(ring, g.uniform(-2, 2))).embed(ring));
    int from = laurent_valuation(r, "x", center) - g.uniform(0, 2), count = g.uniform(1, 4);
    std::vector<RatFunc> c = laurent_coeffs(r, "x", center, from, count);
    RatFunc x = RatFunc::variable(ring, "x");
    RatFunc local = at_inf ? RatFunc(ring, 1) / x : x - center.value;
    RatFunc rest = r;
    for (int i = 0; i < count; ++i) rest -= c[i] * local.pow(from + i);
    if (rest.is_zero()) return std::string();
    int val = laurent_valuation(rest, "x", center);
    return fail_if(val < from + count, "remainder has order " + std::to_string(val) + " for " + r.to_string() +
                                           (at_inf ? " at inf" : " at " + center.value.to_string()) + " from " +
                                           std::to_string(from) + " count " + std::to_string(count));
  }));

  out.push_back(run("reduce_mod idempotent and equals_mod an equivalence", cases, 17, [&](std::mt19937_64& rng, int) {
    Gen g(rng);
    static const auto ctx = AlgebraicContext::from_text("x", {"y", "z"}, "x^3 - y*x + z");
    RatFunc G(ctx.relation());
    RatFunc a(g.poly(ring, 3, 4, 4));
    RatFunc b = a + G * RatFunc(g.poly(ring, 2, 2, 3));
    RatFunc c = b - G * RatFunc(g.poly(ring, 2, 2, 3));
    RatFunc ra = reduce_mod(a, ctx);
    if (reduce_mod(ra, ctx) != ra) return std::string("not idempotent");
    if (!equals_mod(a, a, ctx)) return std::string("reflexive");
    if (!equals_mod(a, b, ctx) || !equals_mod(b, a, ctx)) return std::string("symmetric");
    if (!equals_mod(b, c, ctx) || !equals_mod(a, c, ctx)) return std::string("transitive");
    RatFunc d = a + RatFunc(ring, 1);
    return fail_if(equals_mod(a, d, ctx), "distinct classes identified");
  }));

  return out;
}

}  // namespace gk::props
