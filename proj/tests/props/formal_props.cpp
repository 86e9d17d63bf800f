#include "gk/formal.hpp"
#include "props.hpp"

#include <algorithm>

namespace gk::props {

namespace {

Exponent random_exponent(Gen& g) {
  switch (g.uniform(0, 2)) {
    case 0: return Exponent(g.small_rat(6, 6));
    case 1: return Exponent::affine({{"theta", g.uniform(1, 2) * (g.coin() ? 1 : -1)}}, g.small_rat(3, 2));
    default:
      return Exponent::affine({{"theta1", g.uniform(-2, 2)}, {"theta2", g.uniform(1, 2)}}, g.uniform(-2, 2));
  }
}

FormalDatum random_datum(Gen& g) {
  HalfInt k = HalfInt::from_twice(g.uniform(0, 4));
  return FormalDatum::make(k, random_exponent(g));
}

FormalData random_data(Gen& g, int max_len) {
  FormalData d;
  int n = g.uniform(1, max_len);
  for (int i = 0; i < n; ++i) d.push_back(random_datum(g));
  return d;
}

// A gauge-equivalent copy: shuffled, signs flipped, exponents shifted by integers.
FormalData gauge_copy(Gen& g, std::mt19937_64& rng, const FormalData& d) {
  FormalData out;
  for (const auto& p : d) {
    Exponent t = p.theta;
    if (p.kappa.is_integer()) {
      if (g.coin()) t = -t;
      t = t + Exponent(g.uniform(-2, 2));
    }
    out.push_back(FormalDatum::make(p.kappa, t));
  }
  std::shuffle(out.begin(), out.end(), rng);
  return out;
}

}  // namespace

std::vector<Outcome> formal_suite(int cases) {
  std::vector<Outcome> out;

  out.push_back(run("pullback_local multiplicativity", cases, 21, [](std::mt19937_64& rng, int) {
    Gen g(rng);
    FormalDatum fd = random_datum(g);
    long m = g.uniform(1, 6), n = g.uniform(1, 6);
    PulledBackDatum once = pullback_local(fd, m);
    if (std::holds_alternative<Removed>(once)) {
      return std::holds_alternative<Removed>(pullback_local(fd, m * n)) ? std::string() : "removal not stable";
    }
    PulledBackDatum twice = pullback_local(std::get<FormalDatum>(once), n);
    PulledBackDatum direct = pullback_local(fd, m * n);
    if (twice.index() != direct.index()) return std::string("removal disagrees");
    if (std::holds_alternative<FormalDatum>(twice) && std::get<FormalDatum>(twice) != std::get<FormalDatum>(direct))
      return "composite " + std::get<FormalDatum>(twice).to_string() + " vs " + std::get<FormalDatum>(direct).to_string();
    return std::string();
  }));

  out.push_back(run("chi_irr additivity", cases, 22, [](std::mt19937_64& rng, int) {
    Gen g(rng);
    FormalData d = random_data(g, 4);
    int genus = g.uniform(0, 2);
    BigRat base = chi_irr(genus, d);
    FormalData generic = d, ramified = d;
    generic.push_back({HalfInt(), Exponent::parameter("phi")});
    HalfInt k = HalfInt::from_twice(2 * g.uniform(0, 3) + 1);
    ramified.push_back(FormalDatum::make(k, 0));
    if (chi_irr(genus, generic) != base - 1) return std::string("generic pole");
    if (chi_irr(genus, ramified) != base - 1 - k.value()) return std::string("ramified pole");
    long t = teich_dim(genus, d);
    return t == 3 * genus - 3 + polar_degree(d) ? std::string() : std::string("teich_dim");
  }));

  out.push_back(run("gauge equivalence relation and pull-back compatibility", cases, 23, [](std::mt19937_64& rng, int) {
    Gen g(rng);
    FormalData a = random_data(g, 4);
    FormalData b = gauge_copy(g, rng, a), c = gauge_copy(g, rng, b);
    if (!gauge_equivalent(a, a)) return std::string("reflexive");
    if (!gauge_equivalent(a, b) || !gauge_equivalent(b, a)) return std::string("symmetric");
    if (!gauge_equivalent(b, c) || !gauge_equivalent(a, c)) return std::string("transitive");
    long m = g.uniform(1, 4);
    FormalData pa, pb;
    for (const auto& p : a)
      if (auto r = pullback_local(p, m); std::holds_alternative<FormalDatum>(r)) pa.push_back(std::get<FormalDatum>(r));
    for (const auto& p : b)
      if (auto r = pullback_local(p, m); std::holds_alternative<FormalDatum>(r)) pb.push_back(std::get<FormalDatum>(r));
    if (!gauge_equivalent(pa, pb)) return "pull-back breaks equivalence: " + format_pairs(pa) + " vs " + format_pairs(pb);
    FormalData d = a;
    d.back().kappa = d.back().kappa + HalfInt::integer(1);
    return gauge_equivalent(a, d) ? std::string("different kappas matched") : std::string();
  }));

  return out;
}

}  // namespace gk::props
