#include "gk/odes.hpp"

#include <algorithm>

#include "gk/polygcd.hpp"

namespace gk {

namespace {

RatFunc zero_like(const RatFunc& r) { return RatFunc(r.ring()); }

RatFunc reduced(const RatFunc& r, const AlgebraicContext* ctx) { return ctx ? reduce_mod(r, *ctx) : r; }

bool vanishes(const RatFunc& r, const AlgebraicContext* ctx) { return ctx ? is_zero_mod(r, *ctx) : r.is_zero(); }

const AlgebraicContext* ctx_of(const SLForm& q) { return q.ctx ? &*q.ctx : nullptr; }

std::string trimmed(std::string_view s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

bool is_infinity_word(const std::string& s) { return s == "inf" || s == "infinity" || s == "oo"; }

// The chart where the point sits at x = 0 (or at the given finite center).
struct LocalChart {
  RatFunc r;
  Point center;
};

LocalChart chart_for(const RatFunc& q, const std::string& x, const Point& center) {
  if (center.infinity) return {at_infinity_chart(q, x), Point::at(zero_like(q))};
  return {q, center};
}

std::vector<RatFunc> local_coeffs(const LocalChart& c, const std::string& x, int from, int count,
                                  const AlgebraicContext* ctx) {
  return local_laurent(c.r, x, c.center, from, count, ctx);
}

// r = x^order * (sum a_i x^i) / (sum b_i x^i) around the center, coefficients reduced mod G.
struct ModSeries {
  int order = 0;
  std::vector<RatFunc> a, b;
};

ModSeries localize_mod(const RatFunc& r, const std::string& x, const Point& center, const AlgebraicContext& ctx) {
  RatFunc shifted = r;
  if (center.infinity) {
    RingPtr ring = r.ring()->index(x) ? r.ring() : unite(r.ring(), make_ring({x}));
    shifted = substitute(r, {{x, RatFunc::variable(ring, x).inverse()}});
  } else if (!center.value.is_zero()) {
    RingPtr ring = unite(r.ring(), center.value.ring());
    if (!ring->index(x)) ring = unite(ring, make_ring({x}));
    shifted = substitute(r, {{x, RatFunc::variable(ring, x) + center.value.embed(ring)}});
  }
  ModSeries out;
  auto vi = shifted.ring()->index(x);
  auto split = [&](const MPoly& p) {
    std::vector<RatFunc> c;
    if (!vi) {
      c.push_back(reduce_mod(RatFunc(p), ctx));
    } else {
      for (const MPoly& m : p.coeffs_in(*vi)) c.push_back(reduce_mod(RatFunc(m), ctx));
    }
    int k = 0;
    while (k < int(c.size()) && c[k].is_zero()) ++k;
    c.erase(c.begin(), c.begin() + k);
    return std::pair{c, k};
  };
  auto [a, ja] = split(shifted.num());
  auto [b, jb] = split(shifted.den());
  if (b.empty()) throw SingularOnCurve("denominator vanishes identically on the curve");
  out.order = a.empty() ? 0 : ja - jb;
  out.a = std::move(a);
  out.b = std::move(b);
  return out;
}

std::optional<long> to_long(const BigRat& q) {
  if (q.get_den() != 1 || !q.get_num().fits_slong_p()) return std::nullopt;
  return q.get_num().get_si();
}

// Resonance term of the Frobenius recursion for the smaller exponent, from Q_{-2}, Q_{-1}, ...
RatFunc frobenius_obstruction(const std::vector<RatFunc>& qc, long n, const AlgebraicContext* ctx) {
  // qc[i] is the coefficient of order i - 2.
  std::vector<RatFunc> a{RatFunc(qc[0].ring(), 1)};
  for (long m = 1; m < n; ++m) {
    RatFunc acc = zero_like(qc[0]);
    for (long i = 1; i <= m; ++i) acc += qc[i] * a[m - i];
    a.push_back(reduced(BigRat(1) / BigRat(m * (m - n)) * acc, ctx));
  }
  RatFunc out = zero_like(qc[0]);
  for (long i = 1; i <= n; ++i) out += qc[i] * a[n - i];
  return reduced(out, ctx);
}

std::optional<long> integer_theta(const LocalInvariant& li) {
  if (li.kappa != HalfInt::integer(0) || !li.theta_raw || !li.theta_raw->is_constant()) return std::nullopt;
  auto n = to_long(li.theta_raw->constant_value());
  if (!n) return std::nullopt;
  return std::abs(*n);
}

}  // namespace

std::string LocalInvariant::to_string() const {
  std::string s = "kappa=" + kappa.to_string() + " theta=";
  if (theta) {
    s += theta->to_string();
    if (theta_raw && theta_raw->is_constant() && Exponent(theta_raw->constant_value()) != *theta)
      s += " (raw " + theta_raw->to_string() + ")";
  } else if (theta_raw)
    s += theta_raw->to_string();
  else
    s += "sqrt(" + theta_squared.to_string() + ")";
  s += " pole_order=" + std::to_string(pole_order);
  if (apparent) s += *apparent ? " apparent=yes" : " apparent=no";
  return s;
}

Point parse_point(std::string_view text, const std::vector<std::string>& symbols) {
  std::string t = trimmed(text);
  if (is_infinity_word(t)) return Point::at_infinity();
  return Point::at(parse(t, symbols));
}

Point parse_point(std::string_view text) {
  std::string t = trimmed(text);
  if (is_infinity_word(t)) return Point::at_infinity();
  return Point::at(parse(t));
}

std::string format_point(const Point& p) { return p.infinity ? "inf" : p.value.to_string(); }

SLForm sl_normalize(const GeneralScalar& e) {
  RatFunc q = BigRat(1, 4) * e.f * e.f + BigRat(1, 2) * differentiate(e.f, e.x) - e.g;
  return {e.x, q, e.ctx};
}

GeneralScalar gauge(const SLForm& q) { return {q.x, zero_like(q.Q), -q.Q, q.ctx}; }

RatFunc schwarzian(const RationalMap& phi) {
  RatFunc d1 = differentiate(phi.value, phi.x);
  if (d1.is_zero()) throw std::invalid_argument("Schwarzian of a constant map");
  RatFunc h = differentiate(d1, phi.x) / d1;
  return differentiate(h, phi.x) - BigRat(1, 2) * h * h;
}

RationalMap compose(const RationalMap& outer, const RationalMap& inner) {
  return {inner.x, substitute(outer.value, {{outer.x, inner.value}})};
}

SLForm sl_pullback(const SLForm& q, const RationalMap& phi) {
  RatFunc d1 = differentiate(phi.value, phi.x);
  RatFunc moved = substitute(q.Q, {{q.x, phi.value}});
  return {phi.x, moved * d1 * d1 - BigRat(1, 2) * schwarzian(phi), q.ctx};
}

RatFunc at_infinity_chart(const RatFunc& q, const std::string& x) {
  RatFunc s = RatFunc::variable(q.ring(), x);
  if (!q.ring()->index(x)) s = RatFunc::variable(unite(q.ring(), make_ring({x})), x);
  return substitute(q, {{x, s.inverse()}}) * s.pow(-4);
}

int local_order(const RatFunc& r, const std::string& x, const Point& center, const AlgebraicContext* ctx) {
  if (r.is_zero()) throw std::invalid_argument("order of the zero function");
  if (!ctx) return laurent_valuation(r, x, center);
  ModSeries m = localize_mod(r, x, center, *ctx);
  if (m.a.empty()) throw std::invalid_argument("function vanishes on the curve");
  return m.order;
}

std::vector<RatFunc> local_laurent(const RatFunc& r, const std::string& x, const Point& center, int from, int count,
                                   const AlgebraicContext* ctx) {
  if (!ctx) return laurent_coeffs(r, x, center, from, count);
  ModSeries m = localize_mod(r, x, center, *ctx);
  std::vector<RatFunc> out;
  RatFunc zero(m.b[0].ring());
  if (m.a.empty()) return std::vector<RatFunc>(std::max(count, 0), zero);
  int need = from + count - 1 - m.order;
  std::vector<RatFunc> c;
  RatFunc inv = reduce_mod(m.b[0].inverse(), *ctx);
  for (int k = 0; k <= need; ++k) {
    RatFunc acc = k < int(m.a.size()) ? m.a[k] : zero;
    for (int i = 1; i <= k && i < int(m.b.size()); ++i) acc -= m.b[i] * c[k - i];
    c.push_back(reduce_mod(acc * inv, *ctx));
  }
  for (int n = from; n < from + count; ++n) {
    int k = n - m.order;
    out.push_back(k < 0 ? zero : c[k]);
  }
  return out;
}

std::optional<Exponent> to_exponent(const RatFunc& r) {
  if (r.is_constant()) return Exponent(r.constant_value());
  if (!r.is_polynomial() || r.num().total_degree() > 1) return std::nullopt;
  const MPoly& p = r.num();
  BigRat den = r.den().constant_value();
  std::map<std::string, long> coeffs;
  BigRat shift = 0;
  for (const Term& t : p.terms()) {
    BigRat c = t.c / den;
    if (t.m.deg == 0) {
      shift = c;
      continue;
    }
    auto n = to_long(c);
    if (!n) return std::nullopt;
    for (std::size_t i = 0; i < p.ring()->size(); ++i)
      if (t.m.e[i]) coeffs[p.ring()->name(i)] = *n;
  }
  return Exponent::affine(std::move(coeffs), shift);
}

LocalInvariant local_invariants(const SLForm& q, const Point& center) {
  const AlgebraicContext* ctx = ctx_of(q);
  LocalChart chart = chart_for(q.Q, q.x, center);
  LocalInvariant li;
  RatFunc one(chart.r.ring(), 1);
  if (vanishes(chart.r, ctx)) {
    li.theta_squared = one;
    li.theta_raw = one;
    li.theta = Exponent(1);
    li.apparent = true;
    return li;
  }
  int v = local_order(chart.r, q.x, chart.center, ctx);
  li.pole_order = std::max(0, -v);
  int l = li.pole_order;
  if (l <= 2) {
    RatFunc c2 = l == 2 ? local_coeffs(chart, q.x, -2, 1, ctx)[0] : zero_like(one);
    li.theta_squared = reduced(one + BigRat(4) * c2, ctx);
    li.theta_raw = sqrt_exact(li.theta_squared);
    if (li.theta_raw) {
      if (auto e = to_exponent(*li.theta_raw)) li.theta = canonical_exponent(*e);
      if (l == 0) {
        li.apparent = true;
      } else if (auto n = integer_theta(li); n && *n >= 1) {
        auto qc = local_coeffs(chart, q.x, -2, int(*n) + 1, ctx);
        li.apparent = vanishes(frobenius_obstruction(qc, *n, ctx), ctx);
      } else if (li.theta && li.theta->is_rational()) {
        li.apparent = false;
      }
    }
    return li;
  }
  li.kappa = HalfInt::from_twice(l - 2);
  if (l % 2) {
    li.theta_squared = zero_like(one);
    li.theta_raw = zero_like(one);
    li.theta = Exponent(0);
    li.apparent = false;
    return li;
  }
  int m = l / 2;
  auto cs = local_coeffs(chart, q.x, -2 * m, m, ctx);
  auto root = sqrt_exact(cs[0]);
  if (!root) throw UnsupportedInput("leading coefficient " + cs[0].to_string() + " is not a square");
  auto residue = [&](const RatFunc& lead) {
    // w[k + m] multiplies s^k in the Riccati series, k = -m .. -1.
    std::vector<RatFunc> w(m, zero_like(one));
    w[0] = lead;
    for (int n = 1; n < m; ++n) {
      int j = -2 * m + n;
      RatFunc acc = cs[n];
      for (int a = -m + 1; a < -m + n; ++a) acc -= w[a + m] * w[j - a + m];
      if (n == m - 1) acc -= BigRat(j + 1) * w[0];
      w[n] = reduced(acc / (BigRat(2) * lead), ctx);
    }
    return w[m - 1];
  };
  RatFunc theta = reduced(residue(*root) - residue(-*root), ctx);
  li.theta_raw = theta;
  li.theta_squared = reduced(theta * theta, ctx);
  if (auto e = to_exponent(theta)) li.theta = canonical_exponent(*e);
  li.apparent = false;
  return li;
}

RatFunc apparent_obstruction(const SLForm& q, const Point& center) {
  const AlgebraicContext* ctx = ctx_of(q);
  LocalInvariant li = local_invariants(q, center);
  auto n = integer_theta(li);
  if (!n || *n < 1) throw std::invalid_argument("apparent test needs kappa = 0 and a positive integer theta");
  LocalChart chart = chart_for(q.Q, q.x, center);
  auto qc = local_coeffs(chart, q.x, -2, int(*n) + 1, ctx);
  return frobenius_obstruction(qc, *n, ctx);
}

std::map<std::string, RatFunc> solve_accessory(const GeneralScalar& tmpl, const std::vector<std::string>& unknowns,
                                               const std::vector<Point>& apparent_points) {
  if (unknowns.size() != apparent_points.size())
    throw std::invalid_argument("need as many apparent points as unknowns");
  const AlgebraicContext* ctx = tmpl.ctx ? &*tmpl.ctx : nullptr;
  SLForm sl = sl_normalize(tmpl);
  std::size_t k = unknowns.size();
  std::map<std::string, RatFunc> at_zero;
  for (const auto& u : unknowns) at_zero.emplace(u, RatFunc());
  std::vector<std::vector<RatFunc>> a(k, std::vector<RatFunc>(k + 1));
  for (std::size_t i = 0; i < k; ++i) {
    RatFunc o = apparent_obstruction(sl, apparent_points[i]);
    for (std::size_t j = 0; j < k; ++j) {
      a[i][j] = differentiate(o, unknowns[j]);
      for (const auto& u : unknowns)
        if (a[i][j].depends_on(u)) throw std::domain_error("obstruction is not affine in the unknowns");
    }
    a[i][k] = -substitute(o, at_zero);
  }
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t p = c;
    while (p < k && vanishes(a[p][c], ctx)) ++p;
    if (p == k) throw std::domain_error("singular accessory system");
    std::swap(a[p], a[c]);
    RatFunc inv = a[c][c].inverse();
    for (std::size_t j = c; j <= k; ++j) a[c][j] = reduced(a[c][j] * inv, ctx);
    for (std::size_t i = 0; i < k; ++i) {
      if (i == c || a[i][c].is_zero()) continue;
      RatFunc f = a[i][c];
      for (std::size_t j = c; j <= k; ++j) a[i][j] = reduced(a[i][j] - f * a[c][j], ctx);
    }
  }
  std::map<std::string, RatFunc> out;
  for (std::size_t i = 0; i < k; ++i) out.emplace(unknowns[i], a[i][k]);
  SLForm solved{sl.x, substitute(sl.Q, out), sl.ctx};
  for (const Point& pt : apparent_points) {
    Point moved = pt.infinity ? pt : Point::at(substitute(pt.value, out));
    if (!vanishes(apparent_obstruction(solved, moved), ctx))
      throw std::domain_error("accessory values leave a nonzero obstruction");
  }
  return out;
}

RatFunc free_critical_points(const RationalMap& phi, const std::vector<Point>& known_fibers) {
  RingPtr ring = phi.value.ring();
  for (const Point& f : known_fibers)
    if (!f.infinity) ring = unite(ring, f.value.ring());
  if (!ring->index(phi.x)) throw std::invalid_argument("constant map has no critical points");
  std::size_t v = *ring->index(phi.x);
  MPoly n = phi.value.num().embed(ring), d = phi.value.den().embed(ring);
  MPoly crit = n.diff(v) * d - n * d.diff(v);
  if (crit.is_zero()) throw std::invalid_argument("constant map has no critical points");
  for (const Point& f : known_fibers) {
    MPoly p = f.infinity ? d : n * f.value.den().embed(ring) - d * f.value.num().embed(ring);
    if (p.degree(v) == 0) continue;
    MPoly g = poly_gcd(p, p.diff(v));
    if (g.degree(v) == 0) continue;
    MPoly content(ring);
    for (const MPoly& c : g.coeffs_in(v)) content = poly_gcd(content, c);
    if (!content.is_constant()) g = *g.divide(content);
    auto q = crit.divide(g);
    if (!q) throw std::domain_error("declared fibers are inconsistent with the map");
    crit = *q;
  }
  if (crit.degree(v) == 0) return RatFunc(ring, 1);
  return RatFunc(crit) / RatFunc(crit.coeffs_in(v).back());
}

namespace {

std::vector<BigInt> all_divisors(const BigInt& n0) {
  BigInt n = abs(n0);
  std::vector<BigInt> out{1};
  BigInt rest = n;
  for (BigInt p = 2; p * p <= rest && p < 1000000; ++p) {
    int e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    if (!e) continue;
    std::size_t base = out.size();
    BigInt pk = 1;
    for (int i = 1; i <= e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < base; ++j) out.push_back(out[j] * pk);
    }
  }
  if (rest > 1) {
    std::size_t base = out.size();
    for (std::size_t j = 0; j < base; ++j) out.push_back(out[j] * rest);
  }
  return out;
}

}  // namespace

std::vector<Point> rational_poles(const SLForm& q) {
  RingPtr ring = q.Q.ring();
  std::vector<Point> out;
  if (q.Q.is_zero()) return out;
  auto vi = ring->index(q.x);
  const MPoly& den = q.Q.den();
  for (std::size_t i = 0; i < ring->size(); ++i)
    if (den.has_var(i) && (!vi || i != *vi))
      throw UnsupportedInput("pole locations depend on parameters; give the point explicitly");
  std::vector<BigRat> roots;
  if (vi && den.degree(*vi) > 0) {
    MPoly p = den.primitive_integer();
    auto cs = p.coeffs_in(*vi);
    std::size_t low = 0;
    while (cs[low].is_zero()) ++low;
    if (low > 0) roots.push_back(0);
    BigInt a0 = cs[low].constant_value().get_num(), an = cs.back().constant_value().get_num();
    auto eval = [&](const BigRat& r) {
      BigRat acc = 0;
      for (std::size_t k = cs.size(); k-- > 0;) acc = acc * r + cs[k].constant_value();
      return acc;
    };
    for (const BigInt& num : all_divisors(a0))
      for (const BigInt& dd : all_divisors(an))
        for (int sign : {1, -1}) {
          BigRat r(sign * num, dd);
          r.canonicalize();
          if (eval(r) == 0 && std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
        }
    std::sort(roots.begin(), roots.end());
  }
  for (const BigRat& r : roots) out.push_back(Point::at(RatFunc(ring, r)));
  RatFunc chart = at_infinity_chart(q.Q, q.x);
  if (!chart.is_zero() && local_order(chart, q.x, Point::at(RatFunc(chart.ring())), nullptr) < 0)
    out.push_back(Point::at_infinity());
  return out;
}

}  // namespace gk
