#include "gk/polygcd.hpp"

#include <random>
#include <stdexcept>

namespace gk {

namespace {

using UPoly = std::vector<MPoly>;  // coefficients in one variable, index = degree

void trim(UPoly& p) {
  while (p.size() > 1 && p.back().is_zero()) p.pop_back();
}

bool upoly_zero(const UPoly& p) { return p.empty() || (p.size() == 1 && p[0].is_zero()); }

int upoly_deg(const UPoly& p) { return upoly_zero(p) ? -1 : int(p.size()) - 1; }

// Largest monomial dividing every term, together with the quotient.
std::pair<Monomial, MPoly> split_monomial_content(const MPoly& p) {
  Monomial m = p.min_exponents();
  if (m.deg == 0) return {m, p};
  return {m, p.div_monomial(m)};
}

Monomial monomial_gcd(const Monomial& a, const Monomial& b) {
  Monomial m;
  for (std::size_t i = 0; i < kMaxVars; ++i) m.e[i] = std::min(a.e[i], b.e[i]);
  for (auto x : m.e) m.deg += x;
  return m;
}

UPoly to_upoly(const MPoly& p, std::size_t var) {
  UPoly u = p.coeffs_in(var);
  trim(u);
  return u;
}

MPoly from_upoly(const UPoly& u, std::size_t var) { return MPoly::from_coeffs(u, var); }

// --- modular images -------------------------------------------------------

constexpr std::uint64_t kPrimes[] = {2147483647ull, 2147483629ull, 2147483587ull};

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return (a * b) % p; }

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t p) { return powmod(a, p - 2, p); }

std::optional<std::uint64_t> rat_mod(const BigRat& c, std::uint64_t p) {
  std::uint64_t den = mpz_fdiv_ui(c.get_den_mpz_t(), p);
  if (den == 0) return std::nullopt;
  std::uint64_t num = mpz_fdiv_ui(c.get_num_mpz_t(), p);
  return mulmod(num, invmod(den, p), p);
}

using ModPoly = std::vector<std::uint64_t>;

void mod_trim(ModPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Image in var of p with every other variable set to point[] mod prime.
std::optional<ModPoly> mod_image(const MPoly& poly, std::size_t var, const std::vector<std::uint64_t>& point,
                                 std::uint64_t prime) {
  ModPoly out(poly.degree(var) + 1, 0);
  for (const auto& t : poly.terms()) {
    auto c = rat_mod(t.c, prime);
    if (!c) return std::nullopt;
    std::uint64_t v = *c;
    for (std::size_t i = 0; i < poly.ring()->size(); ++i)
      if (i != var && t.m.e[i]) v = mulmod(v, powmod(point[i], t.m.e[i], prime), prime);
    auto& slot = out[t.m.e[var]];
    slot = (slot + v) % prime;
  }
  mod_trim(out);
  return out;
}

ModPoly mod_gcd(ModPoly a, ModPoly b, std::uint64_t p) {
  mod_trim(a);
  mod_trim(b);
  while (!b.empty()) {
    // a <- a mod b
    std::uint64_t inv = invmod(b.back(), p);
    while (a.size() >= b.size()) {
      std::uint64_t f = mulmod(a.back(), inv, p);
      std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] = (a[i + shift] + p - mulmod(f, b[i], p)) % p;
      mod_trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return a;
}

// --- recursive pieces shared by the routes --------------------------------

MPoly gcd_impl(const MPoly& a, const MPoly& b, bool reference);

MPoly content_in(const UPoly& u, bool reference) {
  MPoly g(u.front().ring());
  for (const auto& c : u) {
    if (c.is_zero()) continue;
    g = gcd_impl(g, c, reference);
    if (g.is_constant()) break;
  }
  return g;
}

UPoly upoly_div(const UPoly& u, const MPoly& c) {
  UPoly out;
  out.reserve(u.size());
  for (const auto& x : u) out.push_back(exact_quotient(x, c));
  return out;
}

UPoly upoly_prem(UPoly a, const UPoly& b) {
  int db = upoly_deg(b);
  int da = upoly_deg(a);
  if (da < db) return a;
  const MPoly& lcb = b.back();
  int e = da - db + 1;
  while (!upoly_zero(a) && upoly_deg(a) >= db) {
    int j = upoly_deg(a) - db;
    MPoly lca = a.back();
    for (auto& x : a) x = x * lcb;
    for (int i = 0; i <= db; ++i) a[i + j] = a[i + j] - lca * b[i];
    trim(a);
    --e;
  }
  if (e > 0) {
    MPoly f = lcb.pow(unsigned(e));
    for (auto& x : a) x = x * f;
  }
  return a;
}

// Subresultant sequence on primitive inputs; returns the primitive last nonzero element.
UPoly subresultant_last(UPoly a, UPoly b, bool reference) {
  if (upoly_deg(a) < upoly_deg(b)) std::swap(a, b);
  RingPtr ring = a.front().ring();
  MPoly g(ring, 1), h(ring, 1);
  while (true) {
    int d = upoly_deg(a) - upoly_deg(b);
    UPoly r = upoly_prem(a, b);
    if (upoly_zero(r)) break;
    if (upoly_deg(r) == 0) return UPoly{MPoly(ring, 1)};
    a = b;
    MPoly divisor = g * h.pow(unsigned(d));
    b = upoly_div(r, divisor);
    g = a.back();
    if (d == 0) {
      // h unchanged
    } else if (d == 1) {
      h = g;
    } else {
      h = exact_quotient(g.pow(unsigned(d)), h.pow(unsigned(d - 1)));
    }
  }
  MPoly c = content_in(b, reference);
  return upoly_div(b, c);
}

MPoly normalize_sign(MPoly p) {
  if (p.is_zero()) return p;
  return p.primitive_integer();
}

MPoly subresultant_in_var(const MPoly& a, const MPoly& b, std::size_t var, bool reference) {
  UPoly ua = to_upoly(a, var), ub = to_upoly(b, var);
  MPoly ca = content_in(ua, reference), cb = content_in(ub, reference);
  MPoly c = gcd_impl(ca, cb, reference);
  UPoly pa = upoly_div(ua, ca), pb = upoly_div(ub, cb);
  UPoly last = subresultant_last(pa, pb, reference);
  return normalize_sign(from_upoly(last, var) * c);
}

// gcd of p with every coefficient of q viewed in var (var absent from p).
MPoly gcd_with_coefficients(const MPoly& p, const MPoly& q, std::size_t var, bool reference) {
  MPoly g = p;
  for (const auto& c : q.coeffs_in(var)) {
    if (c.is_zero()) continue;
    g = gcd_impl(g, c, reference);
    if (g.is_constant()) break;
  }
  return g;
}

MPoly gcd_impl(const MPoly& a0, const MPoly& b0, bool reference) {
  if (a0.is_zero()) return normalize_sign(b0);
  if (b0.is_zero()) return normalize_sign(a0);
  RingPtr ring = a0.ring();
  if (a0.is_constant() || b0.is_constant()) return MPoly(ring, 1);
  MPoly a = a0.primitive_integer(), b = b0.primitive_integer();
  if (a == b) return a;

  auto [ma, ra] = split_monomial_content(a);
  auto [mb, rb] = split_monomial_content(b);
  MPoly mono = MPoly::monomial(ring, monomial_gcd(ma, mb), 1);
  if (ra.is_constant() || rb.is_constant()) return mono;
  a = ra;
  b = rb;

  for (std::size_t v = 0; v < ring->size(); ++v) {
    bool in_a = a.has_var(v), in_b = b.has_var(v);
    if (in_a && !in_b) return normalize_sign(mono * gcd_with_coefficients(b, a, v, reference));
    if (in_b && !in_a) return normalize_sign(mono * gcd_with_coefficients(a, b, v, reference));
  }
  std::vector<std::size_t> vars = a.vars();

  if (!reference) {
    if (a.size() <= b.size()) {
      if (b.divide(a)) return normalize_sign(mono * a);
    } else {
      if (a.divide(b)) return normalize_sign(mono * b);
    }
    bool all_coprime = true;
    for (auto v : vars)
      if (!coprime_in_var_probe(a, b, v)) {
        all_coprime = false;
        break;
      }
    if (all_coprime) return mono;
    if (auto h = poly_gcd_heuristic(a, b)) return normalize_sign(mono * *h);
  }
  // Main variable: the one of smallest degree keeps the PRS short.
  std::size_t best = vars.front();
  unsigned best_deg = ~0u;
  for (auto v : vars) {
    unsigned d = std::max(a.degree(v), b.degree(v));
    if (d < best_deg) {
      best_deg = d;
      best = v;
    }
  }
  return normalize_sign(mono * subresultant_in_var(a, b, best, reference));
}

// --- heuristic gcd --------------------------------------------------------

struct HeuResult {
  MPoly h, cf, cg;
};

MPoly symmetric_mod(const MPoly& p, const BigInt& xi) {
  std::vector<Term> out;
  BigInt half = xi / 2;
  for (const auto& t : p.terms()) {
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), t.c.get_num_mpz_t(), xi.get_mpz_t());
    if (r > half) r -= xi;
    if (r != 0) out.push_back({t.m, BigRat(r)});
  }
  return MPoly::from_terms(p.ring(), std::move(out));
}

MPoly interpolate(MPoly h, std::size_t var, const BigInt& xi) {
  if (!h.is_integral()) return MPoly(h.ring());
  std::vector<MPoly> coeffs;
  BigRat inv = BigRat(1) / BigRat(xi);
  while (!h.is_zero()) {
    MPoly g = symmetric_mod(h, xi);
    coeffs.push_back(g);
    h = (h - g).scale(inv);
  }
  if (coeffs.empty()) return h;
  MPoly r = MPoly::from_coeffs(coeffs, var);
  if (r.lc() < 0) r = -r;
  return r;
}

BigInt isqrt(const BigInt& n) {
  BigInt r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

std::optional<HeuResult> heu(const MPoly& f0, const MPoly& g0) {
  RingPtr ring = f0.ring();
  if (f0.is_constant() && g0.is_constant()) {
    BigInt a = f0.constant_value().get_num(), b = g0.constant_value().get_num();
    BigInt h;
    mpz_gcd(h.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (h == 0) return std::nullopt;
    return HeuResult{MPoly(ring, BigRat(h)), MPoly(ring, BigRat(a / h)), MPoly(ring, BigRat(b / h))};
  }
  if (f0.is_zero() || g0.is_zero()) return std::nullopt;
  std::size_t var = kMaxVars;
  for (std::size_t v = 0; v < ring->size(); ++v)
    if (f0.has_var(v) || g0.has_var(v)) {
      var = v;
      break;
    }

  // Common integer content.
  BigInt cont = 0;
  for (const auto& t : f0.terms()) mpz_gcd(cont.get_mpz_t(), cont.get_mpz_t(), t.c.get_num_mpz_t());
  for (const auto& t : g0.terms()) mpz_gcd(cont.get_mpz_t(), cont.get_mpz_t(), t.c.get_num_mpz_t());
  BigRat icont = BigRat(1) / BigRat(cont);
  MPoly f = f0.scale(icont), g = g0.scale(icont);

  BigInt fn = f.max_norm(), gn = g.max_norm();
  BigInt b = 2 * std::min(fn, gn) + 29;
  BigInt lf = abs(f.lc().get_num()), lg = abs(g.lc().get_num());
  BigInt sb = 99 * isqrt(b);
  BigInt qf = fn / lf, qg = gn / lg;
  BigInt lo = 2 * std::min(qf, qg) + 4;
  BigInt xi = std::max(BigInt(std::min(b, sb)), lo);

  for (int attempt = 0; attempt < 6; ++attempt) {
    MPoly ff = f.eval(var, BigRat(xi)), gg = g.eval(var, BigRat(xi));
    if (!ff.is_zero() && !gg.is_zero()) {
      if (auto sub = heu(ff, gg)) {
        MPoly h = interpolate(sub->h, var, xi).primitive_integer();
        if (!h.is_zero()) {
          if (auto cf = f.divide(h))
            if (auto cg = g.divide(h)) return HeuResult{h.scale(BigRat(cont)), *cf, *cg};
        }
        MPoly cff = interpolate(sub->cf, var, xi);
        if (!cff.is_zero())
          if (auto hh = f.divide(cff))
            if (auto cg = g.divide(*hh)) return HeuResult{hh->scale(BigRat(cont)), cff, *cg};
        MPoly cfg = interpolate(sub->cg, var, xi);
        if (!cfg.is_zero())
          if (auto hh = g.divide(cfg))
            if (auto cf = f.divide(*hh)) return HeuResult{hh->scale(BigRat(cont)), *cf, cfg};
      }
    }
    xi = 73794 * xi * isqrt(isqrt(xi)) / 27011;
  }
  return std::nullopt;
}

}  // namespace

MPoly exact_quotient(const MPoly& a, const MPoly& b) {
  auto q = a.divide(b);
  if (!q) throw std::logic_error("inexact polynomial division");
  return *q;
}

MPoly pseudo_remainder(const MPoly& a, const MPoly& b, std::size_t var) {
  MPoly x = a, y = b;
  align(x, y);
  return from_upoly(upoly_prem(to_upoly(x, var), to_upoly(y, var)), var);
}

bool coprime_in_var_probe(const MPoly& a0, const MPoly& b0, std::size_t var) {
  MPoly a = a0, b = b0;
  align(a, b);
  unsigned da = a.degree(var), db = b.degree(var);
  if (da == 0 || db == 0) return false;
  std::mt19937_64 rng(0x9e3779b97f4a7c15ull ^ (var * 7919));
  for (std::uint64_t p : kPrimes) {
    std::vector<std::uint64_t> point(a.ring()->size());
    for (auto& x : point) x = 2 + rng() % (p - 3);
    auto ia = mod_image(a, var, point, p), ib = mod_image(b, var, point, p);
    if (!ia || !ib) continue;
    if (ia->size() != da + 1 || ib->size() != db + 1) continue;
    return mod_gcd(*ia, *ib, p).size() == 1;
  }
  return false;
}

std::optional<MPoly> poly_gcd_heuristic(const MPoly& a0, const MPoly& b0) {
  MPoly a = a0.primitive_integer(), b = b0.primitive_integer();
  align(a, b);
  if (a.is_zero() || b.is_zero()) return std::nullopt;
  auto r = heu(a, b);
  if (!r) return std::nullopt;
  return r->h.primitive_integer();
}

MPoly poly_gcd(const MPoly& a, const MPoly& b) {
  MPoly x = a, y = b;
  align(x, y);
  return gcd_impl(x, y, false);
}

MPoly poly_gcd_subresultant(const MPoly& a, const MPoly& b) {
  MPoly x = a, y = b;
  align(x, y);
  return gcd_impl(x, y, true);
}

}  // namespace gk
