#include "gk/algebraic.hpp"

#include <algorithm>
#include <stdexcept>

namespace gk {

AlgebraicContext::AlgebraicContext(std::string generator, std::vector<std::string> base_params, MPoly relation)
    : generator_(std::move(generator)), base_params_(std::move(base_params)), relation_(std::move(relation)) {
  auto g = relation_.ring()->index(generator_);
  if (!g || relation_.degree(*g) == 0) throw std::invalid_argument("relation has degree 0 in the generator");
  for (std::size_t v = 0; v < relation_.ring()->size(); ++v) {
    if (v == *g || !relation_.has_var(v)) continue;
    const std::string& name = relation_.ring()->name(v);
    if (std::find(base_params_.begin(), base_params_.end(), name) == base_params_.end())
      throw std::invalid_argument("relation involves undeclared symbol " + name);
  }
}

AlgebraicContext AlgebraicContext::from_text(const std::string& generator, const std::vector<std::string>& base_params,
                                             const std::string& relation) {
  std::vector<std::string> syms{generator};
  syms.insert(syms.end(), base_params.begin(), base_params.end());
  RatFunc r = parse(relation, syms);
  return AlgebraicContext(generator, base_params, r.num().primitive_integer());
}

unsigned AlgebraicContext::degree() const { return relation_.degree(*relation_.ring()->index(generator_)); }

std::pair<MPoly, MPoly> AlgebraicContext::pseudo_reduce(const MPoly& p0) const {
  MPoly p = p0, g = relation_;
  align(p, g);
  std::size_t v = *p.ring()->index(generator_);
  MPoly factor(p.ring(), 1);
  unsigned dg = g.degree(v);
  if (p.degree(v) < dg) return {p, factor};
  std::vector<MPoly> gc = g.coeffs_in(v);
  std::vector<MPoly> rc = p.coeffs_in(v);
  const MPoly& lcg = gc.back();
  bool unit_lead = lcg.is_constant();
  BigRat inv_lead = unit_lead ? BigRat(1) / lcg.constant_value() : BigRat(1);
  while (rc.size() > dg) {
    MPoly top = rc.back();
    rc.pop_back();
    if (!top.is_zero()) {
      std::size_t shift = rc.size() - dg;  // top sits at degree shift + dg
      if (unit_lead) {
        MPoly q = top.scale(inv_lead);
        for (unsigned i = 0; i < dg; ++i)
          if (!gc[i].is_zero()) rc[shift + i] -= q * gc[i];
      } else {
        for (auto& c : rc)
          if (!c.is_zero()) c = c * lcg;
        for (unsigned i = 0; i < dg; ++i)
          if (!gc[i].is_zero()) rc[shift + i] -= top * gc[i];
        factor = factor * lcg;
      }
    }
  }
  if (rc.empty()) rc.push_back(MPoly(p.ring()));
  return {MPoly::from_coeffs(rc, v), factor};
}

namespace {

void require_nonzero_den(const RatFunc& r, const AlgebraicContext& ctx) {
  if (r.den().is_constant()) return;
  if (ctx.pseudo_reduce(r.den()).first.is_zero())
    throw SingularOnCurve("denominator vanishes on the curve: " + r.den().to_string());
}

}  // namespace

RatFunc reduce_mod(const RatFunc& r, const AlgebraicContext& ctx) {
  auto [rn, fn] = ctx.pseudo_reduce(r.num());
  auto [rd, fd] = ctx.pseudo_reduce(r.den());
  if (rd.is_zero()) throw SingularOnCurve("denominator vanishes on the curve");
  if (rn.is_zero()) return RatFunc(rn.ring());
  return RatFunc(rn * fd, rd * fn);
}

bool is_zero_mod(const RatFunc& r, const AlgebraicContext& ctx) {
  require_nonzero_den(r, ctx);
  return ctx.pseudo_reduce(r.num()).first.is_zero();
}

bool equals_mod(const RatFunc& a, const RatFunc& b, const AlgebraicContext& ctx) {
  require_nonzero_den(a, ctx);
  require_nonzero_den(b, ctx);
  RatFunc x = a, y = b;
  align(x, y);
  MPoly cross = x.num() * y.den() - y.num() * x.den();
  return ctx.pseudo_reduce(cross).first.is_zero();
}

RatFunc implicit_derivative_raw(const RatFunc& x, const std::string& t, const AlgebraicContext& ctx) {
  RatFunc dxt = differentiate(x, t);
  if (!x.depends_on(ctx.generator())) return dxt;
  RatFunc g(ctx.relation());
  RatFunc gs = differentiate(g, ctx.generator());
  if (gs.is_zero() || ctx.pseudo_reduce(gs.num()).first.is_zero())
    throw SingularOnCurve("relation is degenerate in the generator");
  RatFunc gt = differentiate(g, t);
  if (gt.is_zero()) return dxt;
  return dxt - differentiate(x, ctx.generator()) * gt / gs;
}

RatFunc implicit_derivative(const RatFunc& x, const std::string& t, const AlgebraicContext& ctx) {
  return reduce_mod(implicit_derivative_raw(x, t, ctx), ctx);
}

}  // namespace gk
