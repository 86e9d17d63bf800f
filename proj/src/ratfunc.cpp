#include "gk/ratfunc.hpp"

#include <cctype>
#include <set>

#include "gk/polygcd.hpp"

namespace gk {

namespace {

std::pair<MPoly, MPoly> make_monic(MPoly num, MPoly den) {
  if (num.is_zero()) return {MPoly(num.ring()), MPoly(num.ring(), 1)};
  BigRat c = den.lc();
  if (c != 1) {
    BigRat inv = 1 / c;
    num = num.scale(inv);
    den = den.scale(inv);
  }
  return {std::move(num), std::move(den)};
}

}  // namespace

RatFunc::RatFunc(const MPoly& p) : num_(p), den_(p.ring(), 1) {}

RatFunc::RatFunc(const MPoly& num, const MPoly& den) {
  MPoly n = num, d = den;
  align(n, d);
  if (d.is_zero()) throw ZeroDenominator("zero denominator");
  if (n.is_zero()) {
    num_ = MPoly(n.ring());
    den_ = MPoly(n.ring(), 1);
    return;
  }
  if (!d.is_constant()) {
    MPoly g = poly_gcd(n, d);
    if (!g.is_constant()) {
      n = exact_quotient(n, g);
      d = exact_quotient(d, g);
    }
  }
  std::tie(num_, den_) = make_monic(std::move(n), std::move(d));
}

RatFunc RatFunc::variable(RingPtr ring, std::string_view name) { return RatFunc(MPoly::variable(std::move(ring), name)); }

BigRat RatFunc::constant_value() const {
  if (!is_constant()) throw std::logic_error("rational function is not constant");
  return num_.constant_value() / den_.constant_value();
}

std::vector<std::string> RatFunc::free_symbols() const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < ring()->size(); ++i)
    if (num_.has_var(i) || den_.has_var(i)) out.push_back(ring()->name(i));
  return out;
}

bool RatFunc::depends_on(std::string_view name) const {
  auto i = ring()->index(name);
  return i && (num_.has_var(*i) || den_.has_var(*i));
}

void align(RatFunc& a, RatFunc& b) {
  if (a.ring() == b.ring()) return;
  RingPtr r = unite(a.ring(), b.ring());
  a = a.embed(r);
  b = b.embed(r);
}

RatFunc RatFunc::embed(const RingPtr& target) const {
  RatFunc r;
  r.num_ = num_.embed(target);
  r.den_ = den_.embed(target);
  return r;
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
  RatFunc a = *this, b = o;
  align(a, b);
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  RatFunc r;
  if (a.den_ == b.den_) {
    MPoly n = a.num_ + b.num_;
    if (n.is_zero()) return RatFunc(a.ring());
    if (a.den_.is_constant()) {
      r.num_ = n;
      r.den_ = a.den_;
      return r;
    }
    return RatFunc(n, a.den_);
  }
  if (a.den_.is_constant() && b.den_.is_constant()) {
    r.num_ = a.num_ + b.num_;
    r.den_ = a.den_;
    return r;
  }
  MPoly g = poly_gcd(a.den_, b.den_);
  MPoly b1 = g.is_constant() ? a.den_ : exact_quotient(a.den_, g);
  MPoly d1 = g.is_constant() ? b.den_ : exact_quotient(b.den_, g);
  MPoly n = a.num_ * d1 + b.num_ * b1;
  if (n.is_zero()) return RatFunc(a.ring());
  MPoly den = b1 * d1;
  if (!g.is_constant()) {
    MPoly h = poly_gcd(n, g);
    if (!h.is_constant()) {
      n = exact_quotient(n, h);
      den = den * exact_quotient(g, h);
    } else {
      den = den * g;
    }
  }
  std::tie(r.num_, r.den_) = make_monic(std::move(n), std::move(den));
  return r;
}

RatFunc RatFunc::operator-(const RatFunc& o) const { return *this + (-o); }

RatFunc RatFunc::operator*(const RatFunc& o) const {
  RatFunc a = *this, b = o;
  align(a, b);
  if (a.is_zero() || b.is_zero()) return RatFunc(a.ring());
  MPoly an = a.num_, ad = a.den_, bn = b.num_, bd = b.den_;
  if (!bd.is_constant()) {
    MPoly g = poly_gcd(an, bd);
    if (!g.is_constant()) {
      an = exact_quotient(an, g);
      bd = exact_quotient(bd, g);
    }
  }
  if (!ad.is_constant()) {
    MPoly g = poly_gcd(bn, ad);
    if (!g.is_constant()) {
      bn = exact_quotient(bn, g);
      ad = exact_quotient(ad, g);
    }
  }
  RatFunc r;
  std::tie(r.num_, r.den_) = make_monic(an * bn, ad * bd);
  return r;
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw ZeroDenominator("inverse of zero");
  RatFunc r;
  std::tie(r.num_, r.den_) = make_monic(den_, num_);
  return r;
}

RatFunc RatFunc::operator/(const RatFunc& o) const {
  if (o.is_zero()) throw ZeroDenominator("division by the zero function");
  return *this * o.inverse();
}

RatFunc RatFunc::pow(int n) const {
  if (n < 0) return inverse().pow(-n);
  RatFunc r;
  r.num_ = num_.pow(unsigned(n));
  r.den_ = den_.pow(unsigned(n));
  return r;
}

bool RatFunc::operator==(const RatFunc& o) const {
  if (same_ring(ring(), o.ring())) return num_ == o.num_ && den_ == o.den_;
  RatFunc a = *this, b = o;
  align(a, b);
  return a.num_ == b.num_ && a.den_ == b.den_;
}

std::string RatFunc::to_string() const {
  if (den_.is_constant()) return num_.to_string();
  std::string n = num_.to_string();
  std::string d = den_.to_string();
  bool wrap_n = num_.size() > 1;
  bool wrap_d = den_.size() > 1 || den_.lc() != 1 || den_.lead().m.deg > 1 ||
                (den_.size() == 1 && d.find('*') != std::string::npos);
  return (wrap_n ? "(" + n + ")" : n) + "/" + (wrap_d ? "(" + d + ")" : d);
}

RatFunc operator*(const BigRat& c, const RatFunc& r) { return RatFunc(r.ring(), c) * r; }
RatFunc operator+(const RatFunc& r, const BigRat& c) { return r + RatFunc(r.ring(), c); }
RatFunc operator-(const RatFunc& r, const BigRat& c) { return r - RatFunc(r.ring(), c); }

// --- parser ---------------------------------------------------------------

namespace {

class Parser {
 public:
  Parser(std::string_view text, RingPtr ring) : s_(text), ring_(std::move(ring)) {}

  RatFunc run() {
    skip();
    if (pos_ >= s_.size()) throw ParseError(pos_, "empty expression");
    RatFunc r = expr();
    skip();
    if (pos_ < s_.size()) throw ParseError(pos_, std::string("unexpected character '") + s_[pos_] + "'");
    return r;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  RatFunc expr() {
    RatFunc acc = term();
    while (true) {
      if (peek('+')) {
        ++pos_;
        acc = acc + term();
      } else if (peek('-')) {
        ++pos_;
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  RatFunc term() {
    RatFunc acc = factor();
    while (true) {
      if (peek('*')) {
        ++pos_;
        acc = acc * factor();
      } else if (peek('/')) {
        std::size_t at = pos_++;
        RatFunc d = factor();
        if (d.is_zero()) throw ParseError(at, "division by the zero function");
        acc = acc / d;
      } else {
        return acc;
      }
    }
  }

  RatFunc factor() {
    std::size_t at = pos_;
    RatFunc base = atom();
    if (peek('^')) {
      ++pos_;
      skip();
      bool neg = false;
      if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
        neg = s_[pos_] == '-';
        ++pos_;
      }
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) throw ParseError(pos_, "expected integer exponent");
      long e = std::stol(std::string(s_.substr(start, pos_ - start)));
      if (neg) e = -e;
      if (e < 0 && base.is_zero()) throw ParseError(at, "division by the zero function");
      return base.pow(int(e));
    }
    return base;
  }

  RatFunc atom() {
    skip();
    if (pos_ >= s_.size()) throw ParseError(pos_, "unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      RatFunc r = expr();
      if (!peek(')')) throw ParseError(pos_, "expected ')'");
      ++pos_;
      return r;
    }
    if (c == '-') {
      ++pos_;
      return -factor();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      BigInt v(std::string(s_.substr(start, pos_ - start)));
      return RatFunc(ring_, BigRat(v));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      if (!ring_->index(name)) throw ParseError(start, "unknown symbol '" + name + "'");
      return RatFunc::variable(ring_, name);
    }
    throw ParseError(pos_, std::string("unexpected character '") + c + "'");
  }

  std::string_view s_;
  RingPtr ring_;
  std::size_t pos_ = 0;
};

std::vector<std::string> identifiers_in(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = i;
      while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) ++i;
      std::string name(text.substr(start, i - start));
      if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    } else {
      ++i;
    }
  }
  return out;
}

}  // namespace

RatFunc parse(std::string_view text, const std::vector<std::string>& symbols) {
  return Parser(text, make_ring(symbols)).run();
}

RatFunc parse(std::string_view text) { return parse(text, identifiers_in(text)); }

// --- calculus and substitution ----------------------------------------------

RatFunc differentiate(const RatFunc& r, std::string_view var) {
  auto i = r.ring()->index(var);
  if (!i || !r.depends_on(var)) return RatFunc(r.ring());
  if (r.den().is_constant()) return RatFunc(r.num().diff(*i), r.den());
  MPoly n = r.num().diff(*i) * r.den() - r.num() * r.den().diff(*i);
  if (n.is_zero()) return RatFunc(r.ring());
  // gcd(n, den^2) divides den * gcd(n, den); cancel against den first.
  MPoly d = r.den();
  MPoly g = poly_gcd(n, d);
  MPoly n1 = g.is_constant() ? n : exact_quotient(n, g);
  MPoly d1 = g.is_constant() ? d : exact_quotient(d, g);
  return RatFunc(n1, d1 * d);
}

namespace {

struct Binding {
  std::size_t var;
  unsigned deg;
  std::vector<MPoly> npow, dpow;
};

MPoly substitute_rec(const MPoly& p, const std::vector<Binding>& bs, std::size_t idx, const RingPtr& target) {
  if (p.is_zero()) return MPoly(target);
  if (idx == bs.size()) return p.embed(target);
  const Binding& b = bs[idx];
  auto cs = p.coeffs_in(b.var);
  MPoly acc(target);
  for (std::size_t k = 0; k < cs.size(); ++k) {
    if (cs[k].is_zero()) continue;
    MPoly part = substitute_rec(cs[k], bs, idx + 1, target);
    acc += part * b.npow[k] * b.dpow[b.deg - k];
  }
  return acc;
}

// p(values) = num / den with den a product of powers of value denominators.
std::pair<MPoly, MPoly> substitute_poly(const MPoly& p, const std::map<std::string, RatFunc>& bindings,
                                        RingPtr& target) {
  target = p.ring();
  for (const auto& [name, v] : bindings) target = unite(target, v.ring());
  std::vector<Binding> bs;
  MPoly den(target, 1);
  for (const auto& [name, v] : bindings) {
    auto i = p.ring()->index(name);
    if (!i) continue;
    unsigned deg = p.degree(*i);
    if (deg == 0) continue;
    Binding b{*i, deg, {}, {}};
    MPoly n = v.num().embed(target), d = v.den().embed(target);
    b.npow.push_back(MPoly(target, 1));
    b.dpow.push_back(MPoly(target, 1));
    for (unsigned k = 1; k <= deg; ++k) {
      b.npow.push_back(b.npow.back() * n);
      b.dpow.push_back(d.is_constant() ? b.dpow.back().scale(d.constant_value()) : b.dpow.back() * d);
    }
    den *= b.dpow[deg];
    bs.push_back(std::move(b));
  }
  return {substitute_rec(p, bs, 0, target), den};
}

}  // namespace

RatFunc substitute(const MPoly& p, const std::map<std::string, RatFunc>& bindings) {
  RingPtr target;
  auto [n, d] = substitute_poly(p, bindings, target);
  return RatFunc(n, d);
}

RatFunc substitute(const RatFunc& r, const std::map<std::string, RatFunc>& bindings) {
  RingPtr t1, t2;
  auto [n1, d1] = substitute_poly(r.num(), bindings, t1);
  auto [n2, d2] = substitute_poly(r.den(), bindings, t2);
  if (n2.is_zero()) throw ZeroDenominator("substitution makes the denominator identically zero");
  MPoly a = n1 * d2, b = d1 * n2;
  return RatFunc(a, b);
}

namespace {

struct LocalFraction {
  std::vector<MPoly> a, b;  // coefficient lists in the local variable, leading zeros stripped
  int order = 0;            // r = t^order * (sum a_i t^i) / (sum b_i t^i)
  RingPtr ring;
  std::size_t var = 0;
};

int strip_low(std::vector<MPoly>& c) {
  int k = 0;
  while (k < int(c.size()) && c[k].is_zero()) ++k;
  c.erase(c.begin(), c.begin() + k);
  return k;
}

LocalFraction localize(const RatFunc& r0, std::string_view var, const Point& center) {
  RingPtr ring = r0.ring();
  if (!center.infinity) ring = unite(ring, center.value.ring());
  if (!ring->index(var)) ring = unite(ring, make_ring({std::string(var)}));
  RatFunc r = r0.embed(ring);
  std::size_t v = *ring->index(var);
  LocalFraction lf;
  lf.ring = ring;
  lf.var = v;
  MPoly A(ring), B(ring);
  int shift = 0;
  if (center.infinity) {
    auto nc = r.num().coeffs_in(v), dc = r.den().coeffs_in(v);
    std::reverse(nc.begin(), nc.end());
    std::reverse(dc.begin(), dc.end());
    A = MPoly::from_coeffs(nc, v);
    B = MPoly::from_coeffs(dc, v);
    shift = int(r.den().degree(v)) - int(r.num().degree(v));
  } else if (center.value.is_zero()) {
    A = r.num();
    B = r.den();
  } else {
    if (center.value.depends_on(var)) throw std::invalid_argument("center depends on the expansion variable");
    RatFunc shifted = RatFunc::variable(ring, var) + center.value.embed(ring);
    std::map<std::string, RatFunc> bind{{std::string(var), shifted}};
    RingPtr t1, t2;
    auto [n1, d1] = substitute_poly(r.num(), bind, t1);
    auto [n2, d2] = substitute_poly(r.den(), bind, t2);
    if (n2.is_zero()) throw ZeroDenominator("center makes the denominator vanish identically");
    A = n1 * d2;
    B = d1 * n2;
    align(A, B);
    ring = A.ring();
    lf.ring = ring;
    lf.var = *ring->index(var);
    v = lf.var;
  }
  lf.a = A.coeffs_in(v);
  lf.b = B.coeffs_in(v);
  int ja = strip_low(lf.a), jb = strip_low(lf.b);
  lf.order = shift + ja - jb;
  return lf;
}

}  // namespace

int laurent_valuation(const RatFunc& r, std::string_view var, const Point& center) {
  if (r.is_zero()) throw std::invalid_argument("valuation of zero");
  return localize(r, var, center).order;
}

std::vector<RatFunc> laurent_coeffs(const RatFunc& r, std::string_view var, const Point& center, int from_order,
                                    int count) {
  std::vector<RatFunc> out;
  if (count <= 0) return out;
  if (r.is_zero()) {
    for (int i = 0; i < count; ++i) out.push_back(RatFunc(r.ring()));
    return out;
  }
  LocalFraction lf = localize(r, var, center);
  int last = from_order + count - 1;
  int need = last - lf.order;  // highest index of the power series quotient
  std::vector<MPoly> bs;       // b_m = c_m * B0^(m+1)
  const MPoly& b0 = lf.b[0];
  auto bcoef = [&](int i) -> const MPoly* { return i < int(lf.b.size()) ? &lf.b[i] : nullptr; };
  std::vector<MPoly> b0pow{MPoly(lf.ring, 1)};
  for (int m = 0; m <= need; ++m) {
    while (int(b0pow.size()) <= m + 1) b0pow.push_back(b0pow.back() * b0);
    MPoly acc = m < int(lf.a.size()) ? lf.a[m] * b0pow[m] : MPoly(lf.ring);
    for (int i = 1; i <= m; ++i) {
      const MPoly* bi = bcoef(i);
      if (!bi || bi->is_zero()) continue;
      acc -= *bi * bs[m - i] * b0pow[i - 1];
    }
    bs.push_back(std::move(acc));
  }
  for (int n = from_order; n <= last; ++n) {
    int m = n - lf.order;
    if (m < 0) {
      out.push_back(RatFunc(lf.ring));
    } else {
      out.push_back(RatFunc(bs[m], b0pow[m + 1]));
    }
  }
  return out;
}

}  // namespace gk

namespace gk {

std::optional<BigRat> sqrt_exact(const BigRat& q) {
  if (sgn(q) < 0) return std::nullopt;
  if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t())) return std::nullopt;
  BigInt n, d;
  mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
  return BigRat(n, d);
}

std::optional<MPoly> sqrt_exact(const MPoly& p) {
  if (p.is_zero()) return p;
  const Term& lt = p.lead();
  Monomial half;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    if (lt.m.e[i] % 2) return std::nullopt;
    half.e[i] = lt.m.e[i] / 2;
  }
  half.deg = lt.m.deg / 2;
  auto c = sqrt_exact(lt.c);
  if (!c) return std::nullopt;
  MPoly s = MPoly::monomial(p.ring(), half, *c);
  MPoly rest = p - s * s;
  while (!rest.is_zero()) {
    const Term& r = rest.lead();
    if (!half.divides(r.m)) return std::nullopt;
    Monomial m = r.m / half;
    if (grlex_cmp(m, half) >= 0) return std::nullopt;
    MPoly t = MPoly::monomial(p.ring(), m, r.c / (2 * *c));
    rest -= t * (s + s + t);
    s += t;
  }
  return s;
}

std::optional<RatFunc> sqrt_exact(const RatFunc& r) {
  if (r.is_zero()) return r;
  auto d = sqrt_exact(r.den());
  if (!d) return std::nullopt;
  auto n = sqrt_exact(r.num());
  if (!n) return std::nullopt;
  return RatFunc(*n, *d);
}

}  // namespace gk
