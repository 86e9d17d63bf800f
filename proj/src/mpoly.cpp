#include "gk/mpoly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace gk {

std::string to_string(const BigRat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

BigRat parse_bigrat(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char ch) { return std::isspace(ch); }), s.end());
  BigRat q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("not a rational number: " + s);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  q.canonicalize();
  return q;
}

Ring::Ring(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.size() > kMaxVars) throw std::length_error("too many symbols in ring");
  for (std::size_t i = 0; i < names_.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (names_[i] == names_[j]) throw std::invalid_argument("duplicate symbol " + names_[i]);
}

std::optional<std::size_t> Ring::index(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

RingPtr make_ring(std::vector<std::string> names) { return std::make_shared<const Ring>(std::move(names)); }

bool same_ring(const RingPtr& a, const RingPtr& b) { return a == b || a->names() == b->names(); }

RingPtr unite(const RingPtr& a, const RingPtr& b) {
  if (same_ring(a, b)) return a;
  std::vector<std::string> names = a->names();
  bool grew = false;
  for (const auto& n : b->names())
    if (!a->index(n)) {
      names.push_back(n);
      grew = true;
    }
  if (!grew) return a;
  return make_ring(std::move(names));
}

bool Monomial::divides(const Monomial& o) const {
  if (deg > o.deg) return false;
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (e[i] > o.e[i]) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    unsigned v = unsigned(e[i]) + o.e[i];
    if (v > 0xffff) throw std::overflow_error("exponent overflow");
    r.e[i] = std::uint16_t(v);
  }
  r.deg = deg + o.deg;
  return r;
}

Monomial Monomial::operator/(const Monomial& o) const {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) r.e[i] = std::uint16_t(e[i] - o.e[i]);
  r.deg = deg - o.deg;
  return r;
}

Monomial Monomial::var(std::size_t i, unsigned power) {
  Monomial m;
  m.e[i] = std::uint16_t(power);
  m.deg = power;
  return m;
}

int grlex_cmp(const Monomial& a, const Monomial& b) {
  if (a.deg != b.deg) return a.deg < b.deg ? -1 : 1;
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? -1 : 1;
  return 0;
}

std::size_t MonomialHash::operator()(const Monomial& m) const {
  std::uint64_t h = 1469598103934665603ull;
  for (auto x : m.e) {
    h ^= x;
    h *= 1099511628211ull;
  }
  return std::size_t(h);
}

namespace {

bool term_greater(const Term& a, const Term& b) { return grlex_cmp(a.m, b.m) > 0; }

struct MonoGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return grlex_cmp(a, b) > 0; }
};

void check_ring(const MPoly& a, const MPoly& b) {
  if (!same_ring(a.ring(), b.ring())) throw std::invalid_argument("polynomials over different rings");
}

}  // namespace

class MPolyBuilder {
 public:
  static MPoly make(RingPtr ring, std::vector<Term> sorted) {
    MPoly p(std::move(ring));
    p.terms_ = std::move(sorted);
    return p;
  }
};

MPoly::MPoly(RingPtr ring, const BigRat& c) : ring_(std::move(ring)) {
  if (c != 0) terms_.push_back({Monomial{}, c});
}

MPoly MPoly::variable(RingPtr ring, std::size_t i) {
  if (i >= ring->size()) throw std::out_of_range("variable index");
  return monomial(std::move(ring), Monomial::var(i), 1);
}

MPoly MPoly::variable(RingPtr ring, std::string_view name) {
  auto i = ring->index(name);
  if (!i) throw std::invalid_argument("unknown symbol " + std::string(name));
  return variable(std::move(ring), *i);
}

MPoly MPoly::monomial(RingPtr ring, const Monomial& m, const BigRat& c) {
  MPoly p(std::move(ring));
  if (c != 0) p.terms_.push_back({m, c});
  return p;
}

MPoly MPoly::from_terms(RingPtr ring, std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), term_greater);
  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().m == t.m)
      out.back().c += t.c;
    else
      out.push_back(std::move(t));
    if (out.back().c == 0) out.pop_back();
  }
  return MPolyBuilder::make(std::move(ring), std::move(out));
}

bool MPoly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].m.deg == 0); }

BigRat MPoly::constant_value() const {
  if (terms_.empty()) return 0;
  if (!is_constant()) throw std::logic_error("polynomial is not constant");
  return terms_[0].c;
}

unsigned MPoly::degree(std::size_t var) const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max<unsigned>(d, t.m.e[var]);
  return d;
}

unsigned MPoly::total_degree() const { return terms_.empty() ? 0 : terms_.front().m.deg; }

std::vector<std::size_t> MPoly::vars() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < ring_->size(); ++i)
    if (degree(i) > 0) out.push_back(i);
  return out;
}

Monomial MPoly::min_exponents() const {
  Monomial m;
  if (terms_.empty()) return m;
  m = terms_.front().m;
  for (const auto& t : terms_)
    for (std::size_t i = 0; i < kMaxVars; ++i) m.e[i] = std::min(m.e[i], t.m.e[i]);
  m.deg = 0;
  for (auto x : m.e) m.deg += x;
  return m;
}

MPoly MPoly::operator-() const {
  MPoly r = *this;
  for (auto& t : r.terms_) t.c = -t.c;
  return r;
}

MPoly MPoly::operator+(const MPoly& o) const {
  check_ring(*this, o);
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() && j < o.terms_.size()) {
    int c = grlex_cmp(terms_[i].m, o.terms_[j].m);
    if (c > 0) {
      out.push_back(terms_[i++]);
    } else if (c < 0) {
      out.push_back(o.terms_[j++]);
    } else {
      BigRat s = terms_[i].c + o.terms_[j].c;
      if (s != 0) out.push_back({terms_[i].m, s});
      ++i;
      ++j;
    }
  }
  for (; i < terms_.size(); ++i) out.push_back(terms_[i]);
  for (; j < o.terms_.size(); ++j) out.push_back(o.terms_[j]);
  return MPolyBuilder::make(ring_, std::move(out));
}

MPoly MPoly::operator-(const MPoly& o) const { return *this + (-o); }

MPoly MPoly::operator*(const MPoly& o) const {
  check_ring(*this, o);
  if (is_zero() || o.is_zero()) return MPoly(ring_);
  if (o.terms_.size() == 1) return mul_monomial(o.terms_[0].m, o.terms_[0].c);
  if (terms_.size() == 1) return o.mul_monomial(terms_[0].m, terms_[0].c);
  std::unordered_map<Monomial, BigRat, MonomialHash> acc;
  acc.reserve(terms_.size() * o.terms_.size() / 2 + 8);
  BigRat tmp;
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) {
      tmp = a.c * b.c;
      auto [it, fresh] = acc.try_emplace(a.m * b.m, tmp);
      if (!fresh) it->second += tmp;
    }
  std::vector<Term> out;
  out.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (c != 0) out.push_back({m, std::move(c)});
  std::sort(out.begin(), out.end(), term_greater);
  return MPolyBuilder::make(ring_, std::move(out));
}

MPoly MPoly::scale(const BigRat& c) const {
  if (c == 0) return MPoly(ring_);
  MPoly r = *this;
  for (auto& t : r.terms_) t.c *= c;
  return r;
}

MPoly MPoly::mul_monomial(const Monomial& m, const BigRat& c) const {
  if (c == 0) return MPoly(ring_);
  MPoly r = *this;
  for (auto& t : r.terms_) {
    t.m = t.m * m;
    t.c *= c;
  }
  return r;
}

MPoly MPoly::div_monomial(const Monomial& m) const {
  MPoly r = *this;
  for (auto& t : r.terms_) {
    if (!m.divides(t.m)) throw std::logic_error("monomial does not divide");
    t.m = t.m / m;
  }
  return r;
}

MPoly MPoly::pow(unsigned n) const {
  MPoly result(ring_, 1), base = *this;
  while (n) {
    if (n & 1u) result = result * base;
    n >>= 1u;
    if (n) base = base * base;
  }
  return result;
}

bool MPoly::operator==(const MPoly& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  if (!same_ring(ring_, o.ring_)) {
    MPoly a = *this, b = o;
    align(a, b);
    return a == b;
  }
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].m != o.terms_[i].m || terms_[i].c != o.terms_[i].c) return false;
  return true;
}

std::optional<MPoly> MPoly::divide(const MPoly& o) const {
  check_ring(*this, o);
  if (o.is_zero()) throw std::domain_error("division by zero polynomial");
  if (is_zero()) return MPoly(ring_);
  if (o.terms_.size() == 1) {
    const auto& d = o.terms_[0];
    MPoly r = *this;
    for (auto& t : r.terms_) {
      if (!d.m.divides(t.m)) return std::nullopt;
      t.m = t.m / d.m;
      t.c /= d.c;
    }
    return r;
  }
  // Cheap rejections before the full division.
  const Monomial& lm = o.terms_.front().m;
  if (!lm.divides(terms_.front().m)) return std::nullopt;
  if (!o.terms_.back().m.divides(terms_.back().m)) return std::nullopt;
  for (std::size_t v = 0; v < ring_->size(); ++v)
    if (o.degree(v) > degree(v)) return std::nullopt;

  std::map<Monomial, BigRat, MonoGreater> rem;
  for (const auto& t : terms_) rem.emplace(t.m, t.c);
  std::vector<Term> quot;
  const BigRat& lc = o.terms_.front().c;
  BigRat tmp;
  while (!rem.empty()) {
    auto it = rem.begin();
    if (!lm.divides(it->first)) return std::nullopt;
    Monomial qm = it->first / lm;
    BigRat qc = it->second / lc;
    rem.erase(it);
    for (std::size_t k = 1; k < o.terms_.size(); ++k) {
      Monomial m = o.terms_[k].m * qm;
      tmp = o.terms_[k].c * qc;
      auto [jt, fresh] = rem.try_emplace(m, -tmp);
      if (!fresh) {
        jt->second -= tmp;
        if (jt->second == 0) rem.erase(jt);
      }
    }
    quot.push_back({qm, std::move(qc)});
    if (!rem.empty() && grlex_cmp(rem.begin()->first, o.terms_.back().m) < 0) return std::nullopt;
  }
  return MPolyBuilder::make(ring_, std::move(quot));
}

MPoly MPoly::diff(std::size_t var) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    if (t.m.e[var] == 0) continue;
    Term n{t.m, t.c * t.m.e[var]};
    n.m.e[var] -= 1;
    n.m.deg -= 1;
    out.push_back(std::move(n));
  }
  return from_terms(ring_, std::move(out));
}

std::vector<MPoly> MPoly::coeffs_in(std::size_t var) const {
  std::vector<std::vector<Term>> buckets(degree(var) + 1);
  for (const auto& t : terms_) {
    Term n = t;
    unsigned k = n.m.e[var];
    n.m.e[var] = 0;
    n.m.deg -= k;
    buckets[k].push_back(std::move(n));
  }
  std::vector<MPoly> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(from_terms(ring_, std::move(b)));
  return out;
}

MPoly MPoly::from_coeffs(const std::vector<MPoly>& coeffs, std::size_t var) {
  if (coeffs.empty()) throw std::invalid_argument("empty coefficient list");
  RingPtr ring = coeffs.front().ring();
  std::vector<Term> all;
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    for (const auto& t : coeffs[k].terms()) {
      Term n = t;
      n.m.e[var] = std::uint16_t(n.m.e[var] + k);
      n.m.deg += unsigned(k);
      all.push_back(std::move(n));
    }
  return from_terms(ring, std::move(all));
}

MPoly MPoly::eval(std::size_t var, const BigRat& value) const {
  unsigned dmax = degree(var);
  std::vector<BigRat> powers(dmax + 1);
  powers[0] = 1;
  for (unsigned k = 1; k <= dmax; ++k) powers[k] = powers[k - 1] * value;
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Term n = t;
    unsigned k = n.m.e[var];
    n.m.e[var] = 0;
    n.m.deg -= k;
    n.c *= powers[k];
    if (n.c != 0) out.push_back(std::move(n));
  }
  return from_terms(ring_, std::move(out));
}

MPoly MPoly::eval(std::size_t var, const MPoly& value) const {
  check_ring(*this, value);
  auto cs = coeffs_in(var);
  MPoly acc(ring_);
  for (std::size_t k = cs.size(); k-- > 0;) acc = acc * value + cs[k];
  return acc;
}

MPoly MPoly::embed(const RingPtr& target) const {
  if (same_ring(ring_, target)) {
    MPoly r = *this;
    r.ring_ = target;
    return r;
  }
  std::vector<std::size_t> map(ring_->size());
  for (std::size_t i = 0; i < ring_->size(); ++i) {
    auto j = target->index(ring_->name(i));
    if (!j) {
      if (degree(i) == 0) {
        map[i] = kMaxVars;
        continue;
      }
      throw std::invalid_argument("symbol " + ring_->name(i) + " missing from target ring");
    }
    map[i] = *j;
  }
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Term n;
    n.c = t.c;
    n.m.deg = t.m.deg;
    for (std::size_t i = 0; i < ring_->size(); ++i)
      if (t.m.e[i]) n.m.e[map[i]] = t.m.e[i];
    out.push_back(std::move(n));
  }
  return from_terms(target, std::move(out));
}

MPoly MPoly::primitive_integer() const {
  if (is_zero()) return *this;
  BigInt l = 1, g = 0;
  for (const auto& t : terms_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.c.get_den_mpz_t());
  std::vector<Term> out = terms_;
  for (auto& t : out) {
    t.c *= l;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.c.get_num_mpz_t());
  }
  if (out.front().c < 0) g = -g;
  for (auto& t : out) t.c /= g;
  return MPolyBuilder::make(ring_, std::move(out));
}

BigInt MPoly::max_norm() const {
  BigInt m = 0;
  for (const auto& t : terms_) {
    BigInt a = abs(t.c.get_num());
    if (a > m) m = a;
  }
  return m;
}

bool MPoly::is_integral() const {
  for (const auto& t : terms_)
    if (t.c.get_den() != 1) return false;
  return true;
}

std::string MPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    BigRat c = t.c;
    bool neg = c < 0;
    if (neg) c = -c;
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    bool unit = (c == 1);
    bool wrote = false;
    if (!unit || t.m.deg == 0) {
      os << gk::to_string(c);
      wrote = true;
    }
    for (std::size_t i = 0; i < ring_->size(); ++i) {
      if (!t.m.e[i]) continue;
      if (wrote) os << "*";
      os << ring_->name(i);
      if (t.m.e[i] > 1) os << "^" << t.m.e[i];
      wrote = true;
    }
  }
  return os.str();
}

void align(MPoly& a, MPoly& b) {
  if (same_ring(a.ring(), b.ring())) {
    if (a.ring() != b.ring()) b = b.embed(a.ring());
    return;
  }
  RingPtr r = unite(a.ring(), b.ring());
  a = a.embed(r);
  b = b.embed(r);
}

}  // namespace gk
