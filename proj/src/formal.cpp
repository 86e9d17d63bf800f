#include "gk/formal.hpp"

#include <algorithm>
#include <functional>

#include "gk/ratfunc.hpp"

namespace gk {

HalfInt HalfInt::parse(std::string_view text) {
  BigRat r;
  try {
    r = parse_bigrat(text);
  } catch (const std::exception&) {
    throw ParseError(0, "not a half-integer: " + std::string(text));
  }
  BigRat twice = 2 * r;
  if (twice.get_den() != 1 || !twice.get_num().fits_slong_p())
    throw ParseError(0, "not a half-integer: " + std::string(text));
  return from_twice(twice.get_num().get_si());
}

std::string HalfInt::to_string() const { return gk::to_string(value()); }

Exponent Exponent::affine(std::map<std::string, long> coeffs, const BigRat& shift) {
  Exponent e(shift);
  for (auto& [k, v] : coeffs)
    if (v != 0) e.coeffs_[k] = v;
  return e;
}

Exponent Exponent::parse(std::string_view text) {
  RatFunc r = gk::parse(text);
  if (!r.is_polynomial()) throw ParseError(0, "exponent must be affine in its parameters");
  const MPoly& p = r.num();
  BigRat den_inv = BigRat(1) / r.den().constant_value();
  std::map<std::string, long> coeffs;
  BigRat shift = 0;
  for (const auto& t : p.terms()) {
    BigRat c = t.c * den_inv;
    if (t.m.deg == 0) {
      shift = c;
      continue;
    }
    if (t.m.deg > 1) throw ParseError(0, "exponent must be affine in its parameters");
    if (c.get_den() != 1 || !c.get_num().fits_slong_p())
      throw ParseError(0, "parameter coefficients must be integers");
    for (std::size_t v = 0; v < p.ring()->size(); ++v)
      if (t.m.e[v]) coeffs[p.ring()->name(v)] = c.get_num().get_si();
  }
  return affine(std::move(coeffs), shift);
}

bool Exponent::is_integer() const { return coeffs_.empty() && shift_.get_den() == 1; }

Exponent Exponent::operator-() const { return *this * -1; }

Exponent Exponent::operator+(const Exponent& o) const {
  std::map<std::string, long> c = coeffs_;
  for (const auto& [k, v] : o.coeffs_) c[k] += v;
  return affine(std::move(c), shift_ + o.shift_);
}

Exponent Exponent::operator-(const Exponent& o) const { return *this + (-o); }

Exponent Exponent::operator*(long m) const {
  std::map<std::string, long> c = coeffs_;
  for (auto& kv : c) kv.second *= m;
  return affine(std::move(c), shift_ * m);
}

bool Exponent::operator<(const Exponent& o) const {
  if (coeffs_ != o.coeffs_) return coeffs_ < o.coeffs_;
  return shift_ < o.shift_;
}

Exponent Exponent::renamed(const std::map<std::string, std::string>& names) const {
  std::map<std::string, long> c;
  for (const auto& [k, v] : coeffs_) {
    auto it = names.find(k);
    c[it == names.end() ? k : it->second] += v;
  }
  return affine(std::move(c), shift_);
}

std::string Exponent::to_string() const {
  std::string out;
  for (const auto& [name, c] : coeffs_) {
    long a = c < 0 ? -c : c;
    if (out.empty())
      out += c < 0 ? "-" : "";
    else
      out += c < 0 ? " - " : " + ";
    if (a != 1) out += std::to_string(a) + "*";
    out += name;
  }
  if (out.empty()) return gk::to_string(shift_);
  if (shift_ != 0) out += (shift_ < 0 ? " - " : " + ") + gk::to_string(abs(shift_));
  return out;
}

FormalDatum FormalDatum::make(HalfInt kappa, const Exponent& theta) {
  if (!kappa.is_integer()) return {kappa, Exponent(0)};
  return {kappa, theta};
}

std::string FormalDatum::to_string() const { return "(" + kappa.to_string() + "," + theta.to_string() + ")"; }

std::string catalog_name(Catalog c) {
  switch (c) {
    case Catalog::Gauss: return "Gauss";
    case Catalog::Kummer: return "Kummer";
    case Catalog::Weber: return "Weber";
    case Catalog::DegenerateConfluent: return "DegenerateConfluent";
    case Catalog::Airy: return "Airy";
  }
  return "";
}

namespace {

constexpr HalfInt kLog = HalfInt::integer(0);

}  // namespace

BaseEquation gauss_equation(const Exponent& t0, const Exponent& t1, const Exponent& tinf) {
  return {0, {{kLog, t0}, {kLog, t1}, {kLog, tinf}}, Catalog::Gauss};
}

BaseEquation kummer_equation(const Exponent& t0, const Exponent& tinf) {
  return {0, {{kLog, t0}, {HalfInt::integer(1), tinf}}, Catalog::Kummer};
}

BaseEquation weber_equation(const Exponent& tinf) { return {0, {{HalfInt::integer(2), tinf}}, Catalog::Weber}; }

BaseEquation degenerate_confluent_equation(const Exponent& t0) {
  return {0, {{kLog, t0}, FormalDatum::make(HalfInt::from_twice(1), 0)}, Catalog::DegenerateConfluent};
}

BaseEquation airy_equation() { return {0, {FormalDatum::make(HalfInt::from_twice(3), 0)}, Catalog::Airy}; }

BaseEquation gauss_from_params(const BigRat& a, const BigRat& b, const BigRat& c) {
  return gauss_equation(BigRat(c - 1), BigRat(a + b - c), BigRat(a - b));
}

BaseEquation kummer_from_params(const BigRat& a, const BigRat& c) { return kummer_equation(c, BigRat(2 * a - c)); }

BaseEquation weber_from_param(const BigRat& a) { return weber_equation(BigRat(2 * a - 1)); }

BaseEquation degenerate_confluent_from_param(const BigRat& c) { return degenerate_confluent_equation(c); }

namespace {

BigRat frac_part(const BigRat& r) {
  BigInt f;
  mpz_fdiv_q(f.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return r - BigRat(f);
}

}  // namespace

Exponent canonical_exponent(const Exponent& theta) {
  if (theta.is_rational()) {
    BigRat r = frac_part(theta.rational());
    if (r > BigRat(1, 2)) r = 1 - r;
    return r;
  }
  Exponent e = theta.coeffs().begin()->second < 0 ? -theta : theta;
  return Exponent::affine(e.coeffs(), frac_part(e.shift()));
}

std::optional<long> orbifold_order(const Exponent& theta) {
  if (theta.is_affine()) return std::nullopt;
  return theta.rational().get_den().get_si();
}

BigRat chi_irr(int genus0, const FormalData& poles) {
  BigRat chi = 2 - 2 * genus0;
  for (const auto& p : poles) {
    chi -= 1 + p.kappa.value();
    if (p.kappa == kLog)
      if (auto nu = orbifold_order(p.theta)) chi += BigRat(1, *nu);
  }
  chi.canonicalize();
  return chi;
}

BigRat chi_irr(const BaseEquation& base) { return chi_irr(base.genus0, base.poles); }

long polar_degree(const FormalData& data) {
  long n = 0;
  for (const auto& p : data) n += 1 + p.kappa.ceil();
  return n;
}

long teich_dim(int genus, const FormalData& data) { return 3 * genus - 3 + polar_degree(data); }

PulledBackDatum pullback_local(const FormalDatum& fd, long m) {
  if (fd.kappa == kLog && fd.theta.is_rational() && (fd.theta * m).is_integer()) return Removed{};
  return FormalDatum::make(fd.kappa * m, fd.theta * m);
}

bool exponents_match(const FormalDatum& a, const FormalDatum& b) {
  if (a.kappa != b.kappa) return false;
  return (b.theta - a.theta).is_integer() || (b.theta + a.theta).is_integer();
}

bool gauge_equivalent(const FormalData& a, const FormalData& b) {
  if (a.size() != b.size()) return false;
  std::vector<bool> used(b.size(), false);
  std::function<bool(std::size_t)> assign = [&](std::size_t i) {
    if (i == a.size()) return true;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j] || !exponents_match(a[i], b[j])) continue;
      used[j] = true;
      if (assign(i + 1)) return true;
      used[j] = false;
    }
    return false;
  };
  return assign(0);
}

FormalData parse_formal_data(std::string_view text) {
  FormalData out;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip();
  while (i < text.size()) {
    if (text[i] != '(') throw ParseError(i, "expected '('");
    std::size_t comma = text.find(',', i);
    if (comma == std::string_view::npos) throw ParseError(i, "expected ','");
    int depth = 0;
    std::size_t close = comma + 1;
    for (; close < text.size(); ++close) {
      if (text[close] == '(') ++depth;
      if (text[close] == ')' && depth-- == 0) break;
    }
    if (close >= text.size()) throw ParseError(text.size(), "expected ')'");
    HalfInt kappa = HalfInt::parse(text.substr(i + 1, comma - i - 1));
    if (kappa < HalfInt()) throw ParseError(i + 1, "negative irregularity index");
    Exponent theta;
    try {
      theta = Exponent::parse(text.substr(comma + 1, close - comma - 1));
    } catch (const ParseError& e) {
      throw ParseError(comma + 1 + e.position(), e.what());
    }
    if (!kappa.is_integer() && theta != Exponent(0))
      throw ParseError(comma + 1, "exponent must be 0 at a ramified pole");
    out.push_back(FormalDatum::make(kappa, theta));
    i = close + 1;
    skip();
  }
  return out;
}

std::string format_pairs(const FormalData& data) {
  std::string s;
  for (const auto& d : data) s += d.to_string();
  return s;
}

std::string format_columns(const FormalData& data) {
  std::string k, t;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (i) {
      k += ",";
      t += ",";
    }
    k += data[i].kappa.to_string();
    t += data[i].theta.to_string();
  }
  return "(" + k + "; " + t + ")";
}

}  // namespace gk
