#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gk/mpoly.hpp"

namespace gk {

class HalfInt {
 public:
  constexpr HalfInt() = default;
  static constexpr HalfInt from_twice(std::int64_t twice) { return HalfInt(twice); }
  static constexpr HalfInt integer(std::int64_t n) { return HalfInt(2 * n); }
  static HalfInt parse(std::string_view text);

  constexpr std::int64_t twice() const { return twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  // Smallest integer >= value.
  constexpr std::int64_t ceil() const { return twice_ >= 0 ? (twice_ + 1) / 2 : twice_ / 2; }
  BigRat value() const {
    BigRat r(twice_, 2);
    r.canonicalize();
    return r;
  }

  constexpr HalfInt operator+(HalfInt o) const { return HalfInt(twice_ + o.twice_); }
  constexpr HalfInt operator-(HalfInt o) const { return HalfInt(twice_ - o.twice_); }
  constexpr HalfInt operator*(std::int64_t m) const { return HalfInt(twice_ * m); }
  constexpr auto operator<=>(const HalfInt&) const = default;

  std::string to_string() const;

 private:
  constexpr explicit HalfInt(std::int64_t twice) : twice_(twice) {}
  std::int64_t twice_ = 0;
};

// A rational number, or an integer-linear form in named parameters plus a rational shift.
class Exponent {
 public:
  Exponent() = default;
  Exponent(const BigRat& r) : shift_(r) {}  // NOLINT
  Exponent(long n) : shift_(n) {}           // NOLINT
  static Exponent affine(std::map<std::string, long> coeffs, const BigRat& shift = 0);
  static Exponent parameter(const std::string& name) { return affine({{name, 1}}); }
  // An expression in the exactalg grammar that is linear with integer parameter coefficients.
  static Exponent parse(std::string_view text);

  bool is_rational() const { return coeffs_.empty(); }
  bool is_affine() const { return !coeffs_.empty(); }
  const BigRat& shift() const { return shift_; }
  // The value when is_rational().
  const BigRat& rational() const { return shift_; }
  const std::map<std::string, long>& coeffs() const { return coeffs_; }
  bool is_integer() const;

  Exponent operator-() const;
  Exponent operator+(const Exponent& o) const;
  Exponent operator-(const Exponent& o) const;
  Exponent operator*(long m) const;
  bool operator==(const Exponent& o) const { return coeffs_ == o.coeffs_ && shift_ == o.shift_; }
  // Lexicographic on (coefficients, shift); used only for canonical ordering.
  bool operator<(const Exponent& o) const;

  Exponent renamed(const std::map<std::string, std::string>& names) const;
  std::string to_string() const;

 private:
  std::map<std::string, long> coeffs_;
  BigRat shift_;
};

// Irregularity index kappa and exponent theta at one pole.
struct FormalDatum {
  HalfInt kappa;
  Exponent theta;

  // Enforces theta = 0 when kappa is not an integer.
  static FormalDatum make(HalfInt kappa, const Exponent& theta);
  bool operator==(const FormalDatum& o) const { return kappa == o.kappa && theta == o.theta; }
  std::string to_string() const;  // "(1/2,0)"
};

using FormalData = std::vector<FormalDatum>;

enum class Catalog { Gauss, Kummer, Weber, DegenerateConfluent, Airy };

struct BaseEquation {
  int genus0 = 0;
  FormalData poles;
  std::optional<Catalog> catalog;
};

std::string catalog_name(Catalog c);

// Standard equations in terms of their exponents; poles listed finite first, infinity last.
BaseEquation gauss_equation(const Exponent& t0, const Exponent& t1, const Exponent& tinf);
BaseEquation kummer_equation(const Exponent& t0, const Exponent& tinf);
BaseEquation weber_equation(const Exponent& tinf);
BaseEquation degenerate_confluent_equation(const Exponent& t0);
BaseEquation airy_equation();

// The same equations in terms of their classical parameters.
BaseEquation gauss_from_params(const BigRat& a, const BigRat& b, const BigRat& c);    // (c-1, a+b-c, a-b)
BaseEquation kummer_from_params(const BigRat& a, const BigRat& c);                    // (c, 2a-c)
BaseEquation weber_from_param(const BigRat& a);                                       // 2a-1
BaseEquation degenerate_confluent_from_param(const BigRat& c);                        // c

struct Removed {
  bool operator==(const Removed&) const { return true; }
};
using PulledBackDatum = std::variant<FormalDatum, Removed>;

// Representative modulo sign and integer shift: a rational value lands in [0, 1/2];
// an affine form gets a positive first coefficient and a shift in [0, 1).
Exponent canonical_exponent(const Exponent& theta);

// Order of local monodromy: q for p/q in lowest terms, 1 for integers, nullopt (infinite) for parameters.
std::optional<long> orbifold_order(const Exponent& theta);
BigRat chi_irr(const BaseEquation& base);
BigRat chi_irr(int genus0, const FormalData& poles);
// Sum of (1 + ceil(kappa)).
long polar_degree(const FormalData& data);
long teich_dim(int genus, const FormalData& data);
PulledBackDatum pullback_local(const FormalDatum& fd, long m);
// theta_b = +-theta_a + integer, with kappas equal.
bool exponents_match(const FormalDatum& a, const FormalDatum& b);
bool gauge_equivalent(const FormalData& a, const FormalData& b);

// "(k1,theta1)(k2,theta2)..."
FormalData parse_formal_data(std::string_view text);
std::string format_pairs(const FormalData& data);
// "(k1,k2,...; theta1,theta2,...)"
std::string format_columns(const FormalData& data);

}  // namespace gk
