#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gk/algebraic.hpp"
#include "gk/formal.hpp"
#include "gk/ratfunc.hpp"

namespace gk {

// Input outside what the exact routines handle (for example a non-square leading coefficient).
class UnsupportedInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// u'' + f u' + g u = 0.
struct GeneralScalar {
  std::string x = "x";
  RatFunc f;
  RatFunc g;
  std::optional<AlgebraicContext> ctx;
};

// v'' = Q v.
struct SLForm {
  std::string x = "x";
  RatFunc Q;
  std::optional<AlgebraicContext> ctx;
};

// z = value(x).
struct RationalMap {
  std::string x = "x";
  RatFunc value;
};

struct LocalInvariant {
  HalfInt kappa;
  int pole_order = 0;
  // theta^2 when kappa = 0; otherwise the square of theta_raw.
  RatFunc theta_squared;
  // Exact theta when it lies in the coefficient field (sign fixed by the branch choice).
  std::optional<RatFunc> theta_raw;
  // Canonical representative when theta_raw is rational or integer-affine in the parameters.
  std::optional<Exponent> theta;
  std::optional<bool> apparent;

  std::string to_string() const;
};

// "inf" (also "infinity", "oo") or an expression in the given symbols.
Point parse_point(std::string_view text, const std::vector<std::string>& symbols);
Point parse_point(std::string_view text);
std::string format_point(const Point& p);

SLForm sl_normalize(const GeneralScalar& e);
// The scalar equation with f = 0 whose normal form is q.
GeneralScalar gauge(const SLForm& q);

RatFunc schwarzian(const RationalMap& phi);
// outer(inner(x)), in the variable of inner.
RationalMap compose(const RationalMap& outer, const RationalMap& inner);
SLForm sl_pullback(const SLForm& q, const RationalMap& phi);

// Q(1/s)/s^4 in the same variable.
RatFunc at_infinity_chart(const RatFunc& q, const std::string& x);

// Laurent order of r at the point, with coefficients tested modulo ctx when given.
int local_order(const RatFunc& r, const std::string& x, const Point& center, const AlgebraicContext* ctx);

// Laurent coefficients of orders from .. from+count-1 (in 1/x at infinity), exact modulo ctx when given.
std::vector<RatFunc> local_laurent(const RatFunc& r, const std::string& x, const Point& center, int from, int count,
                                   const AlgebraicContext* ctx);

LocalInvariant local_invariants(const SLForm& q, const Point& center);

// The rational value, or the integer-affine form, of a parameter expression.
std::optional<Exponent> to_exponent(const RatFunc& r);

// Frobenius resonance term at a point with kappa = 0 and integer theta >= 1; zero iff apparent.
RatFunc apparent_obstruction(const SLForm& q, const Point& center);

// Values of the unknowns that make every listed point apparent.
std::map<std::string, RatFunc> solve_accessory(const GeneralScalar& tmpl, const std::vector<std::string>& unknowns,
                                               const std::vector<Point>& apparent_points);

// Monic polynomial in x whose roots are the critical points of phi outside the declared fibers.
RatFunc free_critical_points(const RationalMap& phi, const std::vector<Point>& known_fibers);

// Finite rational poles (ascending) followed by infinity when Q has a pole there.
// Requires a denominator free of parameters.
std::vector<Point> rational_poles(const SLForm& q);

}  // namespace gk
