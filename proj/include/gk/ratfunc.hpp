#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gk/mpoly.hpp"

namespace gk {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t pos, const std::string& msg)
      : std::runtime_error(msg + " at position " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

class ZeroDenominator : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// num/den with gcd removed and den monic under grlex.
class RatFunc {
 public:
  RatFunc() = default;
  explicit RatFunc(RingPtr ring) : num_(ring), den_(ring, 1) {}
  RatFunc(RingPtr ring, const BigRat& c) : num_(ring, c), den_(ring, 1) {}
  explicit RatFunc(const MPoly& p);
  RatFunc(const MPoly& num, const MPoly& den);
  static RatFunc variable(RingPtr ring, std::string_view name);

  const MPoly& num() const { return num_; }
  const MPoly& den() const { return den_; }
  const RingPtr& ring() const { return num_.ring(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  bool is_polynomial() const { return den_.is_constant(); }
  BigRat constant_value() const;
  std::vector<std::string> free_symbols() const;
  bool depends_on(std::string_view name) const;

  RatFunc operator-() const;
  RatFunc operator+(const RatFunc& o) const;
  RatFunc operator-(const RatFunc& o) const;
  RatFunc operator*(const RatFunc& o) const;
  RatFunc operator/(const RatFunc& o) const;
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }
  RatFunc pow(int n) const;
  RatFunc inverse() const;

  bool operator==(const RatFunc& o) const;
  bool operator!=(const RatFunc& o) const { return !(*this == o); }

  RatFunc embed(const RingPtr& target) const;
  std::string to_string() const;

 private:
  MPoly num_{make_ring({})};
  MPoly den_{make_ring({}), 1};
};

RatFunc operator*(const BigRat& c, const RatFunc& r);
RatFunc operator+(const RatFunc& r, const BigRat& c);
RatFunc operator-(const RatFunc& r, const BigRat& c);

void align(RatFunc& a, RatFunc& b);

RatFunc parse(std::string_view text, const std::vector<std::string>& symbols);
// Symbols taken from the text in order of first appearance.
RatFunc parse(std::string_view text);

RatFunc differentiate(const RatFunc& r, std::string_view var);
RatFunc substitute(const RatFunc& r, const std::map<std::string, RatFunc>& bindings);
// Polynomial with RatFunc values substituted, as a RatFunc.
RatFunc substitute(const MPoly& p, const std::map<std::string, RatFunc>& bindings);

// Exact square roots; nullopt when the argument is not a square.
std::optional<BigRat> sqrt_exact(const BigRat& q);
std::optional<MPoly> sqrt_exact(const MPoly& p);
std::optional<RatFunc> sqrt_exact(const RatFunc& r);

// A finite point (a RatFunc in the other symbols) or infinity.
struct Point {
  bool infinity = false;
  RatFunc value;
  static Point at(const RatFunc& v) { return {false, v}; }
  static Point at_infinity() { return {true, RatFunc()}; }
};

// Coefficients a_from, ..., a_{from+count-1} of the Laurent series of r in (v - center),
// or in 1/v at infinity (no weight applied).
std::vector<RatFunc> laurent_coeffs(const RatFunc& r, std::string_view var, const Point& center, int from_order,
                                    int count);
// Order of r at center (lowest nonzero exponent); r must be nonzero.
int laurent_valuation(const RatFunc& r, std::string_view var, const Point& center);

}  // namespace gk
