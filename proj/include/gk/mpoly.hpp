#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gk {

using BigInt = mpz_class;
using BigRat = mpq_class;

std::string to_string(const BigRat& q);
BigRat parse_bigrat(std::string_view text);

inline constexpr std::size_t kMaxVars = 24;

// Ordered list of symbol names; position defines the monomial order.
class Ring {
 public:
  explicit Ring(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_[i]; }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::size_t> index(std::string_view name) const;

 private:
  std::vector<std::string> names_;
};

using RingPtr = std::shared_ptr<const Ring>;

RingPtr make_ring(std::vector<std::string> names);
bool same_ring(const RingPtr& a, const RingPtr& b);
// Names of a, followed by names of b not already present.
RingPtr unite(const RingPtr& a, const RingPtr& b);

struct Monomial {
  std::array<std::uint16_t, kMaxVars> e{};
  std::uint32_t deg = 0;

  bool operator==(const Monomial& o) const { return deg == o.deg && e == o.e; }
  bool operator!=(const Monomial& o) const { return !(*this == o); }
  bool divides(const Monomial& o) const;
  Monomial operator*(const Monomial& o) const;
  Monomial operator/(const Monomial& o) const;
  static Monomial var(std::size_t i, unsigned power = 1);
};

// Graded lexicographic: total degree first, then the earlier variable wins.
int grlex_cmp(const Monomial& a, const Monomial& b);

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const;
};

struct Term {
  Monomial m;
  BigRat c;
};

class MPoly {
 public:
  MPoly() : ring_(make_ring({})) {}
  explicit MPoly(RingPtr ring) : ring_(std::move(ring)) {}
  MPoly(RingPtr ring, const BigRat& c);
  static MPoly variable(RingPtr ring, std::size_t i);
  static MPoly variable(RingPtr ring, std::string_view name);
  static MPoly monomial(RingPtr ring, const Monomial& m, const BigRat& c);
  // Terms need not be sorted or combined.
  static MPoly from_terms(RingPtr ring, std::vector<Term> terms);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  BigRat constant_value() const;
  const Term& lead() const { return terms_.front(); }
  const BigRat& lc() const { return terms_.front().c; }

  unsigned degree(std::size_t var) const;
  unsigned total_degree() const;
  bool has_var(std::size_t var) const { return degree(var) > 0; }
  std::vector<std::size_t> vars() const;
  Monomial min_exponents() const;

  MPoly operator-() const;
  MPoly operator+(const MPoly& o) const;
  MPoly operator-(const MPoly& o) const;
  MPoly operator*(const MPoly& o) const;
  MPoly& operator+=(const MPoly& o) { return *this = *this + o; }
  MPoly& operator-=(const MPoly& o) { return *this = *this - o; }
  MPoly& operator*=(const MPoly& o) { return *this = *this * o; }
  MPoly scale(const BigRat& c) const;
  MPoly mul_monomial(const Monomial& m, const BigRat& c) const;
  MPoly div_monomial(const Monomial& m) const;
  MPoly pow(unsigned n) const;

  bool operator==(const MPoly& o) const;
  bool operator!=(const MPoly& o) const { return !(*this == o); }

  // Exact division; nullopt when o does not divide *this.
  std::optional<MPoly> divide(const MPoly& o) const;

  MPoly diff(std::size_t var) const;
  // Coefficients as a polynomial in var: result[k] multiplies var^k.
  std::vector<MPoly> coeffs_in(std::size_t var) const;
  static MPoly from_coeffs(const std::vector<MPoly>& coeffs, std::size_t var);
  MPoly eval(std::size_t var, const BigRat& value) const;
  MPoly eval(std::size_t var, const MPoly& value) const;
  // Re-express in a ring whose names include all names of this ring.
  MPoly embed(const RingPtr& target) const;

  // Multiply by the lcm of denominators and divide by the gcd of numerators; leading coefficient > 0.
  MPoly primitive_integer() const;
  BigInt max_norm() const;
  bool is_integral() const;

  std::string to_string() const;

 private:
  RingPtr ring_;
  std::vector<Term> terms_;  // sorted, grlex descending, no zeros
  friend class MPolyBuilder;
};

// Bring two polynomials into a common ring.
void align(MPoly& a, MPoly& b);

}  // namespace gk
