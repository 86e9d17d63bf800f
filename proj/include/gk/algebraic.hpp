#pragma once

#include <string>
#include <vector>

#include "gk/ratfunc.hpp"

namespace gk {

class SingularOnCurve : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A generator bound by one relation G(generator, base_params) = 0.
class AlgebraicContext {
 public:
  AlgebraicContext(std::string generator, std::vector<std::string> base_params, MPoly relation);
  // Relation given by an expression; a rational expression is cleared of its denominator.
  static AlgebraicContext from_text(const std::string& generator, const std::vector<std::string>& base_params,
                                    const std::string& relation);

  const std::string& generator() const { return generator_; }
  const std::vector<std::string>& base_params() const { return base_params_; }
  const MPoly& relation() const { return relation_; }
  unsigned degree() const;

  // lc^k * p reduced to degree < deg G in the generator, together with the factor lc^k.
  std::pair<MPoly, MPoly> pseudo_reduce(const MPoly& p) const;

 private:
  std::string generator_;
  std::vector<std::string> base_params_;
  MPoly relation_;
};

RatFunc reduce_mod(const RatFunc& r, const AlgebraicContext& ctx);
bool is_zero_mod(const RatFunc& r, const AlgebraicContext& ctx);
bool equals_mod(const RatFunc& a, const RatFunc& b, const AlgebraicContext& ctx);

// Total derivative along G = 0: dX/dt = X_t - X_s * G_t / G_s, reduced mod G.
RatFunc implicit_derivative(const RatFunc& x, const std::string& t, const AlgebraicContext& ctx);
// Same without the final reduction (cheaper when only a zero test follows).
RatFunc implicit_derivative_raw(const RatFunc& x, const std::string& t, const AlgebraicContext& ctx);

}  // namespace gk
