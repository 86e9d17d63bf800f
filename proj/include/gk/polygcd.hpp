#pragma once

#include <optional>

#include "gk/mpoly.hpp"

namespace gk {

// gcd over Q, returned as an integer-primitive polynomial with positive leading coefficient.
// gcd(0, 0) = 0.
MPoly poly_gcd(const MPoly& a, const MPoly& b);

// Recursive subresultant PRS with content extraction; the reference route.
MPoly poly_gcd_subresultant(const MPoly& a, const MPoly& b);

// Evaluation/interpolation heuristic on integer polynomials; nullopt when it gives up.
std::optional<MPoly> poly_gcd_heuristic(const MPoly& a, const MPoly& b);

// True when an image mod p proves the gcd has degree 0 in var.
bool coprime_in_var_probe(const MPoly& a, const MPoly& b, std::size_t var);

// Exact quotient; throws when b does not divide a.
MPoly exact_quotient(const MPoly& a, const MPoly& b);

// Pseudo-remainder of a by b viewed as polynomials in var: lc(b)^k * a mod b, with k = deg a - deg b + 1.
MPoly pseudo_remainder(const MPoly& a, const MPoly& b, std::size_t var);

}  // namespace gk
