#pragma once

#include "gbik/poly.hpp"

namespace gbik {

// Positive rational c such that p/c has coprime integer coefficients.
// Zero polynomial has content 0.
Rat rational_content(const QPoly& p);

// p divided by its rational content (sign of the leading coefficient kept).
QPoly integer_primitive(const QPoly& p);

// Canonical associate: integer-primitive with positive leading coefficient.
QPoly canonical_unit_normal(const QPoly& p);

// Exact division; throws std::domain_error when b does not divide a.
QPoly exact_div(const QPoly& a, const QPoly& b);

// GCD in Q[vars], canonical unit-normal form; gcd with a nonzero constant is 1.
QPoly poly_gcd(const QPoly& a, const QPoly& b);
QPoly poly_gcd_many(const std::vector<QPoly>& ps);

// Dense view of p as a univariate polynomial in v with polynomial coefficients.
std::vector<QPoly> coeffs_in_var(const QPoly& p, VarId v);
QPoly assemble_in_var(const std::vector<QPoly>& cs, VarId v);

}  // namespace gbik
