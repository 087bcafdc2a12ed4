#pragma once

#include <map>

#include "gbik/poly.hpp"

namespace gbik {

// Full evaluation; every variable occurring in p must be assigned.
Rat eval_poly(const QPoly& p, const std::map<VarId, Rat>& point);

// Substitute the assigned variables, keep the rest symbolic.
QPoly eval_partial(const QPoly& p, const std::map<VarId, Rat>& point);

QPoly derivative(const QPoly& p, VarId v);

// Dense coefficients c[0..deg] with c[k] the coefficient of v^k.
// Throws if p involves any variable other than v.
std::vector<Rat> univariate_coeffs(const QPoly& p, VarId v);
QPoly poly_from_univariate(const std::vector<Rat>& coeffs, VarId v,
                           std::shared_ptr<const MonoOrder> ord);

Rat eval_univariate(const std::vector<Rat>& coeffs, const Rat& t);

}  // namespace gbik
