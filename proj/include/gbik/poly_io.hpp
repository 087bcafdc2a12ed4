#pragma once

#include <string>

#include "gbik/poly.hpp"

namespace gbik {

// Text form: terms in descending order, e.g. "3/2*x^2*y - 1".
std::string poly_to_string(const QPoly& p);
std::string mono_to_string(const Monomial& m, const MonoOrder& ord);

// Inverse of poly_to_string (accepts any term order and repeated monomials).
QPoly parse_poly(const std::string& text, std::shared_ptr<const MonoOrder> ord);

}  // namespace gbik
