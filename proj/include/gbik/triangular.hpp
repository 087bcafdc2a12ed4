#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "gbik/poly.hpp"

namespace gbik {

// The ideal has infinitely many solutions (some variable is unconstrained).
struct PositiveDimensional : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TriangularResult {
    // one map per real solution, every order variable assigned an exact
    // rational approximation
    std::vector<std::map<VarId, Rat>> solutions;
    bool inconsistent = false;  // basis was the unit ideal
};

// Back-substitute a zero-dimensional reduced lex Groebner basis: isolate the
// roots of the last variable, substitute, re-isolate level by level. Each
// returned tuple satisfies |g(tuple)| < 10 * refine_to for every basis
// element (coordinates are refined adaptively until that holds; candidates
// that never meet it are discarded as spurious).
TriangularResult solve_triangular(const std::vector<QPoly>& basis,
                                  const Rat& refine_to = Rat(1, 1000000000000LL));

}  // namespace gbik
