#pragma once

#include <vector>

#include "gbik/poly.hpp"

namespace gbik {

// Real root of a univariate polynomial. Either an exact rational root
// (lo == hi) or an open isolating interval (lo, hi) holding exactly one root.
struct RealRoot {
    Rat lo, hi;
    int multiplicity = 1;

    bool exact() const { return lo == hi; }
    Rat mid() const { return (lo + hi) / 2; }
    double approx() const { return to_double(mid()); }
};

// Dense univariate coefficients, ascending: c[0] + c[1] x + ... Trailing
// zeros are tolerated.
using UniPoly = std::vector<Rat>;

int uni_degree(const UniPoly& p);              // -1 for zero
int sign_at(const UniPoly& p, const Rat& t);   // -1, 0, 1
UniPoly uni_derivative(const UniPoly& p);
UniPoly uni_mul(const UniPoly& a, const UniPoly& b);
UniPoly uni_exact_div(const UniPoly& a, const UniPoly& b);
UniPoly uni_gcd(UniPoly a, UniPoly b);         // monic

// Square-free decomposition: result[k] has the factors of multiplicity k+1,
// monic; the product of result[k]^(k+1) equals p up to a constant.
std::vector<UniPoly> squarefree_decomposition(const UniPoly& p);

// All real roots with multiplicities, sorted ascending, pairwise disjoint
// intervals refined to width <= tol. Throws std::invalid_argument on the zero
// polynomial.
std::vector<RealRoot> isolate_real_roots(const UniPoly& p, const Rat& tol = Rat(1, 1000000));

// Shrink an isolating interval of a square-free polynomial to width <= tol.
RealRoot refine_root(const UniPoly& squarefree, RealRoot r, const Rat& tol);

// Convenience for polynomials that involve exactly one variable.
std::vector<RealRoot> isolate_real_roots(const QPoly& p, VarId v,
                                         const Rat& tol = Rat(1, 1000000));

}  // namespace gbik
