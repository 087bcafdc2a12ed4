#pragma once

#include "gbik/gcd.hpp"
#include "gbik/poly.hpp"

namespace gbik {

// Reduced fraction of polynomials over Q. Canonical form: gcd(num, den) = 1,
// den integer-primitive with positive leading coefficient, zero is 0/1.
// Constants may be "orderless" (no ring attached yet); they adopt the ring of
// the first non-constant operand they meet, which lets Poly<RatFunc> build
// C(0)/C(1) coefficients without threading an order through.
struct RatFunc {
    QPoly num, den;

    RatFunc() : RatFunc(Rat(0)) {}
    RatFunc(int k) : RatFunc(Rat(k)) {}
    explicit RatFunc(const Rat& r);
    explicit RatFunc(QPoly n);
    RatFunc(QPoly n, QPoly d);  // normalizes

    bool is_zero() const { return num.terms.empty(); }
    bool is_constant() const { return num.is_constant() && den.is_constant(); }
    Rat constant_value() const;  // pre: is_constant()
    std::shared_ptr<const MonoOrder> ring() const { return num.ord ? num.ord : den.ord; }

    RatFunc lifted(const std::shared_ptr<const MonoOrder>& o) const;

    friend RatFunc operator-(const RatFunc& a);
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
    friend bool operator==(const RatFunc& a, const RatFunc& b);
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }
    friend bool operator<(const RatFunc& a, const RatFunc& b);  // canonical total order

    // Evaluate at a parameter point; throws DegenerateSpecialization if the
    // denominator vanishes there.
    Rat eval(const std::map<VarId, Rat>& point) const;
};

struct DegenerateSpecialization : std::domain_error {
    using std::domain_error::domain_error;
};

inline bool coeff_is_zero(const RatFunc& c) { return c.is_zero(); }

std::string ratfunc_to_string(const RatFunc& f);

using PPoly = Poly<RatFunc>;  // polynomial in the main variables, parametric coefficients

// Convenience builders for parametric polynomials.
PPoly ppoly_zero(std::shared_ptr<const MonoOrder> main_ord);
PPoly ppoly_from_qpoly(const QPoly& p, std::shared_ptr<const MonoOrder> main_ord);

// Split a polynomial over main vars + params into a PPoly over the main order
// with coefficients in the parameter ring.
PPoly split_params(const QPoly& mixed, std::shared_ptr<const MonoOrder> main_ord,
                   std::shared_ptr<const MonoOrder> param_ord);

// Substitute parameter values; drops vanished terms. The result lives in the
// main ring with rational coefficients.
QPoly specialize(const PPoly& p, const std::map<VarId, Rat>& point);

std::string ppoly_to_string(const PPoly& p);

}  // namespace gbik
