#include "gbik/gcd.hpp"

#include <stdexcept>

#include "gbik/budget.hpp"

namespace gbik {

namespace {

Int int_gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
Int int_lcm(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }

VarId top_var(const QPoly& p) {
    VarId best = -1;
    for (const auto& t : p.terms)
        for (const auto& [v, k] : t.m.e) best = std::max(best, v);
    return best;
}

}  // namespace

Rat rational_content(const QPoly& p) {
    if (p.is_zero()) return Rat(0);
    Int g = 0, l = 1;
    for (const auto& t : p.terms) {
        g = int_gcd(g, numerator(t.c));
        l = int_lcm(l, denominator(t.c));
    }
    if (g < 0) g = -g;
    return Rat(g, l);
}

QPoly integer_primitive(const QPoly& p) {
    if (p.is_zero()) return p;
    Rat c = rational_content(p);
    QPoly r(p.ord);
    r.terms.reserve(p.terms.size());
    for (const auto& t : p.terms) r.terms.push_back({t.m, Rat(t.c / c)});
    return r;
}

QPoly canonical_unit_normal(const QPoly& p) {
    if (p.is_zero()) return p;
    QPoly r = integer_primitive(p);
    if (r.lc() < 0) return -r;
    return r;
}

QPoly exact_div(const QPoly& a, const QPoly& b) {
    a.check_same_ring(b);
    if (b.is_zero()) throw std::domain_error("exact_div: division by zero polynomial");
    QPoly r = a;
    QPoly q(a.ord);
    int steps = 0;
    while (!r.is_zero()) {
        if ((++steps & 63) == 0) detail::check_deadline();
        if (!b.lm().divides(r.lm())) throw std::domain_error("exact_div: not divisible");
        Monomial m = r.lm().divided_by(b.lm());
        Rat c = r.lc() / b.lc();
        q.add_term(m, c);
        r = r - b.mono_scaled(m, c);
    }
    return q;
}

namespace {

// Pseudo-remainder of a by b with respect to v: lc_v(b)^(da-db+1) * a mod b.
QPoly pseudo_rem(const QPoly& a, const QPoly& b, VarId v) {
    auto ca = coeffs_in_var(a, v);
    auto cb = coeffs_in_var(b, v);
    int da = static_cast<int>(ca.size()) - 1;
    int db = static_cast<int>(cb.size()) - 1;
    if (db < 0) throw std::domain_error("pseudo_rem: zero divisor");
    if (da < db) {
        // still scale to keep the algebraic contract
        QPoly lb_pow = QPoly::constant(a.ord, Rat(1));
        return a.is_zero() ? a : lb_pow * a;
    }
    const QPoly& lb = cb.back();
    std::vector<QPoly> r = ca;
    int dr = da;
    auto deg_of = [](const std::vector<QPoly>& c) {
        int d = static_cast<int>(c.size()) - 1;
        while (d >= 0 && c[static_cast<std::size_t>(d)].is_zero()) --d;
        return d;
    };
    int steps = da - db + 1;
    while (dr >= db) {
        detail::check_deadline();
        QPoly lead = r[static_cast<std::size_t>(dr)];
        for (int k = 0; k <= dr; ++k) {
            std::size_t ki = static_cast<std::size_t>(k);
            r[ki] = r[ki] * lb;
            int j = k - (dr - db);
            if (j >= 0 && j <= db)
                r[ki] = r[ki] - lead * cb[static_cast<std::size_t>(j)];
        }
        r.resize(static_cast<std::size_t>(dr));  // drop the eliminated top coefficient
        --steps;
        dr = deg_of(r);
    }
    // honor the fixed power of the leading coefficient for remaining steps
    QPoly rem = assemble_in_var(r, v);
    for (int s = 0; s < steps; ++s) rem = rem * lb;
    return rem;
}

QPoly gcd_rec(const QPoly& a, const QPoly& b);

QPoly content_in_var(const QPoly& p, VarId v) {
    auto cs = coeffs_in_var(p, v);
    QPoly g = QPoly::zero(p.ord);
    for (const auto& c : cs) {
        if (c.is_zero()) continue;
        g = g.is_zero() ? canonical_unit_normal(c) : gcd_rec(g, c);
        if (g.is_constant()) break;
    }
    return g;
}

QPoly gcd_rec(const QPoly& a, const QPoly& b) {
    detail::check_deadline();
    if (a.is_zero()) return canonical_unit_normal(b);
    if (b.is_zero()) return canonical_unit_normal(a);
    if (a.is_constant() || b.is_constant()) return QPoly::constant(a.ord, Rat(1));

    VarId v = std::max(top_var(a), top_var(b));
    bool in_a = a.depends_on(v);
    bool in_b = b.depends_on(v);
    if (!in_a) return gcd_rec(a, content_in_var(b, v));
    if (!in_b) return gcd_rec(content_in_var(a, v), b);

    QPoly cf = content_in_var(a, v);
    QPoly cg = content_in_var(b, v);
    QPoly c = gcd_rec(cf, cg);
    QPoly A = exact_div(integer_primitive(a), cf);
    QPoly B = exact_div(integer_primitive(b), cg);
    if (A.degree_in(v) < B.degree_in(v)) std::swap(A, B);

    while (true) {
        detail::check_deadline();
        QPoly R = pseudo_rem(A, B, v);
        if (R.is_zero()) break;
        if (!R.depends_on(v)) return c;  // gcd has degree 0 in v
        A = B;
        B = exact_div(integer_primitive(R), content_in_var(R, v));
    }
    QPoly g = canonical_unit_normal(B);
    if (c.is_constant()) return g;
    return canonical_unit_normal(c * g);
}

}  // namespace

QPoly poly_gcd(const QPoly& a, const QPoly& b) {
    a.check_same_ring(b);
    return gcd_rec(a, b);
}

QPoly poly_gcd_many(const std::vector<QPoly>& ps) {
    if (ps.empty()) throw std::invalid_argument("poly_gcd_many: empty input");
    QPoly g = QPoly::zero(ps.front().ord);
    for (const auto& p : ps) {
        g = g.is_zero() ? canonical_unit_normal(p) : poly_gcd(g, p);
        if (g.is_constant() && !g.is_zero()) return QPoly::constant(g.ord, Rat(1));
    }
    return g;
}

std::vector<QPoly> coeffs_in_var(const QPoly& p, VarId v) {
    int deg = p.degree_in(v);
    std::vector<QPoly> cs(static_cast<std::size_t>(deg + 1), QPoly(p.ord));
    for (const auto& t : p.terms) {
        int k = t.m.exponent(v);
        Monomial rest;
        for (const auto& [w, e] : t.m.e)
            if (w != v) rest.e.emplace_back(w, e);
        cs[static_cast<std::size_t>(k)].add_term(rest, t.c);
    }
    return cs;
}

QPoly assemble_in_var(const std::vector<QPoly>& cs, VarId v) {
    if (cs.empty()) throw std::invalid_argument("assemble_in_var: empty coefficients");
    QPoly p(cs.front().ord);
    for (std::size_t k = 0; k < cs.size(); ++k) {
        if (cs[k].is_zero()) continue;
        Monomial vk = Monomial::of(v, static_cast<int>(k));
        for (const auto& t : cs[k].terms) p.add_term(t.m * vk, t.c);
    }
    return p;
}

}  // namespace gbik
