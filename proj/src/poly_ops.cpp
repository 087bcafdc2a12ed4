#include "gbik/poly_ops.hpp"

#include <stdexcept>

namespace gbik {

Rat eval_poly(const QPoly& p, const std::map<VarId, Rat>& point) {
    Rat acc = 0;
    for (const auto& t : p.terms) {
        Rat v = t.c;
        for (const auto& [var_id, k] : t.m.e) {
            auto it = point.find(var_id);
            if (it == point.end())
                throw std::invalid_argument("eval_poly: unassigned variable " + var_name(var_id));
            v *= rat_pow(it->second, k);
        }
        acc += v;
    }
    return acc;
}

QPoly eval_partial(const QPoly& p, const std::map<VarId, Rat>& point) {
    QPoly r(p.ord);
    for (const auto& t : p.terms) {
        Rat c = t.c;
        Monomial rest;
        for (const auto& [var_id, k] : t.m.e) {
            auto it = point.find(var_id);
            if (it == point.end())
                rest.e.emplace_back(var_id, k);
            else
                c *= rat_pow(it->second, k);
        }
        r.add_term(rest, c);
    }
    return r;
}

QPoly derivative(const QPoly& p, VarId v) {
    QPoly r(p.ord);
    for (const auto& t : p.terms) {
        int k = t.m.exponent(v);
        if (k == 0) continue;
        Monomial m = t.m.divided_by(Monomial::of(v));
        r.add_term(m, t.c * k);
    }
    return r;
}

std::vector<Rat> univariate_coeffs(const QPoly& p, VarId v) {
    int deg = 0;
    for (const auto& t : p.terms) {
        for (const auto& [w, k] : t.m.e)
            if (w != v)
                throw std::invalid_argument("univariate_coeffs: extra variable " + var_name(w));
        deg = std::max(deg, t.m.exponent(v));
    }
    std::vector<Rat> c(static_cast<std::size_t>(deg + 1), Rat(0));
    for (const auto& t : p.terms) c[static_cast<std::size_t>(t.m.exponent(v))] = t.c;
    return c;
}

QPoly poly_from_univariate(const std::vector<Rat>& coeffs, VarId v,
                           std::shared_ptr<const MonoOrder> ord) {
    QPoly p(std::move(ord));
    for (std::size_t k = 0; k < coeffs.size(); ++k)
        p.add_term(Monomial::of(v, static_cast<int>(k)), coeffs[k]);
    return p;
}

Rat eval_univariate(const std::vector<Rat>& coeffs, const Rat& t) {
    Rat acc = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * t + coeffs[i];
    return acc;
}

}  // namespace gbik
