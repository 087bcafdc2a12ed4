#pragma once

#include <set>
#include <tuple>

#include "gbik/budget.hpp"
#include "gbik/poly.hpp"

namespace gbik {

struct AlgLimits {
    long max_spairs = 50000;   // S-pairs processed before giving up
    int max_degree = 200;      // total degree of any monomial produced
    int max_basis = 2000;      // generators kept during the run
    int max_segments = 512;    // cells produced by a parametric run
    long max_millis = 0;       // wall-clock budget for one call, 0 = unbounded
};

template <class C>
struct ReduceResult {
    Poly<C> remainder;
    std::vector<Poly<C>> quotients;  // aligned with the divisor list
};

// Full multivariate division: scans divisors in order and always rewrites the
// current leading term by the first divisor that fits, so the result is
// deterministic for a fixed divisor sequence.
template <class C>
ReduceResult<C> reduce(const Poly<C>& p, const std::vector<Poly<C>>& divisors) {
    ReduceResult<C> res;
    res.remainder = Poly<C>(p.ord);
    res.quotients.assign(divisors.size(), Poly<C>(p.ord));
    Poly<C> h = p;
    int steps = 0;
    while (!h.is_zero()) {
        if ((++steps & 63) == 0) detail::check_deadline();
        bool hit = false;
        for (std::size_t i = 0; i < divisors.size(); ++i) {
            const Poly<C>& d = divisors[i];
            if (d.is_zero()) continue;
            h.check_same_ring(d);
            if (!d.lm().divides(h.lm())) continue;
            Monomial m = h.lm().divided_by(d.lm());
            C c = h.lc() / d.lc();
            res.quotients[i].add_term(m, c);
            h = h - d.mono_scaled(m, c);
            hit = true;
            break;
        }
        if (!hit) {
            res.remainder.add_term(h.lm(), h.lc());
            h.terms.erase(h.terms.begin());
        }
    }
    return res;
}

template <class C>
Poly<C> normal_form(const Poly<C>& p, const std::vector<Poly<C>>& divisors) {
    return reduce(p, divisors).remainder;
}

template <class C>
Poly<C> spoly(const Poly<C>& f, const Poly<C>& g) {
    f.check_same_ring(g);
    if (f.is_zero() || g.is_zero()) throw std::invalid_argument("spoly: zero input");
    Monomial l = mono_lcm(f.lm(), g.lm());
    Poly<C> a = f.mono_scaled(l.divided_by(f.lm()), C(1) / f.lc());
    Poly<C> b = g.mono_scaled(l.divided_by(g.lm()), C(1) / g.lc());
    return a - b;
}

template <class C>
struct GBResult {
    std::vector<Poly<C>> basis;  // reduced: monic, interreduced, ascending leading terms
    long spairs_processed = 0;
};

template <class C>
GBResult<C> buchberger(std::vector<Poly<C>> gens, const AlgLimits& lim = {});

// All S-polynomials reduce to zero modulo G.
template <class C>
bool is_groebner_basis(const std::vector<Poly<C>>& G) {
    for (std::size_t i = 0; i < G.size(); ++i)
        for (std::size_t j = i + 1; j < G.size(); ++j) {
            if (G[i].is_zero() || G[j].is_zero()) continue;
            if (mono_coprime(G[i].lm(), G[j].lm())) continue;
            if (!normal_form(spoly(G[i], G[j]), G).is_zero()) return false;
        }
    return true;
}

template <class C>
bool ideal_contains(const std::vector<Poly<C>>& gb, const Poly<C>& p) {
    return normal_form(p, gb).is_zero();
}

// Turn a Groebner basis into the reduced one: minimal, interreduced, monic,
// sorted ascending by leading monomial.
template <class C>
std::vector<Poly<C>> interreduce_basis(std::vector<Poly<C>> G);

// ---- implementation ----

template <class C>
std::vector<Poly<C>> interreduce_basis(std::vector<Poly<C>> G) {
    std::erase_if(G, [](const Poly<C>& p) { return p.is_zero(); });
    if (G.empty()) return G;
    auto ord = G.front().ord;
    std::sort(G.begin(), G.end(), [&](const Poly<C>& a, const Poly<C>& b) {
        int c = ord->compare(a.lm(), b.lm());
        if (c != 0) return c < 0;
        return poly_compare(a, b) < 0;
    });
    std::vector<Poly<C>> minimal;
    for (const auto& g : G) {
        bool redundant = false;
        for (const auto& h : minimal)
            if (h.lm().divides(g.lm())) {
                redundant = true;
                break;
            }
        if (!redundant) minimal.push_back(g);
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < minimal.size(); ++i) {
            std::vector<Poly<C>> others;
            others.reserve(minimal.size() - 1);
            for (std::size_t j = 0; j < minimal.size(); ++j)
                if (j != i) others.push_back(minimal[j]);
            Poly<C> r = normal_form(minimal[i], others);
            if (!poly_equal(r, minimal[i])) {
                changed = true;
                if (r.is_zero()) {
                    minimal.erase(minimal.begin() + static_cast<std::ptrdiff_t>(i));
                    --i;
                } else {
                    minimal[i] = std::move(r);
                }
            }
        }
    }
    for (auto& g : minimal) g = g.scaled(C(1) / g.lc());
    std::sort(minimal.begin(), minimal.end(),
              [&](const Poly<C>& a, const Poly<C>& b) { return ord->less(a.lm(), b.lm()); });
    return minimal;
}

template <class C>
GBResult<C> buchberger(std::vector<Poly<C>> gens, const AlgLimits& lim) {
    detail::DeadlineScope deadline(lim.max_millis);
    GBResult<C> out;
    std::vector<Poly<C>> G;
    std::shared_ptr<const MonoOrder> ord;
    for (auto& g : gens) {
        if (g.is_zero()) continue;
        if (!ord)
            ord = g.ord;
        else
            g.check_same_ring(G.front());
        G.push_back(std::move(g));
    }
    if (G.empty()) return out;

    struct PairKey {
        int deg;
        Monomial lcm;
        std::size_t i, j;
    };
    auto key_less = [&](const PairKey& a, const PairKey& b) {
        if (a.deg != b.deg) return a.deg < b.deg;
        int c = ord->compare(a.lcm, b.lcm);
        if (c != 0) return c < 0;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    };
    std::set<PairKey, decltype(key_less)> pending(key_less);
    auto push_pair = [&](std::size_t i, std::size_t j) {
        Monomial l = mono_lcm(G[i].lm(), G[j].lm());
        pending.insert({l.total_degree(), l, i, j});
    };
    auto is_pending = [&](std::size_t i, std::size_t j) {
        if (i > j) std::swap(i, j);
        Monomial l = mono_lcm(G[i].lm(), G[j].lm());
        return pending.count({l.total_degree(), l, i, j}) > 0;
    };

    for (std::size_t i = 0; i < G.size(); ++i)
        for (std::size_t j = i + 1; j < G.size(); ++j) push_pair(i, j);

    while (!pending.empty()) {
        detail::check_deadline();
        if (++out.spairs_processed > lim.max_spairs)
            throw CapExceeded("buchberger: S-pair cap exceeded (" +
                              std::to_string(lim.max_spairs) + ")");
        PairKey k = *pending.begin();
        pending.erase(pending.begin());
        const Poly<C>& f = G[k.i];
        const Poly<C>& g = G[k.j];
        if (mono_coprime(f.lm(), g.lm())) continue;
        bool chained = false;
        for (std::size_t t = 0; t < G.size() && !chained; ++t) {
            if (t == k.i || t == k.j) continue;
            if (!G[t].lm().divides(k.lcm)) continue;
            if (!is_pending(std::min(t, k.i), std::max(t, k.i)) &&
                !is_pending(std::min(t, k.j), std::max(t, k.j)))
                chained = true;
        }
        if (chained) continue;
        Poly<C> r = normal_form(spoly(f, g), G);
        if (r.is_zero()) continue;
        if (r.total_degree() > lim.max_degree)
            throw CapExceeded("buchberger: degree cap exceeded (" +
                              std::to_string(lim.max_degree) + ")");
        if (static_cast<int>(G.size()) + 1 > lim.max_basis)
            throw CapExceeded("buchberger: basis size cap exceeded (" +
                              std::to_string(lim.max_basis) + ")");
        G.push_back(std::move(r));
        for (std::size_t i = 0; i + 1 < G.size(); ++i) push_pair(i, G.size() - 1);
    }

    out.basis = interreduce_basis(std::move(G));
    return out;
}

}  // namespace gbik
