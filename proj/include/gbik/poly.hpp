#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <stdexcept>
#include <vector>

#include "gbik/monomial.hpp"
#include "gbik/rat.hpp"

namespace gbik {

struct RingMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline bool coeff_is_zero(const Rat& c) { return c.is_zero(); }

// Sparse multivariate polynomial. Terms are strictly descending in the
// attached order and never carry a zero coefficient.
template <class C>
struct Poly {
    struct Term {
        Monomial m;
        C c;
    };

    std::vector<Term> terms;
    std::shared_ptr<const MonoOrder> ord;

    Poly() = default;
    explicit Poly(std::shared_ptr<const MonoOrder> o) : ord(std::move(o)) {}

    static Poly zero(std::shared_ptr<const MonoOrder> o) { return Poly(std::move(o)); }
    static Poly constant(std::shared_ptr<const MonoOrder> o, C v) {
        Poly p(std::move(o));
        if (!coeff_is_zero(v)) p.terms.push_back({Monomial::one(), std::move(v)});
        return p;
    }
    static Poly variable(std::shared_ptr<const MonoOrder> o, VarId v, C one = C(1)) {
        Poly p(std::move(o));
        if (!p.ord->contains(v))
            throw RingMismatch("Poly::variable: " + var_name(v) + " not in order");
        p.terms.push_back({Monomial::of(v), std::move(one)});
        return p;
    }
    static Poly from_terms(std::shared_ptr<const MonoOrder> o, std::vector<Term> ts) {
        Poly p(std::move(o));
        for (auto& t : ts) p.add_term(t.m, t.c);
        return p;
    }

    bool is_zero() const { return terms.empty(); }
    bool is_constant() const {
        return terms.empty() || (terms.size() == 1 && terms[0].m.is_one());
    }
    std::size_t term_count() const { return terms.size(); }

    const Term& lt() const {
        if (terms.empty()) throw std::logic_error("Poly::lt: zero polynomial");
        return terms.front();
    }
    const Monomial& lm() const { return lt().m; }
    const C& lc() const { return lt().c; }

    int total_degree() const {
        int d = -1;
        for (const auto& t : terms) d = std::max(d, t.m.total_degree());
        return d;
    }
    int degree_in(VarId v) const {
        int d = 0;
        for (const auto& t : terms) d = std::max(d, t.m.exponent(v));
        return d;
    }
    bool depends_on(VarId v) const {
        for (const auto& t : terms)
            if (t.m.depends_on(v)) return true;
        return false;
    }
    std::vector<VarId> variables() const {
        std::vector<VarId> vs;
        for (const auto& t : terms)
            for (const auto& [v, k] : t.m.e) vs.push_back(v);
        std::sort(vs.begin(), vs.end());
        vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
        return vs;
    }

    C coefficient(const Monomial& m) const {
        for (const auto& t : terms)
            if (t.m == m) return t.c;
        return C(0);
    }

    // In-place merge of a single term, keeping the invariant.
    void add_term(const Monomial& m, const C& c) {
        if (coeff_is_zero(c)) return;
        auto it = std::lower_bound(terms.begin(), terms.end(), m,
                                   [this](const Term& t, const Monomial& mm) {
                                       return ord->greater(t.m, mm);
                                   });
        if (it != terms.end() && it->m == m) {
            it->c = it->c + c;
            if (coeff_is_zero(it->c)) terms.erase(it);
        } else {
            terms.insert(it, Term{m, c});
        }
    }

    void check_same_ring(const Poly& o) const {
        if (!ord || !o.ord || !ord->same_as(*o.ord))
            throw RingMismatch("Poly: mixed monomial orders");
    }

    friend Poly operator-(const Poly& a) {
        Poly r(a.ord);
        r.terms.reserve(a.terms.size());
        for (const auto& t : a.terms) r.terms.push_back({t.m, -t.c});
        return r;
    }

    friend Poly operator+(const Poly& a, const Poly& b) { return merge(a, b, false); }
    friend Poly operator-(const Poly& a, const Poly& b) { return merge(a, b, true); }

    friend Poly operator*(const Poly& a, const Poly& b) {
        a.check_same_ring(b);
        if (a.is_zero() || b.is_zero()) return Poly(a.ord);
        auto cmp = [o = a.ord.get()](const Monomial& x, const Monomial& y) {
            return o->greater(x, y);
        };
        std::map<Monomial, C, decltype(cmp)> acc(cmp);
        for (const auto& ta : a.terms)
            for (const auto& tb : b.terms) {
                Monomial m = ta.m * tb.m;
                C c = ta.c * tb.c;
                auto [it, fresh] = acc.emplace(std::move(m), c);
                if (!fresh) it->second = it->second + c;
            }
        Poly r(a.ord);
        r.terms.reserve(acc.size());
        for (auto& [m, c] : acc)
            if (!coeff_is_zero(c)) r.terms.push_back({m, std::move(c)});
        return r;
    }

    Poly scaled(const C& k) const {
        Poly r(ord);
        if (coeff_is_zero(k)) return r;
        r.terms.reserve(terms.size());
        for (const auto& t : terms) {
            C c = t.c * k;
            if (!coeff_is_zero(c)) r.terms.push_back({t.m, std::move(c)});
        }
        return r;
    }

    Poly mono_scaled(const Monomial& m, const C& k) const {
        Poly r(ord);
        if (coeff_is_zero(k)) return r;
        r.terms.reserve(terms.size());
        for (const auto& t : terms) {
            C c = t.c * k;
            if (!coeff_is_zero(c)) r.terms.push_back({t.m * m, std::move(c)});
        }
        return r;
    }

    Poly with_order(std::shared_ptr<const MonoOrder> o) const {
        Poly r(std::move(o));
        for (const auto& t : terms) r.add_term(t.m, t.c);
        return r;
    }

  private:
    static Poly merge(const Poly& a, const Poly& b, bool subtract) {
        a.check_same_ring(b);
        Poly r(a.ord);
        r.terms.reserve(a.terms.size() + b.terms.size());
        auto ia = a.terms.begin();
        auto ib = b.terms.begin();
        while (ia != a.terms.end() && ib != b.terms.end()) {
            int c = a.ord->compare(ia->m, ib->m);
            if (c > 0) {
                r.terms.push_back(*ia++);
            } else if (c < 0) {
                r.terms.push_back({ib->m, subtract ? C(-ib->c) : ib->c});
                ++ib;
            } else {
                C v = subtract ? C(ia->c - ib->c) : C(ia->c + ib->c);
                if (!coeff_is_zero(v)) r.terms.push_back({ia->m, std::move(v)});
                ++ia;
                ++ib;
            }
        }
        for (; ia != a.terms.end(); ++ia) r.terms.push_back(*ia);
        for (; ib != b.terms.end(); ++ib) r.terms.push_back({ib->m, subtract ? C(-ib->c) : ib->c});
        return r;
    }
};

using QPoly = Poly<Rat>;

// Canonical comparison used for deterministic container ordering: by leading
// monomials first, then term by term, then coefficients.
template <class C>
int poly_compare(const Poly<C>& a, const Poly<C>& b) {
    a.check_same_ring(b);
    std::size_t n = std::min(a.terms.size(), b.terms.size());
    for (std::size_t i = 0; i < n; ++i) {
        int c = a.ord->compare(a.terms[i].m, b.terms[i].m);
        if (c != 0) return c;
        if (a.terms[i].c != b.terms[i].c) return a.terms[i].c < b.terms[i].c ? -1 : 1;
    }
    if (a.terms.size() != b.terms.size()) return a.terms.size() < b.terms.size() ? -1 : 1;
    return 0;
}

template <class C>
bool poly_equal(const Poly<C>& a, const Poly<C>& b) {
    if (a.terms.size() != b.terms.size()) return false;
    for (std::size_t i = 0; i < a.terms.size(); ++i)
        if (!(a.terms[i].m == b.terms[i].m) || a.terms[i].c != b.terms[i].c) return false;
    return true;
}

}  // namespace gbik
