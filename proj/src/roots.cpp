#include "gbik/roots.hpp"

#include <algorithm>
#include <stdexcept>

#include "gbik/groebner.hpp"
#include "gbik/poly_ops.hpp"

namespace gbik {

int uni_degree(const UniPoly& p) {
    int d = static_cast<int>(p.size()) - 1;
    while (d >= 0 && p[static_cast<std::size_t>(d)].is_zero()) --d;
    return d;
}

namespace {

UniPoly trimmed(UniPoly p) {
    p.resize(static_cast<std::size_t>(uni_degree(p) + 1));
    return p;
}

UniPoly uni_monic(UniPoly p) {
    int d = uni_degree(p);
    if (d < 0) return {};
    p.resize(static_cast<std::size_t>(d + 1));
    Rat lead = p.back();
    if (lead != 1)
        for (auto& c : p) c /= lead;
    return p;
}

// remainder of a by b (b nonzero), in place arithmetic over Q
UniPoly uni_rem(UniPoly a, const UniPoly& b) {
    int db = uni_degree(b);
    if (db < 0) throw std::domain_error("uni_rem: zero divisor");
    Rat lead = b[static_cast<std::size_t>(db)];
    int da = uni_degree(a);
    while (da >= db) {
        Rat q = a[static_cast<std::size_t>(da)] / lead;
        for (int i = 0; i <= db; ++i)
            a[static_cast<std::size_t>(da - db + i)] -= q * b[static_cast<std::size_t>(i)];
        da = uni_degree(a);
    }
    return trimmed(std::move(a));
}

}  // namespace

int sign_at(const UniPoly& p, const Rat& t) {
    Rat v = eval_univariate(p, t);
    if (v.is_zero()) return 0;
    return v > 0 ? 1 : -1;
}

UniPoly uni_derivative(const UniPoly& p) {
    UniPoly d;
    if (p.size() <= 1) return d;
    d.resize(p.size() - 1);
    for (std::size_t k = 1; k < p.size(); ++k) d[k - 1] = p[k] * Rat(static_cast<int>(k));
    return trimmed(std::move(d));
}

UniPoly uni_mul(const UniPoly& a, const UniPoly& b) {
    if (uni_degree(a) < 0 || uni_degree(b) < 0) return {};
    UniPoly r(a.size() + b.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return trimmed(std::move(r));
}

UniPoly uni_exact_div(const UniPoly& a, const UniPoly& b) {
    int da = uni_degree(a);
    int db = uni_degree(b);
    if (db < 0) throw std::domain_error("uni_exact_div: zero divisor");
    if (da < 0) return {};
    if (da < db) throw std::domain_error("uni_exact_div: not divisible");
    UniPoly r = trimmed(a);
    UniPoly q(static_cast<std::size_t>(da - db + 1), Rat(0));
    Rat lead = b[static_cast<std::size_t>(db)];
    for (int k = da - db; k >= 0; --k) {
        Rat c = r[static_cast<std::size_t>(k + db)] / lead;
        q[static_cast<std::size_t>(k)] = c;
        if (c.is_zero()) continue;
        for (int i = 0; i <= db; ++i)
            r[static_cast<std::size_t>(k + i)] -= c * b[static_cast<std::size_t>(i)];
    }
    if (uni_degree(r) >= 0) throw std::domain_error("uni_exact_div: not divisible");
    return trimmed(std::move(q));
}

UniPoly uni_gcd(UniPoly a, UniPoly b) {
    a = uni_monic(std::move(a));
    b = uni_monic(std::move(b));
    while (uni_degree(b) >= 0) {
        UniPoly r = uni_monic(uni_rem(std::move(a), b));
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

std::vector<UniPoly> squarefree_decomposition(const UniPoly& p) {
    int d = uni_degree(p);
    if (d < 0) throw std::invalid_argument("squarefree_decomposition: zero polynomial");
    std::vector<UniPoly> out;
    if (d == 0) return out;
    UniPoly f = uni_monic(p);
    UniPoly fp = uni_derivative(f);
    UniPoly g = uni_gcd(f, fp);
    UniPoly c = uni_exact_div(f, g);
    UniPoly w = uni_exact_div(fp, g);
    // Yun: peel factors of increasing multiplicity
    while (uni_degree(c) > 0) {
        UniPoly z = w;
        UniPoly dc = uni_derivative(c);
        z.resize(std::max(z.size(), dc.size()), Rat(0));
        for (std::size_t i = 0; i < dc.size(); ++i) z[i] -= dc[i];
        z = trimmed(std::move(z));
        UniPoly y = uni_gcd(c, z);
        out.push_back(uni_degree(y) > 0 ? y : UniPoly{Rat(1)});
        c = uni_exact_div(c, y);
        w = uni_exact_div(z, y);
    }
    // drop trailing trivial factors but keep positional multiplicities
    while (!out.empty() && uni_degree(out.back()) == 0) out.pop_back();
    return out;
}

namespace {

// Descartes bound: sign variations of (1+x)^n q(1/(1+x)).
int descartes_variations(const UniPoly& q) {
    UniPoly c(q.rbegin(), q.rend());  // reverse
    std::size_t n = c.size();
    // Taylor shift by 1 in place
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = n - 1; j > i; --j) c[j - 1] += c[j];
    int var = 0;
    int last = 0;
    for (const auto& v : c) {
        if (v.is_zero()) continue;
        int s = v > 0 ? 1 : -1;
        if (last != 0 && s != last) ++var;
        last = s;
    }
    return var;
}

// q scaled to (0,1): collect isolating dyadic subintervals of (0,1).
// q must be square-free with q(0) != 0.
void isolate01(const UniPoly& q, const Rat& lo, const Rat& hi, int depth,
               std::vector<std::pair<Rat, Rat>>& intervals, std::vector<Rat>& exact) {
    if (depth > 128) throw CapExceeded("isolate01: recursion depth exceeded");
    int v = descartes_variations(q);
    if (v == 0) return;
    if (v == 1) {
        intervals.emplace_back(lo, hi);
        return;
    }
    std::size_t n = q.size();
    // left half: qL(x) = 2^(n-1) q(x/2); right half: qR(x) = qL(x+1)
    UniPoly ql(n);
    for (std::size_t i = 0; i < n; ++i) {
        Rat scale = rat_pow(Rat(2), static_cast<int>(n - 1 - i));
        ql[i] = q[i] * scale;
    }
    Rat mid = (lo + hi) / 2;
    UniPoly qr = ql;
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = n - 1; j > i; --j) qr[j - 1] += qr[j];
    if (!qr.empty() && qr[0].is_zero()) {
        // root exactly at the midpoint: qr has it at 0, ql at 1
        exact.push_back(mid);
        qr.erase(qr.begin());
        UniPoly lin{Rat(-1), Rat(1)};
        ql = uni_exact_div(ql, lin);
    }
    isolate01(ql, lo, mid, depth + 1, intervals, exact);
    isolate01(qr, mid, hi, depth + 1, intervals, exact);
}

Rat cauchy_bound(const UniPoly& p) {
    int d = uni_degree(p);
    Rat lead = rat_abs(p[static_cast<std::size_t>(d)]);
    Rat m = 0;
    for (int i = 0; i < d; ++i) m = std::max(m, rat_abs(p[static_cast<std::size_t>(i)]));
    Rat bound = 1 + m / lead;
    Rat b = 1;
    while (b < bound) b *= 2;
    return b;
}

// all positive real roots of square-free p (p(0) != 0)
void positive_roots(const UniPoly& p, const Rat& tol, std::vector<RealRoot>& out) {
    int d = uni_degree(p);
    if (d <= 0) return;
    Rat B = cauchy_bound(p);
    // q(x) = p(Bx), roots in (0,1)
    UniPoly q = trimmed(p);
    Rat bk = 1;
    for (std::size_t i = 0; i < q.size(); ++i) {
        q[i] *= bk;
        bk *= B;
    }
    std::vector<std::pair<Rat, Rat>> iv;
    std::vector<Rat> exact;
    isolate01(q, Rat(0), Rat(1), 0, iv, exact);
    for (const auto& r : exact) out.push_back({r * B, r * B, 1});
    for (const auto& [a, b] : iv) {
        RealRoot rr{a * B, b * B, 1};
        out.push_back(refine_root(p, rr, tol));
    }
}

}  // namespace

RealRoot refine_root(const UniPoly& squarefree, RealRoot r, const Rat& tol) {
    if (r.exact()) return r;
    // an endpoint may be a *different* root of the same polynomial (roots can
    // land on subdivision points); divide those out so signs bracket the
    // interior root
    UniPoly f = trimmed(squarefree);
    if (sign_at(f, r.lo) == 0) f = uni_exact_div(f, UniPoly{-r.lo, Rat(1)});
    if (sign_at(f, r.hi) == 0) f = uni_exact_div(f, UniPoly{-r.hi, Rat(1)});
    int slo = sign_at(f, r.lo);
    int shi = sign_at(f, r.hi);
    if (slo == shi)
        throw std::invalid_argument("refine_root: interval does not bracket a root");
    while (r.hi - r.lo > tol) {
        Rat m = r.mid();
        int sm = sign_at(f, m);
        if (sm == 0) return {m, m, r.multiplicity};
        if (sm == slo)
            r.lo = m;
        else
            r.hi = m;
    }
    return r;
}

std::vector<RealRoot> isolate_real_roots(const UniPoly& p, const Rat& tol) {
    int d = uni_degree(p);
    if (d < 0) throw std::invalid_argument("isolate_real_roots: zero polynomial");
    std::vector<RealRoot> roots;
    if (d == 0) return roots;

    auto factors = squarefree_decomposition(p);
    for (std::size_t k = 0; k < factors.size(); ++k) {
        UniPoly f = factors[k];
        if (uni_degree(f) <= 0) continue;
        int mult = static_cast<int>(k) + 1;
        std::vector<RealRoot> part;
        // exact zero root
        std::size_t shift = 0;
        while (shift < f.size() && f[shift].is_zero()) ++shift;
        if (shift > 0) {
            f.erase(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(shift));
            part.push_back({Rat(0), Rat(0), 1});
        }
        positive_roots(f, tol, part);
        // negative roots via p(-x)
        UniPoly neg = f;
        for (std::size_t i = 1; i < neg.size(); i += 2) neg[i] = -neg[i];
        std::vector<RealRoot> negroots;
        positive_roots(neg, tol, negroots);
        for (auto& r : negroots) {
            Rat lo = -r.hi, hi = -r.lo;
            part.push_back({lo, hi, 1});
        }
        for (auto& r : part) {
            r.multiplicity = mult;
            roots.push_back(r);
        }
    }

    std::sort(roots.begin(), roots.end(),
              [](const RealRoot& a, const RealRoot& b) { return a.mid() < b.mid(); });

    // different square-free factors have disjoint roots; shrink intervals
    // until the isolating intervals themselves are disjoint
    bool again = true;
    while (again) {
        again = false;
        for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
            if (roots[i].hi > roots[i + 1].lo) {
                Rat w1 = roots[i].hi - roots[i].lo;
                Rat w2 = roots[i + 1].hi - roots[i + 1].lo;
                // halve the wider one; exact roots never move
                auto& target = (w1 > w2) ? roots[i] : roots[i + 1];
                if (target.exact()) {
                    auto& other = (w1 > w2) ? roots[i + 1] : roots[i];
                    const UniPoly& f = factors[static_cast<std::size_t>(other.multiplicity - 1)];
                    other = refine_root(f, other, (other.hi - other.lo) / 4);
                } else {
                    const UniPoly& f = factors[static_cast<std::size_t>(target.multiplicity - 1)];
                    target = refine_root(f, target, (target.hi - target.lo) / 4);
                }
                again = true;
            }
        }
    }
    return roots;
}

std::vector<RealRoot> isolate_real_roots(const QPoly& p, VarId v, const Rat& tol) {
    return isolate_real_roots(univariate_coeffs(p, v), tol);
}

}  // namespace gbik
