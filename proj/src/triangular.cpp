#include "gbik/triangular.hpp"

#include <algorithm>
#include <cmath>

#include "gbik/poly_ops.hpp"
#include "gbik/roots.hpp"

namespace gbik {

namespace {

VarId top_var(const QPoly& p) {
    // in lex the leading monomial contains the highest-precedence variable
    // occurring anywhere in the polynomial
    const auto& ord = *p.ord;
    VarId best = p.lm().e.front().first;
    for (const auto& [v, e] : p.lm().e)
        if (ord.rank_of(v) < ord.rank_of(best)) best = v;
    return best;
}

bool pure_power_lm(const QPoly& p, VarId v) {
    return p.lm().e.size() == 1 && p.lm().e.front().first == v;
}

// |h(x0)| small relative to the size of h's terms at x0; prunes roots of the
// pinning polynomial that the other level equations reject
bool loosely_vanishes(const UniPoly& h, const Rat& x0) {
    double scale = 1.0;
    double ax = std::abs(to_double(x0));
    double xp = 1.0;
    for (const auto& c : h) {
        scale += std::abs(to_double(c)) * xp;
        xp *= std::max(1.0, ax);
    }
    return std::abs(to_double(eval_univariate(h, x0))) < 1e-6 * scale;
}

// Bound on how large g's coefficients can get under the assignment; used to
// recognize substituted candidates that are pure cancellation noise.
double magnitude_bound(const QPoly& g, const std::map<VarId, Rat>& assign) {
    double m = 0.0;
    for (const auto& term : g.terms) {
        double t = std::abs(to_double(term.c));
        for (const auto& [v, e] : term.m.e) {
            auto it = assign.find(v);
            if (it == assign.end()) continue;
            t *= std::pow(std::max(1.0, std::abs(to_double(it->second))), e);
        }
        m += t;
    }
    return m;
}

// One back-substitution sweep at tolerance t. When seed is set, follow only
// the root closest to the seed at each level (used to re-polish one tuple).
std::vector<std::map<VarId, Rat>> back_substitute(
    const std::vector<std::vector<const QPoly*>>& levels,
    const std::vector<VarId>& vars, const Rat& t,
    const std::map<VarId, Rat>* seed) {
    std::vector<std::map<VarId, Rat>> partial{{}};
    for (std::size_t li = 0; li < vars.size(); ++li) {
        VarId v = vars[li];
        std::vector<std::map<VarId, Rat>> next;
        for (const auto& assign : partial) {
            // substituted level equations; drop ones that are zero up to
            // cancellation noise from the inexact lower coordinates (a noisy
            // near-zero candidate would otherwise pin a phantom root)
            std::vector<UniPoly> cands;
            for (const QPoly* g : levels[li]) {
                UniPoly u = univariate_coeffs(eval_partial(*g, assign), v);
                if (uni_degree(u) < 0) continue;
                bool pure = pure_power_lm(*g, v);
                if (!pure) {
                    double biggest = 0.0;
                    for (const auto& c : u)
                        biggest = std::max(biggest, std::abs(to_double(c)));
                    if (biggest < 1e-8 * magnitude_bound(*g, assign)) continue;
                }
                cands.push_back(std::move(u));
            }
            std::stable_sort(cands.begin(), cands.end(),
                             [](const UniPoly& a, const UniPoly& b) {
                                 return uni_degree(a) < uni_degree(b);
                             });
            const UniPoly* pin = nullptr;
            for (const auto& c : cands)
                if (uni_degree(c) >= 1) {
                    pin = &c;
                    break;
                }
            if (!pin) continue;  // only nonzero constants left: dead branch
            auto roots = isolate_real_roots(*pin, t);
            if (seed) {
                const Rat& want = seed->at(v);
                const RealRoot* best = nullptr;
                Rat bestdist;
                for (const auto& r : roots) {
                    Rat d = rat_abs(r.mid() - want);
                    if (!best || d < bestdist) {
                        best = &r;
                        bestdist = d;
                    }
                }
                if (!best) return {};
                auto a2 = assign;
                a2[v] = best->mid();
                next.push_back(std::move(a2));
                continue;
            }
            for (const auto& r : roots) {
                Rat x0 = r.mid();
                bool ok = true;
                for (const auto& c : cands) {
                    if (&c == pin) continue;
                    if (!loosely_vanishes(c, x0)) {
                        ok = false;
                        break;
                    }
                }
                if (!ok) continue;
                auto a2 = assign;
                a2[v] = x0;
                next.push_back(std::move(a2));
            }
        }
        partial = std::move(next);
        if (partial.empty()) break;
    }
    return partial;
}

bool residuals_ok(const std::vector<QPoly>& basis, const std::map<VarId, Rat>& tuple,
                  const Rat& bound) {
    for (const auto& g : basis)
        if (rat_abs(eval_poly(g, tuple)) >= bound) return false;
    return true;
}

}  // namespace

TriangularResult solve_triangular(const std::vector<QPoly>& basis, const Rat& refine_to) {
    TriangularResult out;
    if (basis.empty()) throw PositiveDimensional("solve_triangular: empty basis");
    const auto& ord = basis.front().ord;
    for (const auto& g : basis) {
        if (g.is_zero()) continue;
        if (g.total_degree() == 0) {
            out.inconsistent = true;
            return out;
        }
    }
    if (!ord || ord->kind != MonoOrder::Kind::lex)
        throw std::invalid_argument("solve_triangular: lex order required");

    // stratify by the top variable of each element; every variable needs a
    // pure-power leading monomial or the solution set is infinite
    const auto& prec = ord->prec;
    std::vector<std::vector<const QPoly*>> levels(prec.size());
    std::vector<bool> pinned(prec.size(), false);
    for (const auto& g : basis) {
        if (g.is_zero() || g.total_degree() == 0) continue;
        VarId v = top_var(g);
        std::size_t rank = static_cast<std::size_t>(ord->rank_of(v));
        levels[rank].push_back(&g);
        if (pure_power_lm(g, v)) pinned[rank] = true;
    }
    for (std::size_t i = 0; i < prec.size(); ++i)
        if (!pinned[i])
            throw PositiveDimensional("solve_triangular: no pure power in " +
                                      var_name(prec[i]));

    // solve lowest-precedence variable first
    std::vector<VarId> order_vars(prec.rbegin(), prec.rend());
    std::vector<std::vector<const QPoly*>> order_levels(levels.rbegin(), levels.rend());

    Rat bound = 10 * refine_to;
    auto coarse = back_substitute(order_levels, order_vars, refine_to, nullptr);
    for (const auto& tuple : coarse) {
        if (residuals_ok(basis, tuple, bound)) {
            out.solutions.push_back(tuple);
            continue;
        }
        // true solutions converge under tighter coordinates; spurious
        // candidates never meet the residual bound and are dropped
        Rat t = refine_to;
        std::map<VarId, Rat> cur = tuple;
        for (int round = 0; round < 3; ++round) {
            t /= rat_pow(Rat(2), 20);
            auto polished = back_substitute(order_levels, order_vars, t, &cur);
            if (polished.empty()) break;
            cur = polished.front();
            if (residuals_ok(basis, cur, bound)) {
                out.solutions.push_back(cur);
                break;
            }
        }
    }
    return out;
}

}  // namespace gbik
