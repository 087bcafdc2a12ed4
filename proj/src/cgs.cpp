#include "gbik/cgs.hpp"

#include <deque>
#include <optional>
#include <set>
#include <sstream>

#include "gbik/poly_io.hpp"
#include "gbik/poly_ops.hpp"

namespace gbik {

namespace {

AlgLimits radical_limits(const AlgLimits& lim) {
    AlgLimits r = lim;
    r.max_spairs = std::min<long>(lim.max_spairs, 4000);
    return r;
}

// Variables forced to zero at every real point of V(eqs): detected from
// equations that are sign-definite sums of single-variable even powers.
std::vector<VarId> real_implied_zero_vars(const std::vector<QPoly>& eqs) {
    std::vector<VarId> out;
    for (const auto& e : eqs) {
        if (e.is_zero()) continue;
        bool shape_ok = true;
        int sign = 0;
        for (const auto& t : e.terms) {
            if (t.m.is_one() || t.m.e.size() != 1 || t.m.e[0].second % 2 != 0) {
                shape_ok = false;
                break;
            }
            int s = t.c > 0 ? 1 : -1;
            if (sign == 0) sign = s;
            if (s != sign) {
                shape_ok = false;
                break;
            }
        }
        if (!shape_ok) continue;
        for (const auto& t : e.terms) out.push_back(t.m.e[0].first);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

struct CaseOutcome {
    CgsSegment seg;
    std::vector<QPoly> split_polys;  // discovered h's; children assume h = 0
    bool empty_input = false;        // every generator vanished identically on the cell
};

struct Engine {
    std::shared_ptr<const MonoOrder> main_ord;
    std::shared_ptr<const MonoOrder> param_ord;
    AlgLimits lim;
    bool first_only = false;
    long spairs = 0;

    // state of the case in progress
    std::vector<QPoly> E_gb;
    std::vector<QPoly> N;
    std::vector<QPoly> splits;

    QPoly nf_param(const QPoly& h) const { return normal_form(h, E_gb); }

    bool in_N(const QPoly& h) const {
        for (const auto& n : N)
            if (poly_equal(n, h)) return true;
        return false;
    }

    void request_split(const QPoly& h_canonical) {
        if (in_N(h_canonical)) return;
        N.push_back(h_canonical);
        splits.push_back(h_canonical);
    }

    // Reduce every coefficient modulo the assumptions; drop vanished terms.
    PPoly nf_coeffs(const PPoly& p) const {
        PPoly r(p.ord);
        r.terms.reserve(p.terms.size());
        for (const auto& t : p.terms) {
            QPoly n = nf_param(t.c.num);
            if (n.is_zero()) continue;
            RatFunc c(std::move(n));
            r.terms.push_back({t.m, std::move(c)});
        }
        return r;
    }

    // Strip overall rational content; keep the sign of the leading coefficient.
    static PPoly strip_rational_content(PPoly p) {
        if (p.is_zero()) return p;
        Rat c(0);
        for (const auto& t : p.terms) {
            Rat tc = rational_content(t.c.num);
            if (c.is_zero())
                c = tc;
            else
                c = Rat(boost::multiprecision::gcd(numerator(c) * denominator(tc),
                                                   numerator(tc) * denominator(c)),
                        denominator(c) * denominator(tc));
        }
        if (c.is_zero() || c == 1) return p;
        for (auto& t : p.terms) t.c = RatFunc(t.c.num.scaled(Rat(1) / c));
        return p;
    }

    // Bring a polynomial to stable form on the current cell: coefficients
    // reduced, contents split off, leading coefficient known nonzero.
    // Returns nothing when the polynomial vanishes identically on the cell.
    std::optional<PPoly> prep(PPoly p) {
        while (true) {
            p = nf_coeffs(p);
            if (p.is_zero()) return std::nullopt;
            p = strip_rational_content(std::move(p));

            std::vector<QPoly> nums;
            nums.reserve(p.terms.size());
            for (const auto& t : p.terms) nums.push_back(t.c.num);
            QPoly cont = poly_gcd_many(nums);
            if (!cont.is_constant()) {
                if (vanishes_on_variety(cont, E_gb, lim)) return std::nullopt;
                request_split(cont);
                for (auto& t : p.terms) t.c = RatFunc(exact_div(t.c.num, cont));
            }

            QPoly h = canonical_unit_normal(p.lt().c.num);
            if (h.is_constant()) {
                if (p.lt().c.num.lc() < 0) p = p.scaled(RatFunc(-1));
                return p;
            }
            if (in_N(h)) {
                if (p.lt().c.num.lc() < 0) p = p.scaled(RatFunc(-1));
                return p;
            }
            if (vanishes_on_variety(h, E_gb, lim)) {
                p.terms.erase(p.terms.begin());
                continue;
            }
            request_split(h);
            if (p.lt().c.num.lc() < 0) p = p.scaled(RatFunc(-1));
            return p;
        }
    }

    static PPoly ff_spoly(const PPoly& f, const PPoly& g) {
        Monomial l = mono_lcm(f.lm(), g.lm());
        const QPoly& cf = f.lc().num;
        const QPoly& cg = g.lc().num;
        QPoly d = poly_gcd(cf, cg);
        RatFunc a(exact_div(cg, d));
        RatFunc b(exact_div(cf, d));
        return f.mono_scaled(l.divided_by(f.lm()), a) - g.mono_scaled(l.divided_by(g.lm()), b);
    }

    PPoly ff_reduce(PPoly h, const std::vector<PPoly>& G) const {
        PPoly r(h.ord);
        while (!h.is_zero()) {
            bool hit = false;
            for (const auto& g : G) {
                if (g.is_zero() || !g.lm().divides(h.lm())) continue;
                const QPoly& cg = g.lc().num;
                const QPoly& ch = h.lc().num;
                QPoly d = poly_gcd(cg, ch);
                RatFunc a(exact_div(cg, d));
                RatFunc b(exact_div(ch, d));
                if (!r.is_zero()) r = r.scaled(a);
                h = h.scaled(a) - g.mono_scaled(h.lm().divided_by(g.lm()), b);
                hit = true;
                break;
            }
            if (!hit) {
                r.add_term(h.lm(), h.lc());
                h.terms.erase(h.terms.begin());
            }
        }
        return r;
    }

    void check_degree(const PPoly& p) const {
        if (p.total_degree() > lim.max_degree)
            throw CapExceeded("cgs: main degree cap exceeded (" +
                              std::to_string(lim.max_degree) + ")");
        for (const auto& t : p.terms)
            if (t.c.num.total_degree() > lim.max_degree)
                throw CapExceeded("cgs: parameter degree cap exceeded (" +
                                  std::to_string(lim.max_degree) + ")");
    }

    CaseOutcome run_case(const std::vector<PPoly>& gens) {
        N.clear();
        splits.clear();
        CaseOutcome out;

        std::vector<PPoly> G;
        bool unit = false;
        for (const auto& gen : gens) {
            auto p = prep(gen);
            if (!p) continue;
            if (p->lm().is_one()) {
                unit = true;
                break;
            }
            G.push_back(std::move(*p));
        }
        if (!unit && G.empty()) {
            out.empty_input = true;
            out.seg = finish_segment({});
            out.split_polys = splits;
            return out;
        }

        if (!unit) {
            struct PairKey {
                int deg;
                Monomial lcm;
                std::size_t i, j;
            };
            auto key_less = [this](const PairKey& a, const PairKey& b) {
                if (a.deg != b.deg) return a.deg < b.deg;
                int c = main_ord->compare(a.lcm, b.lcm);
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
                if (++spairs > lim.max_spairs)
                    throw CapExceeded("cgs: S-pair cap exceeded (" +
                                      std::to_string(lim.max_spairs) + ")");
                PairKey k = *pending.begin();
                pending.erase(pending.begin());
                if (mono_coprime(G[k.i].lm(), G[k.j].lm())) continue;
                bool chained = false;
                for (std::size_t t = 0; t < G.size() && !chained; ++t) {
                    if (t == k.i || t == k.j) continue;
                    if (!G[t].lm().divides(k.lcm)) continue;
                    if (!is_pending(std::min(t, k.i), std::max(t, k.i)) &&
                        !is_pending(std::min(t, k.j), std::max(t, k.j)))
                        chained = true;
                }
                if (chained) continue;
                PPoly r = ff_reduce(ff_spoly(G[k.i], G[k.j]), G);
                auto p = prep(std::move(r));
                if (!p) continue;
                check_degree(*p);
                if (p->lm().is_one()) {
                    unit = true;
                    break;
                }
                if (static_cast<int>(G.size()) + 1 > lim.max_basis)
                    throw CapExceeded("cgs: basis size cap exceeded (" +
                                      std::to_string(lim.max_basis) + ")");
                G.push_back(std::move(*p));
                for (std::size_t i = 0; i + 1 < G.size(); ++i) push_pair(i, G.size() - 1);
            }
        }

        if (unit) {
            CgsSegment seg;
            seg.eqs = E_gb;
            seg.neqs = sorted_neqs();
            seg.basis = {PPoly::constant(main_ord, RatFunc(1))};
            seg.inconsistent = true;
            out.seg = std::move(seg);
            out.split_polys = splits;
            return out;
        }

        out.seg = finish_segment(std::move(G));
        out.split_polys = splits;
        return out;
    }

    std::vector<QPoly> sorted_neqs() const {
        std::vector<QPoly> n = N;
        std::sort(n.begin(), n.end(),
                  [](const QPoly& a, const QPoly& b) { return poly_compare(a, b) < 0; });
        n.erase(std::unique(n.begin(), n.end(),
                            [](const QPoly& a, const QPoly& b) { return poly_equal(a, b); }),
                n.end());
        return n;
    }

    CgsSegment finish_segment(std::vector<PPoly> G) const {
        // minimal basis: drop members with reducible leading monomials
        std::sort(G.begin(), G.end(), [this](const PPoly& a, const PPoly& b) {
            int c = main_ord->compare(a.lm(), b.lm());
            if (c != 0) return c < 0;
            return a.term_count() < b.term_count();
        });
        std::vector<PPoly> minimal;
        for (auto& g : G) {
            bool redundant = false;
            for (const auto& h : minimal)
                if (h.lm().divides(g.lm())) {
                    redundant = true;
                    break;
                }
            if (!redundant) minimal.push_back(std::move(g));
        }
        CgsSegment seg;
        seg.eqs = E_gb;
        seg.neqs = sorted_neqs();
        seg.basis = std::move(minimal);
        return seg;
    }
};

std::string case_key(const std::vector<QPoly>& e_gb) {
    std::ostringstream out;
    for (const auto& p : e_gb) out << poly_to_string(p) << ";";
    return out.str();
}

}  // namespace

bool vanishes_on_variety(const QPoly& h, const std::vector<QPoly>& eqs_gb, const AlgLimits& lim) {
    if (h.is_zero()) return true;
    QPoly r = normal_form(h, eqs_gb);
    if (r.is_zero()) return true;
    if (r.is_constant()) return false;
    if (eqs_gb.empty()) return false;

    auto param_ord = h.ord;
    std::vector<VarId> prec{var("t_rad")};
    prec.insert(prec.end(), param_ord->prec.begin(), param_ord->prec.end());
    auto ext = MonoOrder::make(MonoOrder::Kind::grevlex, prec);

    std::vector<QPoly> gens;
    gens.reserve(eqs_gb.size() + 1);
    for (const auto& e : eqs_gb) gens.push_back(e.with_order(ext));
    QPoly t = QPoly::variable(ext, var("t_rad"));
    gens.push_back(QPoly::constant(ext, Rat(1)) - t * r.with_order(ext));
    try {
        auto gb = buchberger(gens, radical_limits(lim));
        return gb.basis.size() == 1 && gb.basis[0].is_constant();
    } catch (const CapExceeded&) {
        return false;  // undecided: treat as nonvanishing, a split keeps coverage
    }
}

CgsResult comprehensive_gb(const std::vector<PPoly>& gens,
                           std::shared_ptr<const MonoOrder> param_ord, const AlgLimits& lim,
                           const CgsOptions& opt) {
    if (gens.empty()) throw std::invalid_argument("comprehensive_gb: no generators");
    detail::DeadlineScope deadline(lim.max_millis);
    auto main_ord = gens.front().ord;
    for (const auto& g : gens) g.check_same_ring(gens.front());
    for (VarId v : main_ord->prec)
        if (param_ord->contains(v))
            throw RingMismatch("comprehensive_gb: variable " + var_name(v) +
                               " is both main and parameter");

    // fraction-free input with coefficients in the declared parameter ring
    std::vector<PPoly> ff;
    ff.reserve(gens.size());
    for (const auto& g : gens) {
        PPoly p(main_ord);
        for (const auto& t : g.terms) {
            RatFunc c = t.c.lifted(param_ord);
            p.add_term(t.m, c);
        }
        QPoly dlcm = QPoly::constant(param_ord, Rat(1));
        for (const auto& t : p.terms) {
            if (t.c.den.is_constant()) continue;
            QPoly d = t.c.den.ord ? t.c.den : t.c.den.with_order(param_ord);
            dlcm = exact_div(dlcm * d, poly_gcd(dlcm, d));
        }
        if (!dlcm.is_constant()) p = p.scaled(RatFunc(dlcm));
        for (auto& t : p.terms) {
            if (!t.c.den.is_constant() || (t.c.den.is_constant() && t.c.den.lc() != 1)) {
                Rat dc = t.c.den.lc();
                t.c = RatFunc(t.c.num.scaled(Rat(1) / dc));
            }
            if (t.c.num.ord == nullptr) t.c = t.c.lifted(param_ord);
        }
        ff.push_back(std::move(p));
    }

    Engine eng;
    eng.main_ord = main_ord;
    eng.param_ord = param_ord;
    eng.lim = lim;
    eng.first_only = opt.first_segment_only;

    CgsResult result;
    std::deque<std::vector<QPoly>> worklist;
    std::vector<QPoly> root;
    for (const auto& e : opt.assume_eqs) root.push_back(e.with_order(param_ord));
    worklist.push_back(std::move(root));
    std::set<std::string> seen;
    const int max_segments = lim.max_segments;

    while (!worklist.empty()) {
        std::vector<QPoly> assumptions = std::move(worklist.front());
        worklist.pop_front();

        auto egb_res = buchberger(assumptions, lim);
        std::vector<QPoly> E_gb = std::move(egb_res.basis);
        if (E_gb.size() == 1 && E_gb[0].is_constant()) continue;  // contradictory assumptions
        std::string key = case_key(E_gb);
        if (!seen.insert(key).second) continue;

        eng.E_gb = E_gb;
        CaseOutcome outcome = eng.run_case(ff);
        result.spairs_processed = eng.spairs;

        for (const auto& h : outcome.split_polys) {
            if (opt.first_segment_only) break;
            std::vector<QPoly> child = assumptions;
            child.push_back(h);
            worklist.push_back(std::move(child));
        }

        // prune cells that contain no real parameter point
        bool empty_cell = false;
        auto zero_vars = real_implied_zero_vars(E_gb);
        std::map<VarId, Rat> zero_sub;
        for (VarId v : zero_vars) zero_sub.emplace(v, Rat(0));
        for (const auto& n : outcome.seg.neqs) {
            QPoly reduced = zero_sub.empty() ? n : eval_partial(n, zero_sub);
            if (vanishes_on_variety(reduced, E_gb, lim)) {
                empty_cell = true;
                break;
            }
        }
        if (!empty_cell) {
            result.segments.push_back(std::move(outcome.seg));
            if (static_cast<int>(result.segments.size()) > max_segments)
                throw CapExceeded("cgs: segment cap exceeded");
        }
        if (opt.first_segment_only) break;
    }
    return result;
}

bool segment_matches(const CgsSegment& seg, const std::map<VarId, Rat>& point) {
    for (const auto& e : seg.eqs)
        if (!eval_poly(e, point).is_zero()) return false;
    for (const auto& n : seg.neqs)
        if (eval_poly(n, point).is_zero()) return false;
    return true;
}

const CgsSegment* match_segment(const CgsResult& cgs, const std::map<VarId, Rat>& point) {
    for (const auto& seg : cgs.segments)
        if (segment_matches(seg, point)) return &seg;
    return nullptr;
}

std::vector<QPoly> specialize_basis(const CgsSegment& seg, const std::map<VarId, Rat>& point) {
    std::vector<QPoly> out;
    out.reserve(seg.basis.size());
    for (const auto& p : seg.basis) {
        QPoly q = specialize(p, point);
        if (q.is_zero())
            throw DegenerateSpecialization(
                "specialize_basis: basis member vanished at a cell point");
        out.push_back(q.scaled(Rat(1) / q.lc()));
    }
    return interreduce_basis(std::move(out));
}

}  // namespace gbik
