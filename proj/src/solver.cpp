#include "gbik/solver.hpp"

#include <algorithm>
#include <cmath>

#include "gbik/budget.hpp"
#include "gbik/poly_ops.hpp"
#include "gbik/triangular.hpp"

namespace gbik {

namespace {

// Pose entries enter the exact systems on this grid. Fine enough that a point
// solved from the snapped system still satisfies the caller's double-precision
// plane and sphere relations below 1e-9; coarse enough to keep the quartic
// coefficients small.
constexpr std::int64_t kPoseDen = 1000000000000LL;
// Half-angle snap for the exact-unit horizontal axis; the snapped quantity is
// bounded by 1, so this grid keeps the projected axis within ~4e-15.
constexpr std::int64_t kAxisDen = 1000000000000000LL;
constexpr std::int64_t kCenterDen = 1000000000000000LL;

const Rat& refine_target() {
    static const Rat r(1, 10000000000000000LL);
    return r;
}

const Rat& residual_gate() {
    static const Rat r(1, 1000000000LL);
    return r;
}

// ---------------------------------------------------------------------------
// sin/cos elimination ring: unknowns s4 > c4 > s2 > c2 > s3 > c3 > s1 > c1 >
// s5 > c5 > s6 > c6, parameters l1..l3, m1..m3, n1..n3, p1..p3, x, y, z.

struct SCRing {
    VarId s[7], c[7];
    VarId l[3], m[3], n[3], p[3], x, y, z;
    std::shared_ptr<const MonoOrder> main, params, mixed;
};

const SCRing& scring() {
    static const SCRing ring = [] {
        SCRing r;
        for (int i = 1; i <= 6; ++i) {
            r.s[i] = var("s" + std::to_string(i));
            r.c[i] = var("c" + std::to_string(i));
        }
        for (int i = 0; i < 3; ++i) {
            r.l[i] = var("l" + std::to_string(i + 1));
            r.m[i] = var("m" + std::to_string(i + 1));
            r.n[i] = var("n" + std::to_string(i + 1));
            r.p[i] = var("p" + std::to_string(i + 1));
        }
        r.x = var("x");
        r.y = var("y");
        r.z = var("z");
        std::vector<VarId> mainv = {r.s[4], r.c[4], r.s[2], r.c[2], r.s[3], r.c[3],
                                    r.s[1], r.c[1], r.s[5], r.c[5], r.s[6], r.c[6]};
        std::vector<VarId> paramv = {r.l[0], r.l[1], r.l[2], r.m[0], r.m[1], r.m[2],
                                     r.n[0], r.n[1], r.n[2], r.p[0], r.p[1], r.p[2],
                                     r.x,    r.y,    r.z};
        std::vector<VarId> mixedv = mainv;
        mixedv.insert(mixedv.end(), paramv.begin(), paramv.end());
        r.main = MonoOrder::make(MonoOrder::Kind::lex, mainv);
        r.params = MonoOrder::make(MonoOrder::Kind::lex, paramv);
        r.mixed = MonoOrder::make(MonoOrder::Kind::lex, mixedv);
        return r;
    }();
    return ring;
}

// The twelve joint-space relations: tool roll (2), wrist bend line + unit
// circle, base angle (2, explicit), elbow cosine + circle, shoulder height +
// circle, bend-sum closure + circle.
std::vector<QPoly> sincos_mixed(const RobotGeometry& geom) {
    const auto& r = scring();
    auto V = [&](VarId v) { return QPoly::variable(r.mixed, v); };
    auto K = [&](const Rat& k) { return QPoly::constant(r.mixed, k); };
    Rat d1 = geom.rows[0].d, a2 = geom.rows[1].a, a3 = geom.rows[2].a;
    Rat d4 = geom.rows[3].d, d5 = geom.rows[4].d;

    QPoly dx = V(r.x) - V(r.p[0]), dy = V(r.y) - V(r.p[1]), dz = V(r.z) - V(r.p[2]);
    std::vector<QPoly> f;
    f.push_back(K(d5) * V(r.s[6]) - (V(r.l[0]) * dx + V(r.l[1]) * dy + V(r.l[2]) * dz));
    f.push_back(K(d5) * V(r.c[6]) - (V(r.m[0]) * dx + V(r.m[1]) * dy + V(r.m[2]) * dz));
    QPoly D = V(r.n[1]) * (V(r.p[0]) - V(r.x)) - V(r.n[0]) * (V(r.p[1]) - V(r.y));
    f.push_back(K(d5) * V(r.n[2]) * V(r.s[5]) + D * V(r.c[5]));
    f.push_back(V(r.s[5]) * V(r.s[5]) + V(r.c[5]) * V(r.c[5]) - K(Rat(1)));
    f.push_back(V(r.s[1]) + V(r.n[0]) * V(r.s[5]) -
                V(r.c[5]) * (V(r.l[0]) * V(r.c[6]) - V(r.m[0]) * V(r.s[6])));
    f.push_back(V(r.c[1]) - V(r.n[1]) * V(r.s[5]) +
                V(r.c[5]) * (V(r.l[1]) * V(r.c[6]) - V(r.m[1]) * V(r.s[6])));
    f.push_back(K(2 * a2 * a3) * V(r.c[3]) + K(a2 * a2 + a3 * a3 + d4 * d4) -
                (V(r.x) * V(r.x) + V(r.y) * V(r.y) + (V(r.z) - K(d1)) * (V(r.z) - K(d1))));
    f.push_back(V(r.s[3]) * V(r.s[3]) + V(r.c[3]) * V(r.c[3]) - K(Rat(1)));
    f.push_back(K(d1) - K(a2) * V(r.c[2]) -
                K(a3) * (V(r.c[2]) * V(r.c[3]) - V(r.s[2]) * V(r.s[3])) - V(r.z));
    f.push_back(V(r.s[2]) * V(r.s[2]) + V(r.c[2]) * V(r.c[2]) - K(Rat(1)));
    f.push_back((V(r.c[2]) * V(r.c[3]) - V(r.s[2]) * V(r.s[3])) * V(r.c[4]) -
                (V(r.s[2]) * V(r.c[3]) + V(r.c[2]) * V(r.s[3])) * V(r.s[4]) +
                V(r.m[2]) * V(r.c[6]) + V(r.l[2]) * V(r.s[6]));
    f.push_back(V(r.s[4]) * V(r.s[4]) + V(r.c[4]) * V(r.c[4]) - K(Rat(1)));
    return f;
}

// ---------------------------------------------------------------------------
// exact wrist-center solving

struct ExactPoint {
    Rat x, y, z;
};

struct BranchOutcome {
    BranchRecord::Path path = BranchRecord::Path::generic;
    RatPose sys_pose;           // the (possibly projected) pose the system was built from
    std::vector<QPoly> system;  // producing system, for the residual gate
    std::vector<ExactPoint> points;
    bool fired = false;
    bool underdetermined = false;
    std::vector<std::string> notes;
};

// Elbow-cosine bound: the squared shoulder distance of any reachable wrist
// center lies between (|a2|-|a3|)^2 + d4^2 and (|a2|+|a3|)^2 + d4^2.
bool point_within_reach(const RobotGeometry& geom, const ExactPoint& pt) {
    Rat d1 = geom.rows[0].d, a2 = geom.rows[1].a, a3 = geom.rows[2].a, d4 = geom.rows[3].d;
    Rat dz = pt.z - d1;
    Rat q = pt.x * pt.x + pt.y * pt.y + dz * dz;
    Rat sum = rat_abs(a2) + rat_abs(a3);
    Rat dif = rat_abs(a2) - rat_abs(a3);
    Rat lo = dif * dif + d4 * d4;
    Rat hi = sum * sum + d4 * d4;
    return lo <= q && q <= hi;
}

bool satisfies_system(const std::vector<QPoly>& sys, const std::map<VarId, Rat>& sol) {
    for (const auto& f : sys) {
        Rat v = eval_poly(f, sol);
        if (rat_abs(v) > residual_gate()) return false;
    }
    return true;
}

// Specialized lex basis for one pose: consult the cached parametric bases
// first, fall back to a direct Buchberger run on the specialized system.
std::vector<QPoly> specialized_gb(const std::vector<QPoly>& sys, const SolverTemplate& tmpl,
                                  const CgsSegment* single,
                                  const std::vector<CgsSegment>* segments,
                                  const std::map<VarId, Rat>& pt, const AlgLimits& lim,
                                  std::vector<std::string>& notes, const char* tag) {
    if (tmpl.mode != SolveMode::direct) {
        const CgsSegment* hit = nullptr;
        if (segments) {
            for (const auto& s : *segments) {
                if (segment_matches(s, pt)) {
                    hit = &s;
                    break;
                }
            }
        } else if (single && segment_matches(*single, pt)) {
            hit = single;
        }
        if (hit) {
            try {
                return specialize_basis(*hit, pt);
            } catch (const DegenerateSpecialization&) {
                notes.push_back(std::string(tag) +
                                ": cached basis degenerate at this pose, direct solve");
            }
        }
    }
    return buchberger(sys, lim).basis;
}

enum class TriStatus { ok, posdim, inconsistent };

TriStatus solve_points(const std::vector<QPoly>& sys, const std::vector<QPoly>& gb,
                       const RobotGeometry& geom, std::vector<ExactPoint>& out) {
    const auto& R = SystemRing::get();
    TriangularResult tri;
    try {
        tri = solve_triangular(gb, refine_target());
    } catch (const PositiveDimensional&) {
        return TriStatus::posdim;
    }
    if (tri.inconsistent) return TriStatus::inconsistent;
    for (const auto& sol : tri.solutions) {
        if (!satisfies_system(sys, sol)) continue;
        ExactPoint pt{sol.at(R.x), sol.at(R.y), sol.at(R.z)};
        if (!point_within_reach(geom, pt)) continue;
        out.push_back(std::move(pt));
    }
    return TriStatus::ok;
}

// Exact unit vector along the horizontal part of the tool axis, via the
// half-angle substitution on whichever hemisphere keeps the parameter in
// [-1, 1].
std::array<Rat, 2> exact_horizontal_axis(double n1, double n2) {
    double norm = std::hypot(n1, n2);
    if (norm == 0.0) return {Rat(1), Rat(0)};
    double u1 = n1 / norm, u2 = n2 / norm;
    Rat one(1);
    if (u1 >= 0.0) {
        Rat t = snap_to_grid(u2 / (1.0 + u1), kAxisDen);
        Rat den = one + t * t;
        Rat cv = (one - t * t) / den;
        Rat sv = (t + t) / den;
        return {cv, sv};
    }
    Rat s = snap_to_grid(u2 / (1.0 - u1), kAxisDen);
    Rat den = one + s * s;
    Rat cv = (s * s - one) / den;
    Rat sv = (s + s) / den;
    return {cv, sv};
}

RatPose horizontal_pose(const Pose& pose) {
    RatPose rp = RatPose::from_pose(pose, kPoseDen);
    auto nn = exact_horizontal_axis(pose.n[0], pose.n[1]);
    rp.n = {nn[0], nn[1], Rat(0)};
    return rp;
}

// Shift the tool position along the (exact-unit) axis so the lateral-offset
// consistency condition holds exactly; only within the solvability band.
std::optional<RatPose> solvable_shift(const RobotGeometry& geom, const RatPose& hp,
                                      double band) {
    Rat d4 = geom.rows[3].d, d6 = geom.rows[5].d;
    Rat reach = hp.n[0] * hp.p[0] + hp.n[1] * hp.p[1] - d6;
    Rat lam_pos = d4 - reach;
    Rat lam_neg = -d4 - reach;
    Rat lam = rat_abs(lam_pos) <= rat_abs(lam_neg) ? lam_pos : lam_neg;
    if (to_double(rat_abs(lam)) > band) return std::nullopt;
    RatPose out = hp;
    out.p[0] = hp.p[0] + lam * hp.n[0];
    out.p[1] = hp.p[1] + lam * hp.n[1];
    return out;
}

// (cos, sin) representatives on the unit circle, all with cos != 0 so they
// stay off the coplanar slice already covered by the parallel branch.
const std::vector<std::array<Rat, 2>>& circle_reps() {
    static const std::vector<std::array<Rat, 2>> reps = [] {
        std::vector<std::array<Rat, 2>> v;
        Rat c0(1), s0(0);
        v.push_back({c0, s0});
        Rat c1(-1);
        v.push_back({c1, s0});
        Rat c35(3, 5), s45(4, 5), c45(4, 5), s35(3, 5);
        Rat nc35(-3, 5), ns45(-4, 5), nc45(-4, 5), ns35(-3, 5);
        v.push_back({c35, s45});
        v.push_back({c35, ns45});
        v.push_back({nc35, s45});
        v.push_back({nc35, ns45});
        v.push_back({c45, s35});
        v.push_back({c45, ns35});
        v.push_back({nc45, s35});
        v.push_back({nc45, ns35});
        return v;
    }();
    return reps;
}

// Representative wrist centers on a self-motion circle: center behind the
// tool along the axis, radius d5, spanned by the horizontal normal and the
// base z-axis.
void continuum_points(const RobotGeometry& geom, const RatPose& sp,
                      const std::vector<QPoly>& sys, int count,
                      std::vector<ExactPoint>& out) {
    const auto& R = SystemRing::get();
    Rat d5 = geom.rows[4].d, d6 = geom.rows[5].d;
    Rat q0x = sp.p[0] - d6 * sp.n[0];
    Rat q0y = sp.p[1] - d6 * sp.n[1];
    Rat q0z = sp.p[2];
    int used = 0;
    for (const auto& cs : circle_reps()) {
        if (used >= count) break;
        Rat x = q0x - d5 * cs[0] * sp.n[1];
        Rat y = q0y + d5 * cs[0] * sp.n[0];
        Rat z = q0z + d5 * cs[1];
        std::map<VarId, Rat> sol{{R.x, x}, {R.y, y}, {R.z, z}};
        if (!satisfies_system(sys, sol)) continue;
        ExactPoint pt{x, y, z};
        if (!point_within_reach(geom, pt)) continue;
        out.push_back(std::move(pt));
        ++used;
    }
}

struct BranchSet {
    std::vector<BranchOutcome> branches;
};

BranchSet compute_branches(const SolverTemplate& tmpl, const RobotGeometry& geom,
                           const Pose& pose, const SolveOptions& opt) {
    BranchSet out;
    RatPose rp = RatPose::from_pose(pose, kPoseDen);
    AlgLimits lim;
    lim.max_millis = opt.algebra_budget_ms;
    bool exact_horizontal = rp.n[2].is_zero();
    bool near_horizontal = std::abs(pose.n[2]) <= opt.branch_epsilon;

    if (!exact_horizontal) {
        BranchOutcome b;
        b.path = BranchRecord::Path::generic;
        b.sys_pose = rp;
        b.system = build_generic_system(geom, rp);
        b.fired = true;
        try {
            auto gb = specialized_gb(b.system, tmpl, tmpl.generic ? &*tmpl.generic : nullptr,
                                     nullptr, rp.param_point(), lim, b.notes, "generic");
            if (solve_points(b.system, gb, geom, b.points) == TriStatus::posdim) {
                b.underdetermined = true;
                b.notes.push_back("generic: positive-dimensional wrist-center set");
            }
        } catch (const CapExceeded& e) {
            b.notes.push_back(std::string("generic: ") + e.what());
        }
        out.branches.push_back(std::move(b));
    }

    if (exact_horizontal || near_horizontal) {
        RatPose hp = horizontal_pose(pose);
        {
            BranchOutcome b;
            b.path = BranchRecord::Path::parallel;
            b.sys_pose = hp;
            b.system = build_parallel_special_system(geom, hp);
            b.fired = true;
            try {
                auto gb = specialized_gb(b.system, tmpl, nullptr, &tmpl.parallel_segments,
                                         hp.param_point(), lim, b.notes, "parallel");
                if (solve_points(b.system, gb, geom, b.points) == TriStatus::posdim) {
                    b.underdetermined = true;
                    b.notes.push_back("parallel: positive-dimensional wrist-center set");
                }
            } catch (const CapExceeded& e) {
                b.notes.push_back(std::string("parallel: ") + e.what());
            }
            out.branches.push_back(std::move(b));
        }
        if (auto sp = solvable_shift(geom, hp, opt.solvability_band_mm)) {
            BranchOutcome b;
            b.path = BranchRecord::Path::nonparallel;
            b.sys_pose = *sp;
            b.system = build_nonparallel_special_system(geom, *sp);
            b.fired = true;
            const auto& segs = !sp->n[1].is_zero() ? tmpl.nonparallel_segments_xpin
                                                   : tmpl.nonparallel_segments_ypin;
            try {
                auto gb = specialized_gb(b.system, tmpl, nullptr, &segs, sp->param_point(),
                                         lim, b.notes, "nonparallel");
                if (solve_points(b.system, gb, geom, b.points) == TriStatus::posdim) {
                    b.underdetermined = true;
                    b.notes.push_back(
                        "nonparallel: self-motion circle, returning representative points");
                    continuum_points(geom, *sp, b.system, opt.continuum_samples, b.points);
                }
            } catch (const CapExceeded& e) {
                b.notes.push_back(std::string("nonparallel: ") + e.what());
            }
            out.branches.push_back(std::move(b));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// back-substitution

struct CandidateSink {
    std::vector<IkCandidate> raw;
    IkSolutionSet* set = nullptr;
    int cap = 64;

    bool push(IkCandidate cand) {
        if (static_cast<int>(raw.size()) >= cap) {
            if (!set->candidate_cap_hit) {
                set->candidate_cap_hit = true;
                set->notes.push_back("candidate cap (" + std::to_string(cap) +
                                     ") reached, enumeration truncated");
            }
            return false;
        }
        raw.push_back(std::move(cand));
        return true;
    }
};

IkCandidate make_candidate(const std::array<SinCosPair, 6>& sc, const IntersectionPoint& P,
                           const BranchRecord& br) {
    IkCandidate c;
    c.sc = sc;
    for (int i = 0; i < 6; ++i) c.theta[i] = normalize_angle(sc[i].angle());
    c.branch = br;
    c.source = P;
    return c;
}

// Tilted-axis order: tool roll, correlated wrist-bend/base pair, elbow,
// shoulder, forearm roll.
void enumerate_generic(const RobotGeometry& geom, const Pose& pose,
                       BranchRecord::Path path, int pidx, const IntersectionPoint& P,
                       CandidateSink& sink) {
    auto t6 = theta6_from_point(geom, pose, P);
    if (!t6) return;
    auto w51 = theta5_theta1_generic(geom, pose, P);
    if (w51.empty()) return;
    auto t3s = theta3_from_point(geom, P);
    for (std::size_t i3 = 0; i3 < t3s.size(); ++i3) {
        auto t2s = theta2_from_point(geom, P, t3s[i3]);
        for (std::size_t i2 = 0; i2 < t2s.size(); ++i2) {
            auto t4s = theta4_from_chain(pose, t2s[i2], t3s[i3], *t6);
            for (std::size_t i4 = 0; i4 < t4s.size(); ++i4) {
                for (std::size_t i51 = 0; i51 < w51.size(); ++i51) {
                    BranchRecord br;
                    br.path = path;
                    br.point_index = pidx;
                    br.sign_theta5 = i51 == 0 ? 1 : -1;
                    br.sign_theta3 = t3s.size() == 1 ? 0 : (i3 == 0 ? 1 : -1);
                    br.slot_theta2 = static_cast<int>(i2);
                    br.slot_theta4 = static_cast<int>(i4);
                    std::array<SinCosPair, 6> sc{w51[i51].second, t2s[i2], t3s[i3],
                                                 t4s[i4],         w51[i51].first, *t6};
                    if (!sink.push(make_candidate(sc, P, br))) return;
                }
            }
        }
    }
}

// Horizontal-coplanar order: the wrist-bend line degenerates, so the base
// angle comes from the wrist-center x relation and the bend from a linear
// solve, per elbow/shoulder branch.
void enumerate_special(const RobotGeometry& geom, const Pose& pose, int pidx,
                       const IntersectionPoint& P, CandidateSink& sink) {
    auto t6 = theta6_from_point(geom, pose, P);
    if (!t6) return;
    auto t3s = theta3_from_point(geom, P);
    for (std::size_t i3 = 0; i3 < t3s.size(); ++i3) {
        auto t2s = theta2_from_point(geom, P, t3s[i3]);
        for (std::size_t i2 = 0; i2 < t2s.size(); ++i2) {
            auto t15 = theta1_theta5_special(geom, pose, P, t2s[i2], t3s[i3], *t6);
            auto t4s = theta4_from_chain(pose, t2s[i2], t3s[i3], *t6);
            for (std::size_t i15 = 0; i15 < t15.size(); ++i15) {
                for (std::size_t i4 = 0; i4 < t4s.size(); ++i4) {
                    BranchRecord br;
                    br.path = BranchRecord::Path::parallel;
                    br.point_index = pidx;
                    br.sign_theta3 = t3s.size() == 1 ? 0 : (i3 == 0 ? 1 : -1);
                    br.slot_theta2 = static_cast<int>(i2);
                    br.slot_theta4 = static_cast<int>(i4);
                    br.slot_theta1 = static_cast<int>(i15);
                    std::array<SinCosPair, 6> sc{t15[i15].first, t2s[i2], t3s[i3],
                                                 t4s[i4],        t15[i15].second, *t6};
                    if (!sink.push(make_candidate(sc, P, br))) return;
                }
            }
        }
    }
}

bool same_candidate(const IkCandidate& a, const IkCandidate& b) {
    for (int i = 0; i < 6; ++i)
        if (std::abs(normalize_angle(a.theta[i] - b.theta[i])) > 1e-6) return false;
    return true;
}

std::string join_list(const std::vector<std::string>& parts) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += ", ";
        out += parts[i];
    }
    return out;
}

}  // namespace

std::string to_string(SolveMode m) {
    switch (m) {
        case SolveMode::direct: return "direct";
        case SolveMode::generic_basis: return "generic-basis";
        case SolveMode::cgs_segment: return "cgs-segment";
    }
    return "direct";
}

std::optional<SolveMode> solve_mode_from_string(const std::string& s) {
    if (s == "direct") return SolveMode::direct;
    if (s == "generic-basis") return SolveMode::generic_basis;
    if (s == "cgs-segment") return SolveMode::cgs_segment;
    return std::nullopt;
}

std::string to_string(BranchRecord::Path p) {
    switch (p) {
        case BranchRecord::Path::generic: return "generic";
        case BranchRecord::Path::parallel: return "parallel";
        case BranchRecord::Path::nonparallel: return "nonparallel";
    }
    return "generic";
}

AlgLimits default_template_limits() {
    AlgLimits lim;
    lim.max_millis = 1500;
    return lim;
}

SolverTemplate build_template(const RobotGeometry& geom, SolveMode mode,
                              const AlgLimits& lim) {
    SolverTemplate t;
    t.mode = mode;
    t.geometry_hash = geom.content_hash();
    if (mode == SolveMode::direct) {
        t.build_notes.push_back("direct mode: parametric caches disabled");
        return t;
    }

    const auto& R = SystemRing::get();
    QPoly n1 = QPoly::variable(R.params, R.n1);
    QPoly n2 = QPoly::variable(R.params, R.n2);
    QPoly unit = n1 * n1 + n2 * n2 - QPoly::constant(R.params, Rat(1));
    CgsOptions horiz;
    horiz.assume_eqs = {unit};

    try {
        auto cgs = comprehensive_gb(build_parallel_special_system_parametric(geom), R.params,
                                    lim, horiz);
        t.parallel_segments = cgs.segments;
        t.build_notes.push_back("parallel cells: " +
                                std::to_string(t.parallel_segments.size()) + " built");
    } catch (const CapExceeded& e) {
        t.build_notes.push_back(std::string("parallel cells: ") + e.what() +
                                " (direct-fallback)");
    }

    for (int pin = 0; pin < 2; ++pin) {
        bool n2_nonzero = pin == 0;
        const char* tag = n2_nonzero ? "nonparallel cells (x pin): " : "nonparallel cells (y pin): ";
        try {
            auto cgs = comprehensive_gb(build_nonparallel_special_system_parametric(geom, n2_nonzero),
                                        R.params, lim, horiz);
            auto& dst = n2_nonzero ? t.nonparallel_segments_xpin : t.nonparallel_segments_ypin;
            dst = cgs.segments;
            t.build_notes.push_back(tag + std::to_string(dst.size()) + " built");
        } catch (const CapExceeded& e) {
            t.build_notes.push_back(tag + std::string(e.what()) + " (direct-fallback)");
        }
    }

    auto generic_gens = build_generic_system_parametric(geom);
    if (mode == SolveMode::generic_basis) {
        try {
            auto gb = buchberger(generic_gens, lim);
            CgsSegment seg;
            seg.basis = gb.basis;
            t.generic = std::move(seg);
            t.build_notes.push_back("generic parametric basis: " +
                                    std::to_string(t.generic->basis.size()) + " elements");
        } catch (const CapExceeded& e) {
            t.build_notes.push_back(std::string("generic parametric basis: ") + e.what() +
                                    " (direct-fallback)");
        }
    } else {
        try {
            CgsOptions first;
            first.first_segment_only = true;
            auto cgs = comprehensive_gb(generic_gens, R.params, lim, first);
            if (!cgs.segments.empty()) {
                t.generic = cgs.segments.front();
                t.build_notes.push_back("generic segment: built");
            }
        } catch (const CapExceeded& e) {
            t.build_notes.push_back(std::string("generic segment: ") + e.what() +
                                    " (direct-fallback)");
        }
    }

    {
        const auto& r = scring();
        std::vector<PPoly> gens;
        for (const auto& g : sincos_mixed(geom)) gens.push_back(split_params(g, r.main, r.params));
        try {
            auto gb = buchberger(gens, lim);
            t.sincos_basis = gb.basis;
            t.build_notes.push_back("sincos parametric basis: " +
                                    std::to_string(gb.basis.size()) + " elements");
        } catch (const CapExceeded& e) {
            t.build_notes.push_back(std::string("sincos parametric basis: ") + e.what() +
                                    " (direct-fallback)");
        }
    }
    return t;
}

FkCheck verify_fk(const RobotGeometry& geom, const IkCandidate& cand, const Pose& pose,
                  double tol_mm, bool strict) {
    JointConfig q;
    for (int i = 0; i < 6; ++i) q[i] = cand.theta[i];
    Pose fk = forward_kinematics(geom, q);
    double pe = 0.0;
    for (int i = 0; i < 3; ++i) {
        double d = fk.p[i] - pose.p[i];
        pe += d * d;
    }
    pe = std::sqrt(pe);
    double oe = 0.0;
    for (int i = 0; i < 3; ++i) {
        oe = std::max(oe, std::abs(fk.l[i] - pose.l[i]));
        oe = std::max(oe, std::abs(fk.m[i] - pose.m[i]));
        oe = std::max(oe, std::abs(fk.n[i] - pose.n[i]));
    }
    FkCheck out;
    out.position_error_mm = pe;
    out.orientation_error = oe;
    out.accepted = (pe < tol_mm || pe == 0.0) && (!strict || oe < 1e-4);
    return out;
}

std::vector<IntersectionPoint> solve_intersection(const SolverTemplate& tmpl,
                                                  const RobotGeometry& geom, const Pose& pose,
                                                  const SolveOptions& opt) {
    auto bad = validate_pose(pose, 1e-6);
    if (!bad.empty())
        throw std::invalid_argument("solve_intersection: invalid pose (" + join_list(bad) + ")");
    auto bs = compute_branches(tmpl, geom, pose, opt);
    std::vector<IntersectionPoint> out;
    for (const auto& b : bs.branches) {
        for (const auto& ep : b.points) {
            IntersectionPoint P{to_double(ep.x), to_double(ep.y), to_double(ep.z)};
            bool dup = false;
            for (const auto& q : out) {
                if (std::abs(q.x - P.x) < 1e-6 && std::abs(q.y - P.y) < 1e-6 &&
                    std::abs(q.z - P.z) < 1e-6) {
                    dup = true;
                    break;
                }
            }
            if (!dup) out.push_back(P);
        }
    }
    return out;
}

IkSolutionSet solve_ik(const SolverTemplate& tmpl, const RobotGeometry& geom, const Pose& pose,
                       const SolveOptions& opt) {
    auto bad = validate_pose(pose, 1e-6);
    if (!bad.empty())
        throw std::invalid_argument("solve_ik: invalid pose (" + join_list(bad) + ")");

    IkSolutionSet set;
    CandidateSink sink;
    sink.set = &set;
    sink.cap = opt.candidate_cap;

    auto bs = compute_branches(tmpl, geom, pose, opt);
    for (const auto& b : bs.branches) {
        switch (b.path) {
            case BranchRecord::Path::generic: set.generic_fired |= b.fired; break;
            case BranchRecord::Path::parallel: set.parallel_fired |= b.fired; break;
            case BranchRecord::Path::nonparallel: set.nonparallel_fired |= b.fired; break;
        }
        set.underdetermined |= b.underdetermined;
        for (const auto& n : b.notes) set.notes.push_back(n);

        // back-substitute against the pose the systems were built from, so
        // the closed forms see data consistent with the exact points; the FK
        // check below still scores against the caller's pose
        Pose chain_pose = b.sys_pose.to_pose();
        for (std::size_t i = 0; i < b.points.size(); ++i) {
            const auto& ep = b.points[i];
            IntersectionPoint P{to_double(ep.x), to_double(ep.y), to_double(ep.z)};
            int pidx = static_cast<int>(i);
            // parallel-branch points are coplanar by construction (the system
            // contains the coplanarity form), which is exactly where the
            // tilted-axis closed forms degenerate
            bool special_route = b.path == BranchRecord::Path::parallel;
            if (opt.sincos_backsolve && !special_route) {
                AlgLimits lim;
                lim.max_millis = opt.algebra_budget_ms;
                try {
                    for (auto cand : sincos_groebner_mode(geom, chain_pose, P, lim)) {
                        cand.branch.path = b.path;
                        cand.branch.point_index = pidx;
                        if (!sink.push(std::move(cand))) break;
                    }
                    continue;
                } catch (const CapExceeded& e) {
                    set.notes.push_back(std::string("sincos mode: ") + e.what() +
                                        ", closed-form fallback");
                } catch (const PositiveDimensional&) {
                    set.notes.push_back("sincos mode: degenerate point, closed-form fallback");
                }
            }
            if (special_route)
                enumerate_special(geom, chain_pose, pidx, P, sink);
            else
                enumerate_generic(geom, chain_pose, b.path, pidx, P, sink);
        }
    }

    std::vector<IkCandidate> unique;
    for (auto& cand : sink.raw) {
        bool dup = false;
        for (const auto& u : unique) {
            if (same_candidate(cand, u)) {
                dup = true;
                break;
            }
        }
        if (!dup) unique.push_back(std::move(cand));
    }

    Rat d4r = geom.rows[3].d;
    double d4 = to_double(d4r);
    for (auto& cand : unique) {
        cand.in_limits = within_limits(geom, cand.theta);
        FkCheck fk = verify_fk(geom, cand, pose, opt.fk_tol_mm, opt.strict_orientation);

        double defect = 0.0;
        for (const auto& p : cand.sc) defect = std::max(defect, p.norm_defect());
        double offset = std::abs(cand.source.y * cand.sc[0].c - cand.source.x * cand.sc[0].s + d4);
        if (defect > 1e-9) {
            set.rejected.push_back({cand, fk.position_error_mm, "unit-circle defect"});
        } else if (offset > 1e-9) {
            set.rejected.push_back({cand, fk.position_error_mm, "lateral-offset residual"});
        } else if (!fk.accepted) {
            set.rejected.push_back({cand, fk.position_error_mm, "fk mismatch"});
        } else if (opt.filter_limits && !cand.in_limits) {
            set.rejected.push_back({cand, fk.position_error_mm, "outside joint limits"});
        } else {
            set.verified.push_back(cand);
        }
    }
    return set;
}

std::vector<IkCandidate> sincos_groebner_mode(const RobotGeometry& geom, const Pose& pose,
                                              const IntersectionPoint& P, const AlgLimits& lim) {
    const auto& r = scring();
    std::map<VarId, Rat> pt;
    for (int i = 0; i < 3; ++i) {
        pt[r.l[i]] = snap_to_grid(pose.l[i], kPoseDen);
        pt[r.m[i]] = snap_to_grid(pose.m[i], kPoseDen);
        pt[r.n[i]] = snap_to_grid(pose.n[i], kPoseDen);
        pt[r.p[i]] = snap_to_grid(pose.p[i], kPoseDen);
    }
    pt[r.x] = snap_to_grid(P.x, kCenterDen);
    pt[r.y] = snap_to_grid(P.y, kCenterDen);
    pt[r.z] = snap_to_grid(P.z, kCenterDen);

    std::vector<QPoly> spec;
    for (const auto& g : sincos_mixed(geom)) spec.push_back(eval_partial(g, pt).with_order(r.main));
    auto gb = buchberger(spec, lim).basis;
    auto tri = solve_triangular(gb, refine_target());

    std::vector<IkCandidate> out;
    if (tri.inconsistent) return out;
    for (const auto& sol : tri.solutions) {
        std::array<SinCosPair, 6> sc;
        bool ok = true;
        for (int i = 1; i <= 6 && ok; ++i) {
            double s = to_double(sol.at(r.s[i]));
            double c = to_double(sol.at(r.c[i]));
            double n2 = s * s + c * c;
            if (std::abs(n2 - 1.0) > 1e-6) {
                ok = false;
                break;
            }
            double k = 1.0 / std::sqrt(n2);
            sc[i - 1] = SinCosPair{s * k, c * k};
        }
        if (!ok) continue;
        BranchRecord br;
        br.sign_theta5 = sc[4].s >= 0.0 ? 1 : -1;
        br.sign_theta3 = sc[2].s >= 0.0 ? 1 : -1;
        out.push_back(make_candidate(sc, P, br));
    }
    return out;
}

}  // namespace gbik
