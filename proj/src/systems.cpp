#include "gbik/systems.hpp"

#include "gbik/poly_ops.hpp"

namespace gbik {

namespace {

QPoly mvar(VarId v) { return QPoly::variable(SystemRing::get().mixed, v); }
QPoly mconst(const Rat& r) { return QPoly::constant(SystemRing::get().mixed, r); }

struct Lengths {
    Rat d4, d5, d6;
};

Lengths lengths(const RobotGeometry& geom) {
    return {geom.rows[3].d, geom.rows[4].d, geom.rows[5].d};
}

// n1*(p1-x) + n2*(p2-y) + n3*(p3-z) - d6: the wrist center lies at distance
// d6 behind the tool along its z-axis.
QPoly plane_poly(const Lengths& L) {
    const auto& R = SystemRing::get();
    QPoly s = -mconst(L.d6);
    s = s + mvar(R.n1) * (mvar(R.p1) - mvar(R.x));
    s = s + mvar(R.n2) * (mvar(R.p2) - mvar(R.y));
    s = s + mvar(R.n3) * (mvar(R.p3) - mvar(R.z));
    return s;
}

// |p - P|^2 - (d5^2 + d6^2): tool position sits on a sphere around the wrist
// center.
QPoly sphere_poly(const Lengths& L) {
    const auto& R = SystemRing::get();
    QPoly dx = mvar(R.p1) - mvar(R.x);
    QPoly dy = mvar(R.p2) - mvar(R.y);
    QPoly dz = mvar(R.p3) - mvar(R.z);
    return dx * dx + dy * dy + dz * dz - mconst(L.d5 * L.d5 + L.d6 * L.d6);
}

// n2*(p1-x) - n1*(p2-y): vanishes when the wrist center is coplanar with the
// tool axis and the base z-axis.
QPoly coplanar_poly() {
    const auto& R = SystemRing::get();
    return mvar(R.n2) * (mvar(R.p1) - mvar(R.x)) - mvar(R.n1) * (mvar(R.p2) - mvar(R.y));
}

// Squared form of the joint-1 lateral offset relation y*c1 - x*s1 = -d4,
// with s1, c1 replaced by their closed-form numerators.
QPoly offset_quartic(const Lengths& L) {
    const auto& R = SystemRing::get();
    QPoly one = mconst(Rat(1));
    QPoly n1 = mvar(R.n1), n2 = mvar(R.n2), n3 = mvar(R.n3);
    QPoly x = mvar(R.x), y = mvar(R.y);
    QPoly dx = mvar(R.p1) - x;
    QPoly dy = mvar(R.p2) - y;
    QPoly dz = mvar(R.p3) - mvar(R.z);
    QPoly w = (n1 * n2 * x + (one - n1 * n1) * y) * dx -
              (n1 * n2 * y + (one - n2 * n2) * x) * dy - n3 * (n1 * y - n2 * x) * dz;
    QPoly d = coplanar_poly();
    Rat d4sq = L.d4 * L.d4;
    return w * w - mconst(d4sq) * (mconst(L.d5 * L.d5) * n3 * n3 + d * d);
}

// With the tool axis horizontal the offset quartic collapses; consistency of
// the elbow angle across the remaining relations pins x (n2 != 0 form) or y
// (n2 == 0 form) instead.
QPoly horizontal_pin_quartic(const Lengths& L, bool n2_nonzero) {
    const auto& R = SystemRing::get();
    QPoly n1x = mvar(R.n1) * mvar(R.x);
    QPoly n2y = mvar(R.n2) * mvar(R.y);
    QPoly d4sq = mconst(L.d4 * L.d4);
    if (n2_nonzero) {
        QPoly inner = d4sq + n1x * n1x - n2y * n2y;
        return inner * inner - mconst(Rat(4)) * d4sq * n1x * n1x;
    }
    QPoly inner = d4sq - n1x * n1x + n2y * n2y;
    return inner * inner - mconst(Rat(4)) * d4sq * n2y * n2y;
}

QPoly specialize_mixed(const QPoly& p, const std::map<VarId, Rat>& point) {
    return eval_partial(p, point).with_order(SystemRing::get().main);
}

PPoly split_mixed(const QPoly& p) {
    const auto& R = SystemRing::get();
    return split_params(p, R.main, R.params);
}

std::map<VarId, Rat> zero_n3() {
    return {{SystemRing::get().n3, Rat(0)}};
}

}  // namespace

const SystemRing& SystemRing::get() {
    static const SystemRing ring = [] {
        SystemRing r;
        r.x = var("x");
        r.y = var("y");
        r.z = var("z");
        r.n1 = var("n1");
        r.n2 = var("n2");
        r.n3 = var("n3");
        r.p1 = var("p1");
        r.p2 = var("p2");
        r.p3 = var("p3");
        r.main = MonoOrder::make(MonoOrder::Kind::lex, {r.x, r.y, r.z});
        r.params =
            MonoOrder::make(MonoOrder::Kind::lex, {r.n1, r.n2, r.n3, r.p1, r.p2, r.p3});
        r.mixed = MonoOrder::make(MonoOrder::Kind::lex,
                                  {r.x, r.y, r.z, r.n1, r.n2, r.n3, r.p1, r.p2, r.p3});
        return r;
    }();
    return ring;
}

RatPose RatPose::from_pose(const Pose& pose, std::int64_t den) {
    RatPose r;
    for (std::size_t i = 0; i < 3; ++i) {
        r.l[i] = snap_to_grid(pose.l[i], den);
        r.m[i] = snap_to_grid(pose.m[i], den);
        r.n[i] = snap_to_grid(pose.n[i], den);
        r.p[i] = snap_to_grid(pose.p[i], den);
    }
    return r;
}

Pose RatPose::to_pose() const {
    Pose out;
    for (std::size_t i = 0; i < 3; ++i) {
        out.l[i] = to_double(l[i]);
        out.m[i] = to_double(m[i]);
        out.n[i] = to_double(n[i]);
        out.p[i] = to_double(p[i]);
    }
    return out;
}

std::map<VarId, Rat> RatPose::param_point() const {
    const auto& R = SystemRing::get();
    return {{R.n1, n[0]}, {R.n2, n[1]}, {R.n3, n[2]},
            {R.p1, p[0]}, {R.p2, p[1]}, {R.p3, p[2]}};
}

std::vector<QPoly> build_generic_system(const RobotGeometry& geom, const RatPose& pose) {
    Lengths L = lengths(geom);
    auto pt = pose.param_point();
    return {specialize_mixed(plane_poly(L), pt), specialize_mixed(sphere_poly(L), pt),
            specialize_mixed(offset_quartic(L), pt)};
}

std::vector<PPoly> build_generic_system_parametric(const RobotGeometry& geom) {
    Lengths L = lengths(geom);
    return {split_mixed(plane_poly(L)), split_mixed(sphere_poly(L)),
            split_mixed(offset_quartic(L))};
}

std::vector<QPoly> build_parallel_special_system(const RobotGeometry& geom,
                                                 const RatPose& pose) {
    if (!pose.n[2].is_zero())
        throw std::invalid_argument("parallel special system: n3 != 0");
    Lengths L = lengths(geom);
    auto pt = pose.param_point();
    return {specialize_mixed(plane_poly(L), pt), specialize_mixed(sphere_poly(L), pt),
            specialize_mixed(coplanar_poly(), pt)};
}

std::vector<PPoly> build_parallel_special_system_parametric(const RobotGeometry& geom) {
    Lengths L = lengths(geom);
    auto n3 = zero_n3();
    return {split_mixed(eval_partial(plane_poly(L), n3)),
            split_mixed(eval_partial(sphere_poly(L), n3)),
            split_mixed(eval_partial(coplanar_poly(), n3))};
}

std::vector<QPoly> build_nonparallel_special_system(const RobotGeometry& geom,
                                                    const RatPose& pose) {
    if (!pose.n[2].is_zero())
        throw std::invalid_argument("nonparallel special system: n3 != 0");
    Lengths L = lengths(geom);
    Rat reach = pose.n[0] * pose.p[0] + pose.n[1] * pose.p[1] - L.d6;
    if (reach != L.d4 && reach != -L.d4)
        throw UnreachablePose("unreachable: special-orientation consistency");
    auto pt = pose.param_point();
    bool n2_nonzero = !pose.n[1].is_zero();
    return {specialize_mixed(plane_poly(L), pt), specialize_mixed(sphere_poly(L), pt),
            specialize_mixed(offset_quartic(L), pt),
            specialize_mixed(horizontal_pin_quartic(L, n2_nonzero), pt)};
}

std::vector<PPoly> build_nonparallel_special_system_parametric(const RobotGeometry& geom,
                                                               bool n2_nonzero) {
    Lengths L = lengths(geom);
    auto n3 = zero_n3();
    return {split_mixed(eval_partial(plane_poly(L), n3)),
            split_mixed(eval_partial(sphere_poly(L), n3)),
            split_mixed(eval_partial(offset_quartic(L), n3)),
            split_mixed(horizontal_pin_quartic(L, n2_nonzero))};
}

}  // namespace gbik
