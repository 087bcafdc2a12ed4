#include "gbik/chain.hpp"

#include <algorithm>

namespace gbik {

namespace {

constexpr double kNormGate = 1e-6;

std::optional<SinCosPair> gated_unit(double s, double c, double tol) {
    double n2 = s * s + c * c;
    if (std::abs(n2 - 1.0) > tol) return std::nullopt;
    double k = 1.0 / std::sqrt(n2);
    return SinCosPair{s * k, c * k};
}

double sin_sum(const SinCosPair& a, const SinCosPair& b) { return a.s * b.c + a.c * b.s; }
double cos_sum(const SinCosPair& a, const SinCosPair& b) { return a.c * b.c - a.s * b.s; }

}  // namespace

std::vector<SinCosPair> solve_circle_line(double A, double B, double C) {
    double R = std::hypot(A, B);
    if (R < 1e-15) return {};
    double u = C / R;
    if (std::abs(u) > 1.0 + 1e-9) return {};
    u = std::clamp(u, -1.0, 1.0);
    double phi = std::atan2(B, A);
    double delta = std::acos(u);
    std::vector<SinCosPair> out{{std::sin(phi + delta), std::cos(phi + delta)}};
    if (delta > 1e-12) out.push_back({std::sin(phi - delta), std::cos(phi - delta)});
    return out;
}

std::optional<SinCosPair> theta6_from_point(const RobotGeometry& geom, const Pose& pose,
                                            const IntersectionPoint& P, double tol) {
    double d5 = to_double(geom.rows[4].d);
    double vx = P.x - pose.p[0], vy = P.y - pose.p[1], vz = P.z - pose.p[2];
    double s = (pose.l[0] * vx + pose.l[1] * vy + pose.l[2] * vz) / d5;
    double c = (pose.m[0] * vx + pose.m[1] * vy + pose.m[2] * vz) / d5;
    return gated_unit(s, c, tol);
}

std::vector<std::pair<SinCosPair, SinCosPair>> theta5_theta1_generic(
    const RobotGeometry& geom, const Pose& pose, const IntersectionPoint& P) {
    double d5 = to_double(geom.rows[4].d);
    double dx = pose.p[0] - P.x, dy = pose.p[1] - P.y, dz = pose.p[2] - P.z;
    double n1 = pose.n[0], n2 = pose.n[1], n3 = pose.n[2];
    double D = n2 * dx - n1 * dy;
    double r = std::hypot(d5 * n3, D);
    if (r < 1e-12) return {};

    SinCosPair t5{D / r, -d5 * n3 / r};
    double s1 = (-n1 * n2 * dx + (1.0 - n2 * n2) * dy - n2 * n3 * dz) / r;
    double c1 = ((1.0 - n1 * n1) * dx - n1 * n2 * dy - n1 * n3 * dz) / r;
    auto t1 = gated_unit(s1, c1, kNormGate);
    if (!t1) return {};

    return {{t5, *t1}, {{-t5.s, -t5.c}, {-t1->s, -t1->c}}};
}

std::vector<SinCosPair> theta3_from_point(const RobotGeometry& geom,
                                          const IntersectionPoint& P) {
    double d1 = to_double(geom.rows[0].d);
    double a2 = to_double(geom.rows[1].a);
    double a3 = to_double(geom.rows[2].a);
    double q = P.x * P.x + P.y * P.y + (P.z - d1) * (P.z - d1);
    double c3 = (q - a2 * a2 - a3 * a3 - to_double(geom.rows[3].d * geom.rows[3].d)) /
                (2.0 * a2 * a3);
    if (std::abs(c3) > 1.0 + 1e-9) return {};
    c3 = std::clamp(c3, -1.0, 1.0);
    double s3 = std::sqrt(std::max(0.0, 1.0 - c3 * c3));
    if (s3 < 1e-12) return {{0.0, c3}};
    return {{s3, c3}, {-s3, c3}};
}

std::vector<SinCosPair> theta2_from_point(const RobotGeometry& geom,
                                          const IntersectionPoint& P,
                                          const SinCosPair& theta3) {
    // z = d1 - a2*c2 - a3*cos(theta2+theta3)
    double d1 = to_double(geom.rows[0].d);
    double a2 = to_double(geom.rows[1].a);
    double a3 = to_double(geom.rows[2].a);
    return solve_circle_line(a2 + a3 * theta3.c, -a3 * theta3.s, d1 - P.z);
}

std::vector<SinCosPair> theta4_from_chain(const Pose& pose, const SinCosPair& theta2,
                                          const SinCosPair& theta3,
                                          const SinCosPair& theta6) {
    double s23 = sin_sum(theta2, theta3);
    double c23 = cos_sum(theta2, theta3);
    double rhs = -pose.m[2] * theta6.c - pose.l[2] * theta6.s;
    return solve_circle_line(c23, -s23, rhs);
}

std::vector<std::pair<SinCosPair, SinCosPair>> theta1_theta5_special(
    const RobotGeometry& geom, const Pose& pose, const IntersectionPoint& P,
    const SinCosPair& theta2, const SinCosPair& theta3, const SinCosPair& theta6) {
    double a2 = to_double(geom.rows[1].a);
    double a3 = to_double(geom.rows[2].a);
    double d4 = to_double(geom.rows[3].d);
    double s23 = sin_sum(theta2, theta3);

    double e1 = pose.l[0] * theta6.c - pose.m[0] * theta6.s;
    double e2 = pose.l[1] * theta6.c - pose.m[1] * theta6.s;
    double n1 = pose.n[0], n2 = pose.n[1];

    // x = d4*s1 + (a2*s2 + a3*sin(theta2+theta3))*c1; the second circle-line
    // intersection violates the lateral offset relation y*c1 - x*s1 = -d4 and
    // is dropped here.
    double offset_gate = 1e-6 * std::max(1.0, std::abs(P.x) + std::abs(P.y));
    std::vector<std::pair<SinCosPair, SinCosPair>> out;
    for (const SinCosPair& t1 : solve_circle_line(a2 * theta2.s + a3 * s23, d4, P.x)) {
        if (std::abs(P.y * t1.c - P.x * t1.s + d4) > offset_gate) continue;
        // -n1*s5 + e1*c5 = s1, -n2*s5 + e2*c5 = -c1
        double det = -n1 * e2 + n2 * e1;
        if (std::abs(det) < 1e-12) continue;
        double s5 = (t1.s * e2 + e1 * t1.c) / det;
        double c5 = (n1 * t1.c + n2 * t1.s) / det;
        auto t5 = gated_unit(s5, c5, kNormGate);
        if (!t5) continue;
        out.emplace_back(t1, *t5);
    }
    return out;
}

}  // namespace gbik
