#include "gbik/kinematics.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace gbik {

namespace {

constexpr double kPi = 3.14159265358979323846;

// sin/cos of q * pi/2, exact
int quarter_sin(int q) {
    int r = ((q % 4) + 4) % 4;
    return r == 1 ? 1 : (r == 3 ? -1 : 0);
}
int quarter_cos(int q) { return quarter_sin(q + 1); }

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace

Transform4 Transform4::identity() {
    Transform4 t{};
    for (int i = 0; i < 4; ++i) t.m[i][i] = 1.0;
    return t;
}

Transform4 Transform4::operator*(const Transform4& o) const {
    Transform4 r{};
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) {
            double a = m[i][k];
            if (a == 0.0) continue;
            for (int j = 0; j < 4; ++j) r.m[i][j] += a * o.m[k][j];
        }
    return r;
}

double normalize_angle(double t) {
    t = std::fmod(t + kPi, 2.0 * kPi);
    if (t <= 0.0) t += 2.0 * kPi;
    return t - kPi;
}

bool within_limits(const RobotGeometry& geom, const JointConfig& q) {
    for (int i = 0; i < 6; ++i)
        if (q[static_cast<std::size_t>(i)] < geom.limits[static_cast<std::size_t>(i)].first ||
            q[static_cast<std::size_t>(i)] > geom.limits[static_cast<std::size_t>(i)].second)
            return false;
    return true;
}

std::uint64_t RobotGeometry::content_hash() const {
    std::string blob = name;
    for (const auto& r : rows) {
        blob += '|';
        blob += rat_to_string(r.a);
        blob += ',';
        blob += std::to_string(r.alpha_q);
        blob += ',';
        blob += rat_to_string(r.d);
        blob += ',';
        blob += std::to_string(r.delta_q);
    }
    for (const auto& [lo, hi] : limits) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "|%.17g,%.17g", lo, hi);
        blob += buf;
    }
    return fnv1a64(blob);
}

Transform4 joint_transform(const RobotGeometry& geom, int joint, double theta) {
    if (joint < 1 || joint > 6) throw std::out_of_range("joint_transform: joint index");
    const JointRow& r = geom.rows[static_cast<std::size_t>(joint - 1)];
    double ca = quarter_cos(r.alpha_q), sa = quarter_sin(r.alpha_q);
    double cd = quarter_cos(r.delta_q), sd = quarter_sin(r.delta_q);
    double ct = std::cos(theta), st = std::sin(theta);
    double a = to_double(r.a), d = to_double(r.d);
    Transform4 t{};
    t.m[0][0] = cd * ct - ca * sd * st;
    t.m[0][1] = -ca * cd * st - sd * ct;
    t.m[0][2] = sa * st;
    t.m[0][3] = a * ct;
    t.m[1][0] = ca * sd * ct + cd * st;
    t.m[1][1] = ca * cd * ct - sd * st;
    t.m[1][2] = -sa * ct;
    t.m[1][3] = a * st;
    t.m[2][0] = sa * sd;
    t.m[2][1] = sa * cd;
    t.m[2][2] = ca;
    t.m[2][3] = d;
    t.m[3][3] = 1.0;
    return t;
}

Transform4 chain_transform(const RobotGeometry& geom, const JointConfig& q, int upto) {
    if (upto < 0 || upto > 6) throw std::out_of_range("chain_transform: upto");
    Transform4 acc = Transform4::identity();
    for (int i = 1; i <= upto; ++i)
        acc = acc * joint_transform(geom, i, q[static_cast<std::size_t>(i - 1)]);
    return acc;
}

Pose pose_from_transform(const Transform4& t) {
    Pose p;
    for (int i = 0; i < 3; ++i) {
        p.l[static_cast<std::size_t>(i)] = t.m[i][0];
        p.m[static_cast<std::size_t>(i)] = t.m[i][1];
        p.n[static_cast<std::size_t>(i)] = t.m[i][2];
        p.p[static_cast<std::size_t>(i)] = t.m[i][3];
    }
    return p;
}

Pose forward_kinematics(const RobotGeometry& geom, const JointConfig& q) {
    return pose_from_transform(chain_transform(geom, q, 6));
}

Pose rpy_to_rotation(double alpha, double beta, double gamma) {
    double ca = std::cos(alpha), sa = std::sin(alpha);
    double cb = std::cos(beta), sb = std::sin(beta);
    double cg = std::cos(gamma), sg = std::sin(gamma);
    Pose r;
    r.l = {cb * cg, sa * sb * cg - ca * sg, ca * sb * cg + sa * sg};
    r.m = {cb * sg, sa * sb * sg + ca * cg, ca * sb * sg - sa * cg};
    r.n = {-sb, sa * cb, ca * cb};
    return r;
}

Pose pose_from_rpy(const std::array<double, 3>& position, double alpha, double beta,
                   double gamma) {
    Pose r = rpy_to_rotation(alpha, beta, gamma);
    r.p = position;
    return r;
}

Rpy rotation_to_rpy(const Pose& pose) {
    Rpy out{};
    double sb = -pose.n[0];
    if (sb > 1.0) sb = 1.0;
    if (sb < -1.0) sb = -1.0;
    out.beta = std::asin(sb);
    double cb = std::sqrt(std::max(0.0, 1.0 - sb * sb));
    if (cb < 1e-9) {
        out.gimbal_lock = true;
        out.alpha = 0.0;
        out.gamma = std::atan2(-pose.l[1], pose.m[1]);
        return out;
    }
    out.alpha = std::atan2(pose.n[1], pose.n[2]);
    out.gamma = std::atan2(pose.m[0], pose.l[0]);
    return out;
}

std::vector<std::string> validate_pose(const Pose& pose, double tol) {
    const auto& l = pose.l;
    const auto& m = pose.m;
    const auto& n = pose.n;
    auto row = [&](int i) {
        return std::array<double, 3>{l[static_cast<std::size_t>(i)],
                                     m[static_cast<std::size_t>(i)],
                                     n[static_cast<std::size_t>(i)]};
    };
    std::vector<std::string> bad;
    auto check = [&](const char* name, double v) {
        if (std::abs(v) > tol) bad.push_back(name);
    };
    check("cross1", l[1] * m[2] - l[2] * m[1] - n[0]);
    check("cross2", l[2] * m[0] - l[0] * m[2] - n[1]);
    check("cross3", l[0] * m[1] - l[1] * m[0] - n[2]);
    for (int i = 0; i < 3; ++i) {
        auto r = row(i);
        check(("unit" + std::to_string(i + 1)).c_str(),
              r[0] * r[0] + r[1] * r[1] + r[2] * r[2] - 1.0);
    }
    const int pairs[3][2] = {{0, 1}, {1, 2}, {2, 0}};
    const char* names[3] = {"orth12", "orth23", "orth31"};
    for (int k = 0; k < 3; ++k) {
        auto r1 = row(pairs[k][0]);
        auto r2 = row(pairs[k][1]);
        check(names[k], r1[0] * r2[0] + r1[1] * r2[1] + r1[2] * r2[2]);
    }
    return bad;
}

}  // namespace gbik
