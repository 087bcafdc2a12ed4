#pragma once

// Exact rational forward kinematics, independent of the library FK. Joint
// angles enter as exact (sin, cos) pairs on the unit circle, so every matrix
// entry stays in Q and residual checks can demand literal zero.

#include <array>
#include <cstdlib>
#include <utility>

#include "gbik/kinematics.hpp"

namespace oracle {

using gbik::Rat;

// (sin, cos) with s^2 + c^2 == 1 exactly
using SC = std::pair<Rat, Rat>;

struct Mat {
    std::array<std::array<Rat, 4>, 4> a{};

    static Mat identity() {
        Mat m;
        for (int i = 0; i < 4; ++i) m.a[i][i] = Rat(1);
        return m;
    }
};

inline Mat mul(const Mat& x, const Mat& y) {
    Mat r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            Rat s(0);
            for (int k = 0; k < 4; ++k) s += x.a[i][k] * y.a[k][j];
            r.a[i][j] = s;
        }
    return r;
}

inline int qsin(int q) {
    int r = ((q % 4) + 4) % 4;
    return r == 1 ? 1 : (r == 3 ? -1 : 0);
}
inline int qcos(int q) { return qsin(q + 1); }

inline Mat joint(const gbik::JointRow& row, const SC& theta) {
    Rat ca(qcos(row.alpha_q)), sa(qsin(row.alpha_q));
    Rat cd(qcos(row.delta_q)), sd(qsin(row.delta_q));
    const Rat& st = theta.first;
    const Rat& ct = theta.second;
    Mat t;
    t.a[0][0] = cd * ct - ca * sd * st;
    t.a[0][1] = -ca * cd * st - sd * ct;
    t.a[0][2] = sa * st;
    t.a[0][3] = row.a * ct;
    t.a[1][0] = ca * sd * ct + cd * st;
    t.a[1][1] = ca * cd * ct - sd * st;
    t.a[1][2] = -sa * ct;
    t.a[1][3] = row.a * st;
    t.a[2][0] = sa * sd;
    t.a[2][1] = sa * cd;
    t.a[2][2] = ca;
    t.a[2][3] = row.d;
    t.a[3][3] = Rat(1);
    return t;
}

inline Mat chain(const gbik::RobotGeometry& g, const std::array<SC, 6>& q, int upto = 6) {
    Mat acc = Mat::identity();
    for (int i = 0; i < upto; ++i)
        acc = mul(acc, joint(g.rows[static_cast<std::size_t>(i)], q[static_cast<std::size_t>(i)]));
    return acc;
}

// Rational point on the unit circle: s = 2uv/(u^2+v^2), c = (u^2-v^2)/(u^2+v^2).
inline SC circle_point(long long u, long long v) {
    Rat den = Rat(u) * u + Rat(v) * v;
    return {Rat(2) * u * v / den, (Rat(u) * u - Rat(v) * v) / den};
}

// sin/cos addition: the pair for the sum of two angles.
inline SC sc_add(const SC& a, const SC& b) {
    return {a.first * b.second + a.second * b.first,
            a.second * b.second - a.first * b.first};
}

inline SC sc_neg(const SC& a) { return {-a.first, a.second}; }

template <class Rng>
SC random_circle_point(Rng& rng) {
    long long u = static_cast<long long>(rng() % 40) + 1;
    long long v = static_cast<long long>(rng() % 40) + 1;
    SC sc = circle_point(u, v);
    if (rng() % 2) sc.first = -sc.first;
    if (rng() % 2) sc.second = -sc.second;
    return sc;
}

}  // namespace oracle
