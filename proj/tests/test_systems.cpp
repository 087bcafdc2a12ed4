#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "exact_chain.hpp"
#include "gbik/groebner.hpp"
#include "gbik/poly_ops.hpp"
#include "gbik/profile.hpp"
#include "gbik/systems.hpp"
#include "gbik/triangular.hpp"

using namespace gbik;

namespace {

RobotGeometry testbot() {
    return load_profile(std::string(GBIK_SOURCE_DIR) + "/profiles/testbot.profile");
}

struct ExactCase {
    RatPose pose;
    Rat x, y, z;  // oracle wrist center (origin of the frame after joint 4)
};

ExactCase exact_case(const RobotGeometry& g, const std::array<oracle::SC, 6>& q) {
    oracle::Mat full = oracle::chain(g, q, 6);
    oracle::Mat four = oracle::chain(g, q, 4);
    ExactCase ec;
    for (std::size_t i = 0; i < 3; ++i) {
        ec.pose.l[i] = full.a[i][0];
        ec.pose.m[i] = full.a[i][1];
        ec.pose.n[i] = full.a[i][2];
        ec.pose.p[i] = full.a[i][3];
    }
    ec.x = four.a[0][3];
    ec.y = four.a[1][3];
    ec.z = four.a[2][3];
    return ec;
}

std::array<oracle::SC, 6> random_config(std::mt19937_64& rng) {
    std::array<oracle::SC, 6> q;
    for (auto& sc : q) sc = oracle::random_circle_point(rng);
    return q;
}

std::map<VarId, Rat> wrist_point(const ExactCase& ec) {
    const auto& R = SystemRing::get();
    return {{R.x, ec.x}, {R.y, ec.y}, {R.z, ec.z}};
}

Rat coplanar_value(const ExactCase& ec) {
    return ec.pose.n[1] * (ec.pose.p[0] - ec.x) - ec.pose.n[0] * (ec.pose.p[1] - ec.y);
}

// Hand-computed residuals, written independently of the builder.
Rat plane_by_hand(const RobotGeometry& g, const RatPose& ps, const Rat& x, const Rat& y,
                  const Rat& z) {
    return ps.n[0] * (ps.p[0] - x) + ps.n[1] * (ps.p[1] - y) + ps.n[2] * (ps.p[2] - z) -
           g.rows[5].d;
}
Rat sphere_by_hand(const RobotGeometry& g, const RatPose& ps, const Rat& x, const Rat& y,
                   const Rat& z) {
    Rat dx = ps.p[0] - x, dy = ps.p[1] - y, dz = ps.p[2] - z;
    Rat d5 = g.rows[4].d, d6 = g.rows[5].d;
    return dx * dx + dy * dy + dz * dz - d5 * d5 - d6 * d6;
}
Rat quartic_by_hand(const RobotGeometry& g, const RatPose& ps, const Rat& x, const Rat& y,
                    const Rat& z) {
    Rat n1 = ps.n[0], n2 = ps.n[1], n3 = ps.n[2];
    Rat dx = ps.p[0] - x, dy = ps.p[1] - y, dz = ps.p[2] - z;
    Rat w = (n1 * n2 * x + (1 - n1 * n1) * y) * dx - (n1 * n2 * y + (1 - n2 * n2) * x) * dy -
            n3 * (n1 * y - n2 * x) * dz;
    Rat d = n2 * dx - n1 * dy;
    Rat d4 = g.rows[3].d, d5 = g.rows[4].d;
    return w * w - d4 * d4 * (d5 * d5 * n3 * n3 + d * d);
}

RatPose axis_x_pose(const Rat& p1, const Rat& p2, const Rat& p3) {
    RatPose ps;
    ps.l = {Rat(0), Rat(1), Rat(0)};
    ps.m = {Rat(0), Rat(0), Rat(1)};
    ps.n = {Rat(1), Rat(0), Rat(0)};
    ps.p = {p1, p2, p3};
    return ps;
}

}  // namespace

TEST_CASE("generic system shape") {
    RobotGeometry g = testbot();
    std::mt19937_64 rng(2024);
    ExactCase ec = exact_case(g, random_config(rng));
    const auto& R = SystemRing::get();

    auto sys = build_generic_system(g, ec.pose);
    REQUIRE(sys.size() == 3);
    CHECK(sys[0].total_degree() == 1);
    CHECK(sys[1].total_degree() == 2);
    CHECK(sys[2].total_degree() == 4);
    for (const auto& p : sys)
        for (VarId v : p.variables()) CHECK((v == R.x || v == R.y || v == R.z));

    CHECK(sys[0].coefficient(Monomial::of(R.x)) == -ec.pose.n[0]);
    CHECK(sys[0].coefficient(Monomial::of(R.y)) == -ec.pose.n[1]);
    CHECK(sys[0].coefficient(Monomial::of(R.z)) == -ec.pose.n[2]);
    Rat want_const = ec.pose.n[0] * ec.pose.p[0] + ec.pose.n[1] * ec.pose.p[1] +
                     ec.pose.n[2] * ec.pose.p[2] - g.rows[5].d;
    CHECK(sys[0].coefficient(Monomial::one()) == want_const);
}

TEST_CASE("generic system agrees with hand-built residuals at random points") {
    RobotGeometry g = testbot();
    std::mt19937_64 rng(55);
    ExactCase ec = exact_case(g, random_config(rng));
    auto sys = build_generic_system(g, ec.pose);
    const auto& R = SystemRing::get();

    for (int k = 0; k < 12; ++k) {
        Rat px(static_cast<long long>(rng() % 4001) - 2000, 7);
        Rat py(static_cast<long long>(rng() % 4001) - 2000, 5);
        Rat pz(static_cast<long long>(rng() % 4001) - 2000, 3);
        std::map<VarId, Rat> at{{R.x, px}, {R.y, py}, {R.z, pz}};
        CHECK(eval_poly(sys[0], at) == plane_by_hand(g, ec.pose, px, py, pz));
        CHECK(eval_poly(sys[1], at) == sphere_by_hand(g, ec.pose, px, py, pz));
        CHECK(eval_poly(sys[2], at) == quartic_by_hand(g, ec.pose, px, py, pz));
    }
}

TEST_CASE("generic system vanishes exactly at the oracle wrist center") {
    RobotGeometry g = testbot();
    std::mt19937_64 rng(101);
    int used = 0;
    for (int t = 0; t < 40 && used < 25; ++t) {
        ExactCase ec = exact_case(g, random_config(rng));
        if (ec.pose.n[2].is_zero()) continue;
        ++used;
        auto sys = build_generic_system(g, ec.pose);
        auto at = wrist_point(ec);
        for (const auto& p : sys) CHECK(eval_poly(p, at).is_zero());
    }
    CHECK(used == 25);
}

TEST_CASE("generic system solved by elimination recovers the wrist center") {
    RobotGeometry g = testbot();
    std::mt19937_64 rng(7);
    int used = 0;
    for (int t = 0; t < 10 && used < 3; ++t) {
        ExactCase ec = exact_case(g, random_config(rng));
        if (ec.pose.n[2].is_zero()) continue;
        ++used;
        auto gb = buchberger(build_generic_system(g, ec.pose)).basis;
        auto sols = solve_triangular(gb);
        REQUIRE(!sols.inconsistent);
        const auto& R = SystemRing::get();
        Rat tol(1, 1000000000LL);
        bool found = false;
        for (const auto& s : sols.solutions)
            if (rat_abs(s.at(R.x) - ec.x) < tol && rat_abs(s.at(R.y) - ec.y) < tol &&
                rat_abs(s.at(R.z) - ec.z) < tol)
                found = true;
        CHECK(found);
    }
    CHECK(used == 3);
}

TEST_CASE("parallel special system vanishes at the wrist center of flat-wrist configs") {
    RobotGeometry g = testbot();
    std::mt19937_64 rng(2);
    int used = 0;
    for (int t = 0; t < 40 && used < 12; ++t) {
        auto q = random_config(rng);
        oracle::SC sum23 = oracle::sc_add(q[1], q[2]);
        if (t % 2 == 0) {
            q[3] = oracle::sc_neg(sum23);  // theta2+theta3+theta4 = 0
        } else {
            q[3] = {sum23.first, -sum23.second};  // = pi
        }
        if (q[4].second.is_zero()) continue;
        ExactCase ec = exact_case(g, q);
        REQUIRE(ec.pose.n[2].is_zero());
        REQUIRE(coplanar_value(ec).is_zero());
        ++used;

        auto sys = build_parallel_special_system(g, ec.pose);
        REQUIRE(sys.size() == 3);
        auto at = wrist_point(ec);
        for (const auto& p : sys) CHECK(eval_poly(p, at).is_zero());
        CHECK(!sys[0].depends_on(SystemRing::get().z));
    }
    CHECK(used == 12);
}

TEST_CASE("parallel special system rejects a tilted axis") {
    RobotGeometry g = testbot();
    std::mt19937_64 rng(33);
    ExactCase ec = exact_case(g, random_config(rng));
    REQUIRE(!ec.pose.n[2].is_zero());
    CHECK_THROWS_AS(build_parallel_special_system(g, ec.pose), std::invalid_argument);
}

TEST_CASE("parallel special system with axis (1,0,0) reduces to two lines and a circle") {
    RobotGeometry g = testbot();
    Rat d5 = g.rows[4].d, d6 = g.rows[5].d;
    RatPose ps = axis_x_pose(Rat(200), Rat(35), Rat(150));
    auto sys = build_parallel_special_system(g, ps);
    auto gb = buchberger(sys).basis;
    const auto& R = SystemRing::get();

    QPoly x_pin = QPoly::variable(R.main, R.x) - QPoly::constant(R.main, Rat(200) - d6);
    QPoly y_pin = QPoly::variable(R.main, R.y) - QPoly::constant(R.main, Rat(35));
    CHECK(normal_form(x_pin, gb).is_zero());
    CHECK(normal_form(y_pin, gb).is_zero());

    auto sols = solve_triangular(gb);
    REQUIRE(sols.solutions.size() == 2);
    Rat tol(1, 1000000000LL);
    for (const auto& s : sols.solutions) {
        CHECK(rat_abs(s.at(R.x) - (Rat(200) - d6)) < tol);
        CHECK(rat_abs(s.at(R.y) - 35) < tol);
        CHECK(rat_abs((s.at(R.z) - 150) * (s.at(R.z) - 150) - d5 * d5) < Rat(1, 1000));
    }
}

TEST_CASE("nonparallel special system vanishes at the wrist center") {
    RobotGeometry g = testbot();
    std::mt19937_64 rng(91);
    int used = 0;
    for (int t = 0; t < 60 && used < 12; ++t) {
        auto q = random_config(rng);
        q[4] = {t % 2 == 0 ? Rat(1) : Rat(-1), Rat(0)};  // theta5 = +-pi/2
        ExactCase ec = exact_case(g, q);
        REQUIRE(ec.pose.n[2].is_zero());
        if (coplanar_value(ec).is_zero()) continue;
        if (ec.pose.n[1].is_zero()) continue;
        ++used;

        auto sys = build_nonparallel_special_system(g, ec.pose);
        REQUIRE(sys.size() == 4);
        auto at = wrist_point(ec);
        for (const auto& p : sys) CHECK(eval_poly(p, at).is_zero());
    }
    CHECK(used == 12);
}

TEST_CASE("nonparallel special system is a solution continuum for exact poses") {
    RobotGeometry g = testbot();
    std::mt19937_64 rng(12);
    bool ran = false;
    for (int t = 0; t < 60 && !ran; ++t) {
        auto q = random_config(rng);
        q[4] = {Rat(1), Rat(0)};
        ExactCase ec = exact_case(g, q);
        if (coplanar_value(ec).is_zero() || ec.pose.n[1].is_zero()) continue;
        auto gb = buchberger(build_nonparallel_special_system(g, ec.pose)).basis;
        CHECK_THROWS_AS(solve_triangular(gb), PositiveDimensional);
        ran = true;
    }
    CHECK(ran);
}

TEST_CASE("nonparallel special system checks the reachability condition") {
    RobotGeometry g = testbot();
    Rat d4 = g.rows[3].d, d6 = g.rows[5].d;

    RatPose bad = axis_x_pose(d6 + d4 + 1, Rat(10), Rat(200));
    CHECK_THROWS_WITH_AS(build_nonparallel_special_system(g, bad),
                         "unreachable: special-orientation consistency", UnreachablePose);

    RatPose tilted = axis_x_pose(d6 + d4, Rat(10), Rat(200));
    tilted.n = {Rat(0), Rat(0), Rat(1)};
    CHECK_THROWS_AS(build_nonparallel_special_system(g, tilted), std::invalid_argument);

    Rat reach_hi = d6 + d4;
    Rat reach_lo = d6 - d4;
    for (const Rat& p1 : {reach_hi, reach_lo}) {
        RatPose ok = axis_x_pose(p1, Rat(10), Rat(200));
        auto sys = build_nonparallel_special_system(g, ok);
        REQUIRE(sys.size() == 4);
        // n2 = 0 selects the y-pinning quartic: (d4^2 - x^2)^2 here
        const auto& R = SystemRing::get();
        for (int k = 0; k < 8; ++k) {
            Rat xv(k * 17 - 40, 3);
            Rat inner = d4 * d4 - xv * xv;
            std::map<VarId, Rat> at{{R.x, xv}, {R.y, Rat(5)}, {R.z, Rat(0)}};
            CHECK(eval_poly(sys[3], at) == inner * inner);
        }
    }
}

TEST_CASE("nonparallel quartic takes the x-pinning form when n2 is nonzero") {
    RobotGeometry g = testbot();
    Rat d4 = g.rows[3].d;
    auto sys = build_nonparallel_special_system_parametric(g, true);
    REQUIRE(sys.size() == 4);
    const auto& R = SystemRing::get();

    std::mt19937_64 rng(5);
    for (int k = 0; k < 10; ++k) {
        Rat n1(static_cast<long long>(rng() % 19) - 9, 10);
        Rat n2(static_cast<long long>(rng() % 19) - 9, 10);
        Rat xv(static_cast<long long>(rng() % 801) - 400, 7);
        Rat yv(static_cast<long long>(rng() % 801) - 400, 9);
        QPoly spec = specialize(sys[3], {{R.n1, n1}, {R.n2, n2}, {R.p1, Rat(0)},
                                         {R.p2, Rat(0)}, {R.p3, Rat(0)}});
        Rat inner = d4 * d4 + n1 * n1 * xv * xv - n2 * n2 * yv * yv;
        Rat want = inner * inner - 4 * d4 * d4 * n1 * n1 * xv * xv;
        CHECK(eval_poly(spec, {{R.x, xv}, {R.y, yv}, {R.z, Rat(1)}}) == want);
    }
}

TEST_CASE("parametric builds specialize to the direct builds") {
    RobotGeometry g = testbot();
    std::mt19937_64 rng(404);

    auto generic = build_generic_system_parametric(g);
    auto parallel = build_parallel_special_system_parametric(g);
    auto nonpar = build_nonparallel_special_system_parametric(g, true);
    for (const auto* family : {&generic, &parallel, &nonpar})
        for (const auto& pp : *family)
            for (const auto& term : pp.terms) CHECK(term.c.den.is_constant());

    int generic_used = 0, parallel_used = 0, nonpar_used = 0;
    for (int t = 0; t < 200 && (generic_used < 10 || parallel_used < 6 || nonpar_used < 6);
         ++t) {
        auto q = random_config(rng);
        if (t % 3 == 1) {
            q[3] = oracle::sc_neg(oracle::sc_add(q[1], q[2]));
        } else if (t % 3 == 2) {
            q[4] = {Rat(1), Rat(0)};
        }
        ExactCase ec = exact_case(g, q);
        auto pt = ec.pose.param_point();

        if (!ec.pose.n[2].is_zero()) {
            if (generic_used >= 10) continue;
            ++generic_used;
            auto direct = build_generic_system(g, ec.pose);
            for (std::size_t i = 0; i < 3; ++i)
                CHECK(poly_equal(specialize(generic[i], pt), direct[i]));
        } else if (coplanar_value(ec).is_zero()) {
            if (parallel_used >= 6 || q[4].second.is_zero()) continue;
            ++parallel_used;
            auto direct = build_parallel_special_system(g, ec.pose);
            for (std::size_t i = 0; i < 3; ++i)
                CHECK(poly_equal(specialize(parallel[i], pt), direct[i]));
        } else {
            if (nonpar_used >= 6 || ec.pose.n[1].is_zero()) continue;
            ++nonpar_used;
            auto direct = build_nonparallel_special_system(g, ec.pose);
            for (std::size_t i = 0; i < 4; ++i)
                CHECK(poly_equal(specialize(nonpar[i], pt), direct[i]));
        }
    }
    CHECK(generic_used == 10);
    CHECK(parallel_used == 6);
    CHECK(nonpar_used == 6);
}

TEST_CASE("pose snapping keeps entries on the grid and zeroes float dust") {
    RobotGeometry g = testbot();
    Pose fk = forward_kinematics(g, {0.3, -0.7, 1.1, 0.4, -1.2, 2.0});
    RatPose snapped = RatPose::from_pose(fk);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(std::abs(to_double(snapped.l[i]) - fk.l[i]) <= 5e-10);
        CHECK(std::abs(to_double(snapped.m[i]) - fk.m[i]) <= 5e-10);
        CHECK(std::abs(to_double(snapped.n[i]) - fk.n[i]) <= 5e-10);
        CHECK(std::abs(to_double(snapped.p[i]) - fk.p[i]) <= 5e-10);
    }

    Pose dusty = fk;
    dusty.n[2] = 1e-12;
    CHECK(RatPose::from_pose(dusty).n[2].is_zero());

    const auto& R = SystemRing::get();
    auto pt = snapped.param_point();
    CHECK(pt.at(R.n1) == snapped.n[0]);
    CHECK(pt.at(R.p3) == snapped.p[2]);

    Pose back = snapped.to_pose();
    CHECK(std::abs(back.p[0] - fk.p[0]) <= 5e-10);
}
