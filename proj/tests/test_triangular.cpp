#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gbik/poly_io.hpp"
#include "gbik/poly_ops.hpp"
#include "gbik/triangular.hpp"

using namespace gbik;

namespace {

std::shared_ptr<const MonoOrder> lex_xy() {
    return MonoOrder::make(MonoOrder::Kind::lex, {var("x"), var("y")});
}

bool near(const Rat& a, double b, double eps = 1e-9) {
    return std::abs(to_double(a) - b) < eps;
}

void check_residuals(const std::vector<QPoly>& basis,
                     const TriangularResult& res, const Rat& tol) {
    Rat bound = 10 * tol;
    for (const auto& sol : res.solutions)
        for (const auto& g : basis) CHECK(rat_abs(eval_poly(g, sol)) < bound);
}

}  // namespace

TEST_CASE("two-variable chain with rational solutions") {
    auto ord = lex_xy();
    std::vector<QPoly> basis{parse_poly("x - y", ord), parse_poly("y^2 - 1", ord)};
    auto res = solve_triangular(basis);
    CHECK_FALSE(res.inconsistent);
    REQUIRE(res.solutions.size() == 2);
    // rational roots at dyadic points come out exact
    CHECK(res.solutions[0].at(var("x")) == -1);
    CHECK(res.solutions[0].at(var("y")) == -1);
    CHECK(res.solutions[1].at(var("x")) == 1);
    CHECK(res.solutions[1].at(var("y")) == 1);
    check_residuals(basis, res, Rat(1, 1000000000000LL));
}

TEST_CASE("unit ideal flags no solution") {
    auto ord = lex_xy();
    auto res = solve_triangular({parse_poly("1", ord)});
    CHECK(res.inconsistent);
    CHECK(res.solutions.empty());
    auto res2 = solve_triangular({parse_poly("x - y", ord), parse_poly("3", ord)});
    CHECK(res2.inconsistent);
}

TEST_CASE("positive-dimensional input is rejected") {
    auto ord = lex_xy();
    CHECK_THROWS_AS(solve_triangular({parse_poly("x - y", ord)}), PositiveDimensional);
    CHECK_THROWS_AS(solve_triangular({parse_poly("y^2 - 1", ord)}), PositiveDimensional);
    CHECK_THROWS_AS(solve_triangular({}), PositiveDimensional);
}

TEST_CASE("fiber-dependent root counts") {
    // variety {(1,1), (-1,1), (1,-1)} in (y,z): at z=1 the mixed element
    // vanishes identically and y^2-1 takes over; at z=-1 it pins y=1
    auto ord = MonoOrder::make(MonoOrder::Kind::lex, {var("y"), var("z")});
    std::vector<QPoly> basis{parse_poly("z^2 - 1", ord),
                             parse_poly("y*z - y - z + 1", ord),
                             parse_poly("y^2 - 1", ord)};
    auto res = solve_triangular(basis);
    REQUIRE(res.solutions.size() == 3);
    bool seen[3] = {false, false, false};
    for (const auto& s : res.solutions) {
        if (near(s.at(var("y")), 1) && near(s.at(var("z")), 1)) seen[0] = true;
        if (near(s.at(var("y")), -1) && near(s.at(var("z")), 1)) seen[1] = true;
        if (near(s.at(var("y")), 1) && near(s.at(var("z")), -1)) seen[2] = true;
    }
    CHECK(seen[0]);
    CHECK(seen[1]);
    CHECK(seen[2]);
    check_residuals(basis, res, Rat(1, 1000000000000LL));
}

TEST_CASE("irrational coordinates meet the residual bound") {
    auto ord = lex_xy();
    std::vector<QPoly> basis{parse_poly("x - y", ord), parse_poly("y^2 - 2", ord)};
    auto res = solve_triangular(basis);
    REQUIRE(res.solutions.size() == 2);
    CHECK(near(res.solutions[0].at(var("x")), -1.4142135623730951));
    CHECK(near(res.solutions[1].at(var("x")), 1.4142135623730951));
    check_residuals(basis, res, Rat(1, 1000000000000LL));
}

TEST_CASE("steep quartic triggers adaptive polishing") {
    // (x^2 - 90000)^2 = 1: four roots near +-300 where the derivative is
    // ~1e8, so meeting the residual bound needs much tighter coordinates
    // than the default interval width
    auto ord = MonoOrder::make(MonoOrder::Kind::lex, {var("y"), var("x")});
    std::vector<QPoly> basis{
        parse_poly("y - x^2", ord),
        parse_poly("x^4 - 180000*x^2 + 8099999999", ord)};
    auto res = solve_triangular(basis);
    REQUIRE(res.solutions.size() == 4);
    check_residuals(basis, res, Rat(1, 1000000000000LL));
    for (const auto& s : res.solutions) {
        double y = to_double(s.at(var("y")));
        CHECK((std::abs(y - 89999.0) < 1e-6 || std::abs(y - 90001.0) < 1e-6));
    }
}

TEST_CASE("random triangular chains: counts and residuals") {
    auto x = var("x"), y = var("y"), z = var("z");
    auto ord = MonoOrder::make(MonoOrder::Kind::lex, {x, y, z});
    std::mt19937_64 rng(4242);
    std::uniform_int_distribution<int> num(-6, 6);
    std::uniform_int_distribution<int> den(1, 3);
    std::uniform_int_distribution<int> coef(-5, 5);
    Rat tol(1, 1000000000000LL);
    for (int trial = 0; trial < 25; ++trial) {
        // distinct rational roots for z
        std::vector<Rat> zr;
        int k = 1 + static_cast<int>(rng() % 3);
        while (static_cast<int>(zr.size()) < k) {
            Rat r(num(rng), den(rng));
            if (std::find(zr.begin(), zr.end(), r) == zr.end()) zr.push_back(r);
        }
        QPoly pz = QPoly::constant(ord, 1);
        for (const auto& r : zr)
            pz = pz * (QPoly::variable(ord, z) - QPoly::constant(ord, r));
        // y = f(z), x = g(z): linear levels on top
        QPoly f = QPoly::constant(ord, coef(rng));
        QPoly zp = QPoly::variable(ord, z);
        f = f + QPoly::constant(ord, coef(rng)) * zp +
            QPoly::constant(ord, coef(rng)) * zp * zp;
        QPoly g = QPoly::constant(ord, coef(rng)) +
                  QPoly::constant(ord, coef(rng)) * zp;
        std::vector<QPoly> basis{QPoly::variable(ord, x) - g,
                                 QPoly::variable(ord, y) - f, pz};
        auto res = solve_triangular(basis, tol);
        REQUIRE(res.solutions.size() == zr.size());
        std::sort(zr.begin(), zr.end());
        for (std::size_t i = 0; i < zr.size(); ++i)
            CHECK(rat_abs(res.solutions[i].at(z) - zr[i]) <= tol);
        check_residuals(basis, res, tol);
    }
}
