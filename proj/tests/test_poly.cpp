#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gbik/poly.hpp"
#include "gbik/poly_io.hpp"
#include "gbik/poly_ops.hpp"

using namespace gbik;

namespace {

std::shared_ptr<const MonoOrder> lex_xyz() {
    return MonoOrder::make(MonoOrder::Kind::lex, {var("z"), var("y"), var("x")});
}

std::shared_ptr<const MonoOrder> grevlex_xyz() {
    return MonoOrder::make(MonoOrder::Kind::grevlex, {var("z"), var("y"), var("x")});
}

}  // namespace

TEST_CASE("monomial arithmetic") {
    Monomial x = Monomial::of(var("x"));
    Monomial y2 = Monomial::of(var("y"), 2);
    Monomial m = x * y2;
    CHECK(m.total_degree() == 3);
    CHECK(m.exponent(var("x")) == 1);
    CHECK(m.exponent(var("y")) == 2);
    CHECK(m.exponent(var("z")) == 0);
    CHECK(x.divides(m));
    CHECK(!m.divides(x));
    CHECK(m.divided_by(x) == y2);
    CHECK(mono_lcm(x, y2) == m);
    CHECK(mono_gcd(m, x) == x);
    CHECK(mono_coprime(x, y2));
    CHECK(!mono_coprime(m, y2));
    CHECK(Monomial::one().divides(m));
    CHECK_THROWS(y2.divided_by(m));
}

TEST_CASE("lex order") {
    auto ord = lex_xyz();
    Monomial z = Monomial::of(var("z"));
    Monomial y = Monomial::of(var("y"));
    Monomial x3 = Monomial::of(var("x"), 3);
    CHECK(ord->greater(z, y));
    CHECK(ord->greater(y, x3));          // lex ignores total degree
    CHECK(ord->greater(z * y, z * x3));
    CHECK(ord->compare(x3, x3) == 0);
    CHECK(ord->greater(x3, Monomial::one()));
}

TEST_CASE("grevlex order") {
    auto ord = grevlex_xyz();
    Monomial x = Monomial::of(var("x"));
    Monomial y = Monomial::of(var("y"));
    Monomial z = Monomial::of(var("z"));
    CHECK(ord->greater(Monomial::of(var("x"), 3), z * y));  // degree wins
    CHECK(ord->greater(z, y));
    CHECK(ord->greater(y, x));
    // same degree: smaller exponent on the least variable wins
    CHECK(ord->greater(z * y, x * x));
    CHECK(ord->greater(y * y, y * x));
}

TEST_CASE("order rejects foreign variables") {
    auto ord = lex_xyz();
    Monomial w = Monomial::of(var("w_foreign"));
    CHECK_THROWS_AS((void)ord->compare(w, Monomial::one()), std::invalid_argument);
}

TEST_CASE("poly construction keeps invariants") {
    auto ord = lex_xyz();
    QPoly p(ord);
    p.add_term(Monomial::of(var("x")), Rat(1));
    p.add_term(Monomial::of(var("y")), Rat(2));
    p.add_term(Monomial::of(var("x")), Rat(-1));
    CHECK(p.term_count() == 1);
    CHECK(p.lm() == Monomial::of(var("y")));
    p.add_term(Monomial::of(var("y")), Rat(-2));
    CHECK(p.is_zero());
    CHECK_THROWS(p.lt());
}

TEST_CASE("poly arithmetic") {
    auto ord = lex_xyz();
    QPoly x = QPoly::variable(ord, var("x"));
    QPoly y = QPoly::variable(ord, var("y"));
    QPoly one = QPoly::constant(ord, Rat(1));

    QPoly s = x + y;
    QPoly d = x - y;
    QPoly prod = s * d;
    QPoly expect = x * x - y * y;
    CHECK(poly_equal(prod, expect));
    CHECK(poly_equal(s * one, s));
    CHECK((s - s).is_zero());
    CHECK(poly_equal(-(x - y), y - x));
    CHECK(prod.total_degree() == 2);
    CHECK(prod.degree_in(var("x")) == 2);
    CHECK(s.scaled(Rat(3, 2)).lc() == Rat(3, 2));
}

TEST_CASE("ring mismatch throws") {
    auto a = lex_xyz();
    auto b = grevlex_xyz();
    QPoly p = QPoly::variable(a, var("x"));
    QPoly q = QPoly::variable(b, var("x"));
    CHECK_THROWS_AS((void)(p + q), RingMismatch);
    CHECK_THROWS_AS((void)(p * q), RingMismatch);
    QPoly moved = q.with_order(a);
    CHECK(poly_equal(p, moved));
}

TEST_CASE("print and parse round trip") {
    auto ord = lex_xyz();
    QPoly p = parse_poly("3/2*x^2*y - 1", ord);
    CHECK(p.term_count() == 2);
    CHECK(poly_to_string(p) == "3/2*y*x^2 - 1");  // variables print in precedence order
    QPoly q = parse_poly(poly_to_string(p), ord);
    CHECK(poly_equal(p, q));

    QPoly r = parse_poly("-x + 3*z*y*x - y^2 + 0*x + 2", ord);
    CHECK(poly_to_string(r) == "3*z*y*x - y^2 - x + 2");
    CHECK(poly_equal(parse_poly(poly_to_string(r), ord), r));

    CHECK(poly_to_string(QPoly::zero(ord)) == "0");
    CHECK(parse_poly("0", ord).is_zero());
    CHECK(poly_to_string(parse_poly("x - x", ord)) == "0");
    CHECK(parse_poly("7/7", ord).lc() == 1);

    CHECK_THROWS(parse_poly("x +", ord));
    CHECK_THROWS(parse_poly("2x", ord));
    CHECK_THROWS_AS(parse_poly("q_unknown + 1", ord), RingMismatch);
}

TEST_CASE("evaluation") {
    auto ord = lex_xyz();
    QPoly p = parse_poly("x^2*y - 3*z + 1/2", ord);
    std::map<VarId, Rat> pt{{var("x"), Rat(2)}, {var("y"), Rat(3)}, {var("z"), Rat(1, 3)}};
    CHECK(eval_poly(p, pt) == Rat(2) * 2 * 3 - 1 + Rat(1, 2) + Rat(2) * 2 * 3 - Rat(2) * 2 * 3);
    CHECK(eval_poly(p, pt) == Rat(23, 2));

    QPoly sub = eval_partial(p, {{var("z"), Rat(0)}});
    CHECK(poly_to_string(sub) == "y*x^2 + 1/2");
    CHECK_THROWS(eval_poly(p, {{var("x"), Rat(1)}}));
}

TEST_CASE("derivative and univariate bridge") {
    auto ord = lex_xyz();
    QPoly p = parse_poly("x^4 - 2*x^2 + 3/4", ord);
    QPoly dp = derivative(p, var("x"));
    CHECK(poly_to_string(dp) == "4*x^3 - 4*x");
    auto c = univariate_coeffs(p, var("x"));
    REQUIRE(c.size() == 5);
    CHECK(c[0] == Rat(3, 4));
    CHECK(c[2] == -2);
    CHECK(c[4] == 1);
    CHECK(eval_univariate(c, Rat(1)) == Rat(-1, 4));
    QPoly back = poly_from_univariate(c, var("x"), ord);
    CHECK(poly_equal(back, p));
    CHECK_THROWS(univariate_coeffs(parse_poly("x*y", ord), var("x")));
}

TEST_CASE("canonical compare is a total order") {
    auto ord = lex_xyz();
    QPoly a = parse_poly("x^2 + 1", ord);
    QPoly b = parse_poly("x^2 + 2", ord);
    QPoly c = parse_poly("y", ord);
    CHECK(poly_compare(a, b) < 0);
    CHECK(poly_compare(b, a) > 0);
    CHECK(poly_compare(a, a) == 0);
    CHECK(poly_compare(c, a) > 0);  // y > x^2 in lex
}
