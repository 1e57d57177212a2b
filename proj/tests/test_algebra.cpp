#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stabwalls/linalg.hpp"
#include "stabwalls/polynomial.hpp"
#include "support.hpp"

#include <set>

using namespace stabwalls;
using testing_support::Gen;
using testing_support::q;

TEST_CASE("parse_rational accepts fractions and exact decimals") {
    CHECK(parse_rational("3/6") == q(1, 2));
    CHECK(parse_rational("-7") == q(-7));
    CHECK(parse_rational("0.001") == q(1, 1000));
    CHECK(parse_rational("-1.25") == q(-5, 4));
    CHECK(parse_rational("1e-3") == q(1, 1000));
    CHECK(parse_rational("2.5E2") == q(250));
    CHECK(parse_rational(" 1/3 ") == q(1, 3));
    CHECK(parse_rational(".5") == q(1, 2));
    for (const char* bad : {"", "1/0", "abc", "1/2/3", "1.2.3", "--1", "1e", "0x10", "."}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(parse_rational(bad), Error);
    }
}

TEST_CASE("to_string and to_decimal") {
    CHECK(to_string(q(-3, 4)) == "-3/4");
    CHECK(to_string(q(8, 4)) == "2");
    CHECK(to_decimal(q(1, 3)) == "0.333333333333");
    CHECK(to_decimal(q(-5, 4)) == "-1.25");
    CHECK(to_decimal(q(0)) == "0");
    CHECK(to_decimal(q(1200)) == "1200");
}

TEST_CASE("simplest_between returns the smallest denominator in range") {
    CHECK(simplest_between(q(1, 3), q(1, 2)) == q(1, 2));
    CHECK(simplest_between(q(-1, 2), q(1, 2)) == 0);
    CHECK(simplest_between(q(3, 10), q(4, 10)) == q(1, 3));
    CHECK(simplest_between(q(-4, 10), q(-3, 10)) == q(-1, 3));
    CHECK(simplest_between(q(7, 5), q(7, 5)) == q(7, 5));
    // brute-force oracle over small denominators
    Gen g(11);
    for (int trial = 0; trial < 200; ++trial) {
        Rational a = g.rational(20, 30), b = g.rational(20, 30);
        if (a > b) std::swap(a, b);
        Rational got = simplest_between(a, b);
        CHECK(got >= a);
        CHECK(got <= b);
        for (long den = 1; den < got.get_den().get_si(); ++den) {
            Rational cand = -floor_of(-a * den) / den;  // smallest multiple of 1/den >= a
            CHECK(cand > b);
        }
    }
}

TEST_CASE("UniPoly arithmetic and gcd") {
    UniPoly x = UniPoly::x();
    UniPoly one = UniPoly::constant(1);
    UniPoly p = (x - one) * (x - one) * (x + UniPoly::constant(2));
    CHECK(p.degree() == 3);
    CHECK(p(q(1)) == 0);
    CHECK(p(q(-2)) == 0);
    auto [qq, r] = UniPoly::divmod(p, x - one);
    CHECK(r.is_zero());
    CHECK(qq == (x - one) * (x + UniPoly::constant(2)));
    UniPoly g = UniPoly::gcd(p, p.derivative());
    CHECK(g == x - one);
    CHECK_THROWS_AS(UniPoly::divmod(p, UniPoly()), Error);
}

TEST_CASE("rational_roots finds exactly the rational roots") {
    UniPoly x = UniPoly::x();
    auto lin = [&](long a, long b) { return UniPoly::constant(q(-a, b)) + x; };  // x - a/b
    UniPoly p = lin(1, 3) * lin(-5, 2) * lin(1, 3) * (x * x - UniPoly::constant(2));
    auto roots = rational_roots(p);
    REQUIRE(roots.size() == 2);
    CHECK(roots[0] == q(-5, 2));
    CHECK(roots[1] == q(1, 3));
    CHECK(isolate_real_roots(p).size() == 4);
    CHECK(rational_roots(UniPoly::constant(3)).empty());
    CHECK_THROWS_AS(rational_roots(UniPoly()), Error);

    // property: products of random linear factors
    Gen g(5);
    for (int trial = 0; trial < 60; ++trial) {
        std::set<Rational> want;
        UniPoly prod = UniPoly::constant(g.positive(5, 5));
        int n = static_cast<int>(g.integer(1, 5));
        for (int i = 0; i < n; ++i) {
            Rational r = g.rational(30, 12);
            want.insert(r);
            prod = prod * (x - UniPoly::constant(r));
        }
        prod = prod * (x * x + UniPoly::constant(g.positive(9, 3)));  // no real roots
        auto got = rational_roots(prod);
        CHECK(std::vector<Rational>(want.begin(), want.end()) == got);
    }
}

TEST_CASE("BiPoly evaluation, slices and ratio") {
    BiPoly b = BiPoly::beta(), t = BiPoly::t();
    BiPoly p = b * b * t + q(3) * t - BiPoly::constant(1);
    CHECK(p(q(2), q(1, 2)) == q(4, 2) + q(3, 2) - 1);
    CHECK(p.degree_beta() == 2);
    CHECK(p.degree_t() == 1);
    CHECK(p.t_coefficient(1)(q(2)) == 7);
    CHECK(p.at_beta(q(2))(q(1, 2)) == p(q(2), q(1, 2)));
    CHECK(BiPoly::ratio(q(-2, 3) * p, p) == q(-2, 3));
    CHECK(!BiPoly::ratio(p + t, p));
    CHECK((p - p).is_zero());
    CHECK((b * t).min_degree_beta() == 1);
}

TEST_CASE("resultant_t vanishes at common beta roots") {
    BiPoly b = BiPoly::beta(), t = BiPoly::t();
    // t = beta^2 and t = beta + 2 meet at beta = 2 and beta = -1
    BiPoly f = t - b * b;
    BiPoly g = t - b - BiPoly::constant(2);
    UniPoly r = resultant_t(f, g);
    CHECK(r(q(2)) == 0);
    CHECK(r(q(-1)) == 0);
    CHECK(r(q(0)) != 0);
    // t-free input: Res = f^{deg g}
    BiPoly h = b - BiPoly::constant(3);
    UniPoly r2 = resultant_t(h, t * t - b);
    CHECK(r2 == h.t_coefficient(0) * h.t_coefficient(0));
}

TEST_CASE("linear algebra helpers") {
    Matrix m = {{q(2), q(1)}, {q(4), q(3)}};
    CHECK(determinant(m) == 2);
    auto x = solve(m, {q(3), q(7)});
    CHECK(x[0] == 1);
    CHECK(x[1] == 1);
    CHECK_THROWS_AS(solve({{q(1), q(2)}, {q(2), q(4)}}, {q(1), q(1)}), Error);
    CHECK(rank({{q(1), q(2)}, {q(2), q(4)}}) == 1);
}
