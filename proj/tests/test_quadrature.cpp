#include <cmath>

#include <doctest.h>

#include "goafem/quadrature.hpp"
#include "oracle.hpp"

using namespace goafem;

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

// int_{ref triangle} x^a y^b = a! b! / (a+b+2)!
double monomial_exact(int a, int b) {
    return factorial(a) * factorial(b) / factorial(a + b + 2);
}

double apply_rule(const TriangleRule& rule, int a, int b) {
    double s = 0.0;
    for (const QuadPoint& q : rule.points)
        s += q.w * std::pow(q.x, a) * std::pow(q.y, b);
    return s;
}

}  // namespace

TEST_CASE("gauss rule matches literature nodes") {
    // 4-point rule on [-1,1], mapped to [0,1]
    const GaussRule& g4 = gauss_rule(4);
    const double n4[] = {0.8611363115940526, 0.3399810435848563};
    const double w4[] = {0.3478548451374538, 0.6521451548625461};
    REQUIRE(g4.nodes.size() == 4);
    CHECK(g4.nodes[0] == doctest::Approx(0.5 * (1.0 - n4[0])).epsilon(1e-14));
    CHECK(g4.nodes[1] == doctest::Approx(0.5 * (1.0 - n4[1])).epsilon(1e-14));
    CHECK(g4.weights[0] == doctest::Approx(0.5 * w4[0]).epsilon(1e-14));
    CHECK(g4.weights[1] == doctest::Approx(0.5 * w4[1]).epsilon(1e-14));

    for (int n = 1; n <= 10; ++n) {
        const GaussRule& g = gauss_rule(n);
        double wsum = 0.0;
        for (double w : g.weights) wsum += w;
        CHECK(wsum == doctest::Approx(1.0).epsilon(1e-14));
        // exact for degree 2n-1
        for (int d = 0; d <= 2 * n - 1; ++d) {
            double s = 0.0;
            for (size_t i = 0; i < g.nodes.size(); ++i)
                s += g.weights[i] * std::pow(g.nodes[i], d);
            CHECK(s == doctest::Approx(1.0 / (d + 1)).epsilon(1e-13));
        }
    }
}

TEST_CASE("triangle rules integrate monomials exactly up to their degree") {
    for (int degree : {1, 2, 3, 4, 5, 6, 7, 8, 10, 12}) {
        const TriangleRule& rule = triangle_rule(degree);
        REQUIRE(rule.degree >= degree);
        double wsum = 0.0;
        for (const QuadPoint& q : rule.points) {
            wsum += q.w;
            CHECK(q.w > 0.0);
            CHECK(q.x > 0.0);
            CHECK(q.y > 0.0);
            CHECK(q.x + q.y < 1.0);  // strictly interior
        }
        CHECK(wsum == doctest::Approx(0.5).epsilon(1e-14));
        for (int a = 0; a + 0 <= degree; ++a)
            for (int b = 0; a + b <= degree; ++b)
                CHECK(apply_rule(rule, a, b) ==
                      doctest::Approx(monomial_exact(a, b)).epsilon(1e-13));
    }
}

TEST_CASE("oracle quadrature agrees with closed forms") {
    const Vec2 a{0, 0}, b{1, 0}, c{0, 1};
    CHECK(oracle::integrate_triangle(a, b, c, [](Vec2) { return 1.0; }) ==
          doctest::Approx(0.5).epsilon(1e-15));
    CHECK(oracle::integrate_triangle(a, b, c, [](Vec2 p) { return p.x * p.y; }) ==
          doctest::Approx(1.0 / 24.0).epsilon(1e-14));
    // shifted/scaled triangle
    const Vec2 d{0.5, 0.25}, e{0.75, 0.3}, f{0.6, 0.9};
    const double area = triangle_area(d, e, f);
    CHECK(oracle::integrate_triangle(d, e, f, [](Vec2) { return 1.0; }) ==
          doctest::Approx(area).epsilon(1e-14));
    CHECK(oracle::integrate_segment({0, 0}, {2, 0}, [](Vec2 p) { return p.x * p.x; }) ==
          doctest::Approx(8.0 / 3.0).epsilon(1e-14));
}
