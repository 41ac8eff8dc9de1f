#include <cmath>
#include <random>
#include <stdexcept>

#include <doctest.h>

#include "goafem/assembly.hpp"
#include "goafem/problems.hpp"
#include "oracle.hpp"

using namespace goafem;

namespace {

std::vector<double> random_vector(int n, unsigned seed, bool zero_boundary,
                                  const FeSpace& space) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i)
        v[i] = (zero_boundary && space.is_dirichlet(i)) ? 0.0 : uni(rng);
    return v;
}

double dot_vec(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

void check_polarization(const BenchmarkProblem& prob, int p, unsigned seed) {
    const Mesh mesh = refine_nvb(initial_mesh(prob.recommended_n), {3, 10, 17});
    const FeSpace space = build_space(mesh, p);
    const auto v = random_vector(space.n_dofs(), seed, true, space);
    const auto w = random_vector(space.n_dofs(), seed + 1, false, space);

    const double gv = prob.goal.evaluate(space, v);
    const double gw = prob.goal.evaluate(space, w);
    std::vector<double> vw(v.size());
    for (size_t i = 0; i < v.size(); ++i) vw[i] = v[i] + w[i];
    const double gvw = prob.goal.evaluate(space, vw);

    const DualLoad dual = prob.goal.dual_rhs(space, w);
    const auto rhs = assemble_dual_rhs(space, dual);
    CHECK(gvw - gv - gw == doctest::Approx(dot_vec(rhs, v)).epsilon(1e-12));
}

void check_dual_linearity(const BenchmarkProblem& prob, int p, unsigned seed) {
    const Mesh mesh = refine_nvb(initial_mesh(prob.recommended_n), {0, 7});
    const FeSpace space = build_space(mesh, p);
    const auto w1 = random_vector(space.n_dofs(), seed, false, space);
    const auto w2 = random_vector(space.n_dofs(), seed + 9, false, space);
    std::vector<double> w12(w1.size());
    for (size_t i = 0; i < w1.size(); ++i) w12[i] = w1[i] + w2[i];

    const DualLoad d1 = prob.goal.dual_rhs(space, w1);
    const DualLoad d2 = prob.goal.dual_rhs(space, w2);
    const DualLoad d12 = prob.goal.dual_rhs(space, w12);

    std::mt19937 rng(seed + 33);
    std::uniform_real_distribution<double> bary(0.1, 0.4);
    for (int t = 0; t < mesh.n_triangles(); t += 5) {
        const auto c = mesh.coords(t);
        const Vec2 ref{bary(rng), bary(rng)};
        const Vec2 x = AffineMap(c[0], c[1], c[2]).to_physical(ref);
        const FieldCtx ctx{t, mesh.centroid(t)};
        CHECK(d12.g(ctx, x) == doctest::Approx(d1.g(ctx, x) + d2.g(ctx, x)).epsilon(1e-13));
        const Vec2 g12 = d12.gvec(ctx, x);
        const Vec2 gs = d1.gvec(ctx, x) + d2.gvec(ctx, x);
        CHECK(g12.x == doctest::Approx(gs.x).epsilon(1e-13));
        CHECK(g12.y == doctest::Approx(gs.y).epsilon(1e-13));
    }
}

}  // namespace

TEST_CASE("weighted L2 problem definition") {
    const BenchmarkProblem prob = weighted_l2_problem();
    REQUIRE(prob.goal.exact_goal.has_value());
    CHECK(*prob.goal.exact_goal == doctest::Approx(6.986667e-4).epsilon(1e-6));
    CHECK(*prob.goal.exact_goal == 41209.0 / 58982400.0);

    SUBCASE("load is consistent with the stated exact solution") {
        // -lap u = f for u = xy(1-x)(1-y)
        std::mt19937 rng(8);
        std::uniform_real_distribution<double> uni(0.05, 0.95);
        const FieldCtx ctx{0, {0.5, 0.5}};
        for (int k = 0; k < 25; ++k) {
            const Vec2 x{uni(rng), uni(rng)};
            const double lap =
                -2.0 * x.y * (1.0 - x.y) - 2.0 * x.x * (1.0 - x.x);
            CHECK(prob.loads.f(ctx, x) == doctest::Approx(-lap).epsilon(1e-14));
        }
    }

    SUBCASE("quadrature of the exact integrand matches the closed form") {
        const Mesh mesh = initial_mesh(8);
        auto u = *prob.exact_u;
        double integral = 0.0;
        for (int t = 0; t < mesh.n_triangles(); ++t) {
            if (!regions::in_u1(mesh.centroid(t))) continue;
            const auto c = mesh.coords(t);
            integral += oracle::integrate_triangle(c[0], c[1], c[2], [&](Vec2 x) {
                const double v = u(x);
                return v * v;
            });
        }
        CHECK(integral == doctest::Approx(41209.0 / 58982400.0).epsilon(1e-14));
    }

    SUBCASE("goal of zero is zero") {
        const Mesh mesh = initial_mesh(4);
        const FeSpace space = build_space(mesh, 1);
        const std::vector<double> zero(space.n_dofs(), 0.0);
        CHECK(evaluate_goal(prob, space, zero) == 0.0);
    }
}

TEST_CASE("convection problem definition") {
    const BenchmarkProblem prob = convection_problem();
    CHECK_FALSE(prob.goal.exact_goal.has_value());
    CHECK(prob.goal.compact_operator);

    const Mesh mesh = initial_mesh(8);
    const FeSpace space = build_space(mesh, 1);

    SUBCASE("goal of zero is zero") {
        const std::vector<double> zero(space.n_dofs(), 0.0);
        CHECK(evaluate_goal(prob, space, zero) == 0.0);
    }

    SUBCASE("g equals lambda . grad w, checked on a U2 element") {
        // w = x has gradient (1,0); on U2 sigma = +1, so g = -1/sqrt(2)
        std::vector<double> w(space.n_dofs());
        for (int d = 0; d < space.n_dofs(); ++d) w[d] = space.dof_coord(d).x;
        const DualLoad dual = prob.goal.dual_rhs(space, w);
        int u2_elem = -1, outside_elem = -1;
        for (int t = 0; t < mesh.n_triangles(); ++t) {
            if (regions::in_u2(mesh.centroid(t))) u2_elem = t;
            if (regions::in_u1(mesh.centroid(t))) outside_elem = t;
        }
        REQUIRE(u2_elem >= 0);
        REQUIRE(outside_elem >= 0);
        const FieldCtx ctx{u2_elem, mesh.centroid(u2_elem)};
        CHECK(dual.g(ctx, mesh.centroid(u2_elem)) ==
              doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-14));
        // outside U2 sigma = -1 flips the sign
        const FieldCtx ctx2{outside_elem, mesh.centroid(outside_elem)};
        CHECK(dual.g(ctx2, mesh.centroid(outside_elem)) ==
              doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
    }

    SUBCASE("fvec is supported exactly on U3") {
        const FieldCtx inside{0, {0.75, 0.25}};
        const FieldCtx outside{0, {0.25, 0.75}};
        CHECK(prob.loads.fvec(inside, inside.centroid).x ==
              doctest::Approx(-1.0 / std::sqrt(2.0)));
        CHECK(prob.loads.fvec(outside, outside.centroid).x == 0.0);
    }
}

TEST_CASE("force problem definition") {
    CHECK_THROWS_AS(force_problem(2), std::invalid_argument);
    CHECK_THROWS_AS(force_problem(6), std::invalid_argument);
    const BenchmarkProblem prob = force_problem(8);
    CHECK_FALSE(prob.goal.compact_operator);

    const Mesh mesh = initial_mesh(8);
    const FeSpace space = build_space(mesh, 1);

    SUBCASE("dual load of w = 0 vanishes") {
        const std::vector<double> zero(space.n_dofs(), 0.0);
        const DualLoad dual = prob.goal.dual_rhs(space, zero);
        for (int t = 0; t < mesh.n_triangles(); t += 7) {
            const FieldCtx ctx{t, mesh.centroid(t)};
            const Vec2 g = dual.gvec(ctx, mesh.centroid(t));
            CHECK(g.x == 0.0);
            CHECK(g.y == 0.0);
        }
        CHECK(evaluate_goal(prob, space, zero) == 0.0);
    }

    SUBCASE("cutoff gradient vanishes inside U1 and far outside") {
        const auto w = random_vector(space.n_dofs(), 70, false, space);
        const DualLoad dual = prob.goal.dual_rhs(space, w);
        for (int t = 0; t < mesh.n_triangles(); ++t) {
            const Vec2 c = mesh.centroid(t);
            const bool inside = c.x > 0.3 && c.x < 0.7 && c.y > 0.3 && c.y < 0.7;
            const bool far_outside = c.x < 0.1 || c.x > 0.9 || c.y < 0.1 || c.y > 0.9;
            if (!inside && !far_outside) continue;
            const FieldCtx ctx{t, c};
            const Vec2 g = dual.gvec(ctx, c);
            CHECK(g.x == 0.0);
            CHECK(g.y == 0.0);
        }
    }

    SUBCASE("gvec = -grad psi when grad w = chi on a layer element") {
        const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
        // w = chi . x
        std::vector<double> w(space.n_dofs());
        for (int d = 0; d < space.n_dofs(); ++d) {
            const Vertex c = space.dof_coord(d);
            w[d] = inv_sqrt2 * (c.x + c.y);
        }
        const DualLoad dual = prob.goal.dual_rhs(space, w);
        // lower triangle of cell (i=1, j=3): psi rises from 0 at x=1/8 to
        // 1 at x=1/4, so grad psi = (8, 0)
        const int t = 2 * (3 * 8 + 1);
        const Vec2 c = mesh.centroid(t);
        REQUIRE(c.x > 0.125);
        REQUIRE(c.x < 0.25);
        const FieldCtx ctx{t, c};
        const Vec2 g = dual.gvec(ctx, c);
        CHECK(g.x == doctest::Approx(-8.0).epsilon(1e-13));
        CHECK(std::abs(g.y) < 1e-13);
    }
}

TEST_CASE("polarization identity ties the goal to its dual data") {
    check_polarization(weighted_l2_problem(), 1, 1000);
    check_polarization(weighted_l2_problem(), 2, 2000);
    check_polarization(convection_problem(), 1, 3000);
    check_polarization(convection_problem(), 2, 4000);
    check_polarization(force_problem(8), 1, 5000);
    check_polarization(force_problem(8), 2, 6000);
}

TEST_CASE("dual data is linear in the linearization point") {
    check_dual_linearity(weighted_l2_problem(), 1, 111);
    check_dual_linearity(convection_problem(), 2, 222);
    check_dual_linearity(force_problem(8), 2, 333);
}

TEST_CASE("region resolution is preserved under refinement") {
    Mesh mesh = initial_mesh(8);
    CHECK(regions_resolved(mesh));
    std::mt19937 rng(12);
    for (int level = 0; level < 4; ++level) {
        std::vector<int> marked;
        for (int t = 0; t < mesh.n_triangles(); ++t)
            if (rng() % 5 == 0) marked.push_back(t);
        mesh = refine_nvb(mesh, marked);
        CHECK(regions_resolved(mesh));
    }
    // a coarse grid cannot resolve U1
    CHECK_FALSE(regions_resolved(initial_mesh(2)));
}

TEST_CASE("problem lookup by name") {
    CHECK(problem_by_name("weighted_l2").name == "weighted_l2");
    CHECK(problem_by_name("convection").name == "convection");
    CHECK(problem_by_name("force", 8).name == "force");
    CHECK_THROWS_AS(problem_by_name("bogus"), std::invalid_argument);
}
