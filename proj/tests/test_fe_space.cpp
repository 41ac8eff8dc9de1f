#include <stdexcept>
#include <cmath>
#include <random>

#include <doctest.h>

#include "goafem/fe_space.hpp"

using namespace goafem;

TEST_CASE("dof counts and dirichlet masks") {
    const Mesh square = initial_mesh(1);

    SUBCASE("p out of range") {
        CHECK_THROWS_AS(build_space(square, 0), std::invalid_argument);
        CHECK_THROWS_AS(build_space(square, 3), std::invalid_argument);
    }

    SUBCASE("p1 on the 2-triangle square: all dofs on the boundary") {
        const FeSpace s = build_space(square, 1);
        CHECK(s.n_dofs() == 4);
        CHECK(s.n_free() == 0);
    }

    SUBCASE("p2 on the 2-triangle square: one free dof at the diagonal midpoint") {
        const FeSpace s = build_space(square, 2);
        CHECK(s.n_dofs() == 9);  // 4 vertices + 5 edges
        CHECK(s.n_free() == 1);
        for (int d = 0; d < s.n_dofs(); ++d) {
            if (!s.is_dirichlet(d)) {
                CHECK(s.dof_coord(d).x == doctest::Approx(0.5));
                CHECK(s.dof_coord(d).y == doctest::Approx(0.5));
            }
        }
    }

    SUBCASE("p1 on the 8x8 grid") {
        const FeSpace s = build_space(initial_mesh(8), 1);
        CHECK(s.n_dofs() == 81);
        CHECK(s.n_free() == 49);
    }
}

TEST_CASE("shape functions form a partition of unity and a nodal basis") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> uni(0.05, 0.45);
    for (int p : {1, 2}) {
        const int nd = p == 1 ? 3 : 6;
        for (int trial = 0; trial < 20; ++trial) {
            const Vec2 ref{uni(rng), uni(rng)};
            double vals[6];
            Vec2 grads[6];
            shape_values(p, ref, {vals, static_cast<size_t>(nd)});
            shape_ref_gradients(p, ref, {grads, static_cast<size_t>(nd)});
            double vsum = 0.0;
            Vec2 gsum{0, 0};
            for (int i = 0; i < nd; ++i) {
                vsum += vals[i];
                gsum = gsum + grads[i];
            }
            CHECK(vsum == doctest::Approx(1.0).epsilon(1e-14));
            CHECK(std::abs(gsum.x) < 1e-13);
            CHECK(std::abs(gsum.y) < 1e-13);
        }
        // Kronecker property at the nodes
        const Vec2 nodes[6] = {{0, 0}, {1, 0}, {0, 1}, {0.5, 0}, {0.5, 0.5}, {0, 0.5}};
        for (int j = 0; j < nd; ++j) {
            double vals[6];
            shape_values(p, nodes[j], {vals, static_cast<size_t>(nd)});
            for (int i = 0; i < nd; ++i)
                CHECK(vals[i] == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-14));
        }
    }
}

TEST_CASE("fe function evaluation reproduces polynomials") {
    const Mesh mesh = refine_nvb(initial_mesh(2), {1, 4});
    for (int p : {1, 2}) {
        const FeSpace space = build_space(mesh, p);
        // interpolated function, quadratic only for p=2
        auto q = [p](Vec2 v) {
            return p == 1 ? 0.25 + 0.5 * v.x - 1.5 * v.y
                          : 0.25 + 0.5 * v.x - 1.5 * v.y + v.x * v.y - 0.75 * v.x * v.x;
        };
        auto dq = [p](Vec2 v) {
            return p == 1 ? Vec2{0.5, -1.5} : Vec2{0.5 + v.y - 1.5 * v.x, -1.5 + v.x};
        };
        std::vector<double> coeffs(space.n_dofs());
        for (int d = 0; d < space.n_dofs(); ++d) {
            const Vertex c = space.dof_coord(d);
            coeffs[d] = q({c.x, c.y});
        }
        const FeFunction f(space, coeffs);
        std::mt19937 rng(11);
        std::uniform_real_distribution<double> uni(0.1, 0.4);
        for (int t = 0; t < mesh.n_triangles(); t += 3) {
            const Vec2 ref{uni(rng), uni(rng)};
            const auto c = mesh.coords(t);
            const Vec2 x = AffineMap(c[0], c[1], c[2]).to_physical(ref);
            CHECK(f.value(t, ref) == doctest::Approx(q(x)).epsilon(1e-13));
            CHECK(f.gradient(t, ref).x == doctest::Approx(dq(x).x).epsilon(1e-12));
            CHECK(f.gradient(t, ref).y == doctest::Approx(dq(x).y).epsilon(1e-12));
            CHECK(f.value_at(t, x) == doctest::Approx(q(x)).epsilon(1e-13));
            if (p == 2) {
                const Mat2 h = f.hessian(t);
                CHECK(h.a11 == doctest::Approx(-1.5).epsilon(1e-12));
                CHECK(h.a12 == doctest::Approx(1.0).epsilon(1e-12));
                CHECK(h.a21 == doctest::Approx(1.0).epsilon(1e-12));
                CHECK(std::abs(h.a22) < 1e-12);
            }
        }
    }
}

TEST_CASE("prolongation is exact on nested meshes") {
    const Mesh coarse = initial_mesh(2);
    const Mesh fine = refine_nvb(coarse, {0, 2, 5});
    for (int p : {1, 2}) {
        const FeSpace cs = build_space(coarse, p);
        const FeSpace fs = build_space(fine, p);
        std::mt19937 rng(5);
        std::uniform_real_distribution<double> uni(-1.0, 1.0);
        std::vector<double> cv(cs.n_dofs());
        for (double& v : cv) v = uni(rng);
        const std::vector<double> fv = prolong(cs, cv, fs);

        const FeFunction fc(cs, cv);
        const FeFunction ff(fs, fv);
        for (int t = 0; t < fine.n_triangles(); ++t) {
            const Vec2 x = fine.centroid(t);
            CHECK(ff.value_at(t, x) ==
                  doctest::Approx(fc.value_at(fine.parents()[t], x)).epsilon(1e-12));
        }
    }
}
