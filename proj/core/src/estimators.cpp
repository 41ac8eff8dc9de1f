#include "goafem/estimators.hpp"

#include <cmath>

#include "goafem/assembly.hpp"
#include "goafem/quadrature.hpp"

namespace goafem {

double IndicatorField::eta_total_sq() const {
    double s = 0.0;
    for (double v : eta_sq) s += v;
    return s;
}

double IndicatorField::zeta_total_sq() const {
    double s = 0.0;
    for (double v : zeta_sq) s += v;
    return s;
}

double IndicatorField::eta() const { return std::sqrt(eta_total_sq()); }
double IndicatorField::zeta() const { return std::sqrt(zeta_total_sq()); }

namespace {

constexpr int kEdgePoints = 4;  // degree-7 Gauss on each edge

struct ResidualData {
    const CoefficientSet* coeffs;
    const ScalarField* load_scalar;   // f resp. g
    const VectorField* load_vector;   // fvec resp. gvec
    const ScalarField* load_div;      // div fvec resp. div gvec
    double convection_sign;           // +1 primal, -1 dual
    bool dual_reaction;               // use (c - div b) instead of c
};

std::vector<double> residual_indicators(const FeSpace& space, std::span<const double> v_h,
                                        const ResidualData& data) {
    const Mesh& mesh = space.mesh();
    const int nt = mesh.n_triangles();
    const FeFunction fe(space, v_h);
    const TriangleRule& rule = triangle_rule(error_degree(space.degree()));

    std::vector<double> ind(nt, 0.0);
    std::vector<double> diam(nt);
    std::vector<FieldCtx> ctx(nt);
    for (int t = 0; t < nt; ++t) {
        diam[t] = element_diameter(mesh, t);
        ctx[t] = {t, mesh.centroid(t)};
    }

    // volume residual
    for (int t = 0; t < nt; ++t) {
        const auto c = mesh.coords(t);
        const AffineMap map(c[0], c[1], c[2]);
        const Mat2 hess = fe.hessian(t);
        double vol = 0.0;
        for (const QuadPoint& q : rule.points) {
            const Vec2 ref{q.x, q.y};
            const Vec2 x = map.to_physical(ref);
            const Mat2 a = data.coeffs->A(ctx[t], x);
            const Vec2 grad = fe.gradient(t, ref);
            const double val = fe.value(t, ref);
            double react = data.coeffs->c(ctx[t], x);
            if (data.dual_reaction) react -= data.coeffs->div_b(ctx[t], x);
            const double r = -(contract(a, hess) + (*data.load_div)(ctx[t], x)) +
                             data.convection_sign * dot(data.coeffs->b(ctx[t], x), grad) +
                             react * val - (*data.load_scalar)(ctx[t], x);
            vol += q.w * map.det_jac * r * r;
        }
        ind[t] = diam[t] * diam[t] * vol;
    }

    // normal-flux jumps over interior edges; full weight to both neighbours
    const GaussRule& edge_rule = gauss_rule(kEdgePoints);
    for (const Mesh::Edge& e : mesh.edges()) {
        if (e.tri1 < 0) continue;
        const Vec2 pa{mesh.vertex(e.a).x, mesh.vertex(e.a).y};
        const Vec2 pb{mesh.vertex(e.b).x, mesh.vertex(e.b).y};
        const Vec2 tangent = pb - pa;
        const double len = norm(tangent);
        const Vec2 n{tangent.y / len, -tangent.x / len};  // fixed orientation

        double jump_sq = 0.0;
        for (int q = 0; q < kEdgePoints; ++q) {
            const Vec2 x = pa + edge_rule.nodes[q] * tangent;
            auto flux = [&](int t) {
                const Mat2 a = data.coeffs->A(ctx[t], x);
                return a * fe.gradient_at(t, x) + (*data.load_vector)(ctx[t], x);
            };
            const double j = dot(flux(e.tri0) - flux(e.tri1), n);
            jump_sq += edge_rule.weights[q] * j * j;
        }
        jump_sq *= len;
        ind[e.tri0] += diam[e.tri0] * jump_sq;
        ind[e.tri1] += diam[e.tri1] * jump_sq;
    }
    return ind;
}

}  // namespace

std::vector<double> eta_indicators(const FeSpace& space, std::span<const double> u_h,
                                   const CoefficientSet& coeffs, const LoadSet& loads) {
    ResidualData data{&coeffs, &loads.f, &loads.fvec, &loads.div_fvec, +1.0, false};
    return residual_indicators(space, u_h, data);
}

std::vector<double> zeta_indicators(const FeSpace& space, std::span<const double> z_h,
                                    const CoefficientSet& coeffs, const DualLoad& dual) {
    ResidualData data{&coeffs, &dual.g, &dual.gvec, &dual.div_gvec, -1.0, true};
    return residual_indicators(space, z_h, data);
}

}  // namespace goafem
