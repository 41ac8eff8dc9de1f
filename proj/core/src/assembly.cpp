#include "goafem/assembly.hpp"

#include <cmath>
#include <stdexcept>

namespace goafem {

ElementMatrix element_matrix(const std::array<Vec2, 3>& coords, const FieldCtx& ctx, int degree,
                             const CoefficientSet& coeffs, const TriangleRule& rule) {
    ElementMatrix em;
    em.n = degree == 1 ? 3 : 6;
    const AffineMap map(coords[0], coords[1], coords[2]);

    double vals[6];
    Vec2 ref_grads[6], grads[6];
    for (const QuadPoint& q : rule.points) {
        const Vec2 ref{q.x, q.y};
        const Vec2 x = map.to_physical(ref);
        shape_values(degree, ref, {vals, static_cast<size_t>(em.n)});
        shape_ref_gradients(degree, ref, {ref_grads, static_cast<size_t>(em.n)});
        for (int i = 0; i < em.n; ++i) grads[i] = map.inv_t * ref_grads[i];

        const Mat2 a = coeffs.A(ctx, x);
        if (min_eigenvalue_sym(a) < coeffs.ellipticity_eps)
            throw std::invalid_argument(
                "element_matrix: coefficient matrix A not uniformly positive definite");
        const Vec2 b = coeffs.b(ctx, x);
        const double c = coeffs.c(ctx, x);
        const double w = q.w * map.det_jac;
        for (int j = 0; j < em.n; ++j) {
            const Vec2 a_grad_j = a * grads[j];
            const double conv_j = dot(b, grads[j]);
            for (int i = 0; i < em.n; ++i) {
                em.at(i, j) += w * (dot(a_grad_j, grads[i]) + conv_j * vals[i] +
                                    c * vals[j] * vals[i]);
            }
        }
    }
    return em;
}

SparseMatrix assemble_bilinear(const FeSpace& space, const CoefficientSet& coeffs) {
    const Mesh& mesh = space.mesh();
    const TriangleRule& rule = triangle_rule(assembly_degree(space.degree()));
    std::vector<SparseMatrix::Triplet> triplets;
    triplets.reserve(static_cast<size_t>(mesh.n_triangles()) * space.dofs_per_element() *
                     space.dofs_per_element());
    for (int t = 0; t < mesh.n_triangles(); ++t) {
        const FieldCtx ctx{t, mesh.centroid(t)};
        const ElementMatrix em = element_matrix(mesh.coords(t), ctx, space.degree(), coeffs, rule);
        for (int i = 0; i < em.n; ++i)
            for (int j = 0; j < em.n; ++j)
                triplets.push_back({space.element_dof(t, i), space.element_dof(t, j), em.at(i, j)});
    }
    return SparseMatrix::from_triplets(space.n_dofs(), space.n_dofs(), std::move(triplets));
}

namespace {

std::vector<double> assemble_functional(const FeSpace& space, const ScalarField& f,
                                        const VectorField& fvec) {
    const Mesh& mesh = space.mesh();
    const TriangleRule& rule = triangle_rule(assembly_degree(space.degree()));
    const int nd = space.dofs_per_element();
    std::vector<double> r(space.n_dofs(), 0.0);
    double vals[6];
    Vec2 ref_grads[6];
    for (int t = 0; t < mesh.n_triangles(); ++t) {
        const auto c = mesh.coords(t);
        const AffineMap map(c[0], c[1], c[2]);
        const FieldCtx ctx{t, mesh.centroid(t)};
        for (const QuadPoint& q : rule.points) {
            const Vec2 ref{q.x, q.y};
            const Vec2 x = map.to_physical(ref);
            shape_values(space.degree(), ref, {vals, static_cast<size_t>(nd)});
            shape_ref_gradients(space.degree(), ref, {ref_grads, static_cast<size_t>(nd)});
            const double fv = f(ctx, x);
            const Vec2 gv = fvec(ctx, x);
            const double w = q.w * map.det_jac;
            for (int i = 0; i < nd; ++i) {
                const Vec2 grad_i = map.inv_t * ref_grads[i];
                r[space.element_dof(t, i)] += w * (fv * vals[i] - dot(gv, grad_i));
            }
        }
    }
    return r;
}

}  // namespace

std::vector<double> assemble_primal_rhs(const FeSpace& space, const LoadSet& loads) {
    return assemble_functional(space, loads.f, loads.fvec);
}

std::vector<double> assemble_dual_rhs(const FeSpace& space, const DualLoad& dual) {
    return assemble_functional(space, dual.g, dual.gvec);
}

double energy_norm_error(const FeSpace& space, std::span<const double> u_h,
                         const CoefficientSet& coeffs,
                         const std::function<Vec2(Vec2)>& exact_gradient) {
    const Mesh& mesh = space.mesh();
    const TriangleRule& rule = triangle_rule(error_degree(space.degree()));
    const FeFunction fh(space, u_h);
    double sum = 0.0;
    for (int t = 0; t < mesh.n_triangles(); ++t) {
        const auto c = mesh.coords(t);
        const AffineMap map(c[0], c[1], c[2]);
        const FieldCtx ctx{t, mesh.centroid(t)};
        for (const QuadPoint& q : rule.points) {
            const Vec2 ref{q.x, q.y};
            const Vec2 x = map.to_physical(ref);
            const Vec2 e = exact_gradient(x) - fh.gradient(t, ref);
            sum += q.w * map.det_jac * dot(coeffs.A(ctx, x) * e, e);
        }
    }
    return std::sqrt(sum);
}

}  // namespace goafem
