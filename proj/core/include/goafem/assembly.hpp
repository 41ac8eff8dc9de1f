#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "goafem/fe_space.hpp"
#include "goafem/fields.hpp"
#include "goafem/quadrature.hpp"
#include "goafem/sparse.hpp"

namespace goafem {

/// Dense element matrix, row = test index i, column = trial index j:
/// m[i][j] = a(phi_j, phi_i) over the element.
struct ElementMatrix {
    int n = 0;
    std::array<double, 36> m{};
    double& at(int i, int j) { return m[i * n + j]; }
    double at(int i, int j) const { return m[i * n + j]; }
};

/// Local bilinear form on one triangle. Throws std::invalid_argument when
/// A fails the positive-definiteness floor at a quadrature node.
ElementMatrix element_matrix(const std::array<Vec2, 3>& coords, const FieldCtx& ctx, int degree,
                             const CoefficientSet& coeffs, const TriangleRule& rule);

/// Global matrix over all dofs; Dirichlet rows/columns are not eliminated.
/// The quadrature rule is exact for polynomial degree 2p+2.
SparseMatrix assemble_bilinear(const FeSpace& space, const CoefficientSet& coeffs);

/// r[i] = int f phi_i - int fvec . grad phi_i.
std::vector<double> assemble_primal_rhs(const FeSpace& space, const LoadSet& loads);

/// Same functional form with the dual data (g, gvec).
std::vector<double> assemble_dual_rhs(const FeSpace& space, const DualLoad& dual);

/// Energy norm sqrt(int A grad(u - u_h) . grad(u - u_h)) against a
/// closed-form gradient, with quadrature exact for degree 2p+4.
double energy_norm_error(const FeSpace& space, std::span<const double> u_h,
                         const CoefficientSet& coeffs,
                         const std::function<Vec2(Vec2)>& exact_gradient);

/// Quadrature degrees used throughout.
inline int assembly_degree(int p) { return 2 * p + 2; }
inline int error_degree(int p) { return 2 * p + 4; }

}  // namespace goafem
