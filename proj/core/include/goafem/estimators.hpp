#pragma once

#include <span>
#include <vector>

#include "goafem/fe_space.hpp"
#include "goafem/fields.hpp"

namespace goafem {

/// Per-element squared indicators for one mesh level.
struct IndicatorField {
    std::vector<double> eta_sq;
    std::vector<double> zeta_sq;

    double eta_total_sq() const;
    double zeta_total_sq() const;
    double eta() const;
    double zeta() const;
};

/// Residual indicator of the primal problem,
///   eta(T)^2 = h_T^2 ||-div(A grad v + fvec) + b.grad v + c v - f||_T^2
///            + h_T ||[(A grad v + fvec).n]||_{dT cap Omega}^2,
/// with h_T = diam(T). Each interior edge contributes at full weight to
/// both neighbours. The div term uses the elementwise-constant value of A
/// and the analytic div_fvec.
std::vector<double> eta_indicators(const FeSpace& space, std::span<const double> u_h,
                                   const CoefficientSet& coeffs, const LoadSet& loads);

/// Residual indicator of the linearized dual problem, whose strong form is
///   -div(A grad z + gvec) - b.grad z + (c - div b) z - g.
std::vector<double> zeta_indicators(const FeSpace& space, std::span<const double> z_h,
                                    const CoefficientSet& coeffs, const DualLoad& dual);

}  // namespace goafem
