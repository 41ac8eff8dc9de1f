#pragma once

#include <functional>

#include "goafem/geometry.hpp"

namespace goafem {

/// Evaluation context for coefficient and load fields. Piecewise fields
/// whose discontinuities are resolved by the mesh classify the element by
/// its centroid instead of the (possibly ambiguous) evaluation point x.
struct FieldCtx {
    int elem = -1;
    Vec2 centroid;
};

using ScalarField = std::function<double(const FieldCtx&, Vec2)>;
using VectorField = std::function<Vec2(const FieldCtx&, Vec2)>;
using MatrixField = std::function<Mat2(const FieldCtx&, Vec2)>;

inline ScalarField constant_scalar(double v) {
    return [v](const FieldCtx&, Vec2) { return v; };
}
inline VectorField constant_vector(Vec2 v) {
    return [v](const FieldCtx&, Vec2) { return v; };
}
inline MatrixField constant_matrix(Mat2 m) {
    return [m](const FieldCtx&, Vec2) { return m; };
}
inline ScalarField zero_scalar() { return constant_scalar(0.0); }
inline VectorField zero_vector() { return constant_vector({0.0, 0.0}); }

/// PDE coefficients of  -div(A grad u) + b . grad u + c u. div_b is the
/// analytic divergence of b, needed by the strong form of the dual problem;
/// fields are elementwise constant on the initial mesh or globally smooth.
struct CoefficientSet {
    MatrixField A = constant_matrix(Mat2::identity());
    VectorField b = zero_vector();
    ScalarField c = zero_scalar();
    ScalarField div_b = zero_scalar();
    double ellipticity_eps = 1e-10;
};

/// Right-hand side data F(v) = int f v - int fvec . grad v. div_fvec is the
/// analytic elementwise divergence of fvec (zero for piecewise-constant
/// fvec), used by the volume term of the residual estimator.
struct LoadSet {
    ScalarField f = zero_scalar();
    VectorField fvec = zero_vector();
    ScalarField div_fvec = zero_scalar();
};

/// Dual right-hand side data, same structure as LoadSet:
/// b(v,w) + b(w,v) = int g v - int gvec . grad v.
struct DualLoad {
    ScalarField g = zero_scalar();
    VectorField gvec = zero_vector();
    ScalarField div_gvec = zero_scalar();
};

}  // namespace goafem
