#pragma once

#include <vector>

#include "goafem/geometry.hpp"

namespace goafem {

/// Quadrature node on the reference triangle {(0,0),(1,0),(0,1)}.
/// Weights sum to the reference area 1/2, so
///   int_T f = |det B| * sum_q w_q f(F(x_q)).
struct QuadPoint {
    double x, y, w;
};

struct TriangleRule {
    int degree = 0;
    std::vector<QuadPoint> points;
};

/// Symmetric interior rules for low degrees, collapsed tensor Gauss rules
/// beyond. All nodes lie strictly inside the triangle.
const TriangleRule& triangle_rule(int degree);

/// Gauss-Legendre rule on [0,1], weights sum to 1.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

const GaussRule& gauss_rule(int n_points);

}  // namespace goafem
