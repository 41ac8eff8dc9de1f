#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>

#include "goafem/fe_space.hpp"
#include "goafem/fields.hpp"

namespace goafem {

/// Quadratic goal functional G(w) = b(w,w) together with its linearization:
/// dual_rhs(space, w) produces the data of v -> b(v,w) + b(w,v), rebuilt
/// around the discrete function w. The returned DualLoad captures the space
/// and a copy of w; it stays valid while space and mesh are alive.
struct GoalDescriptor {
    std::string variant;
    std::function<DualLoad(const FeSpace&, std::span<const double>)> dual_rhs;
    std::function<double(const FeSpace&, std::span<const double>)> evaluate;
    std::optional<double> exact_goal;
    bool compact_operator = true;
};

struct BenchmarkProblem {
    std::string name;
    CoefficientSet coeffs;
    LoadSet loads;
    GoalDescriptor goal;
    int recommended_n = 8;
    std::optional<std::function<double(Vec2)>> exact_u;
    std::optional<std::function<Vec2(Vec2)>> exact_grad_u;
};

/// Weighted L2 goal G(u) = int_{U1} u^2 with U1 = (0.25,0.75)^2 on
/// -lap u = 2x(1-x) + 2y(1-y), exact u = xy(1-x)(1-y),
/// G(u) = 41209/58982400. Dual data g[w] = 2 lambda w, gvec = 0.
BenchmarkProblem weighted_l2_problem();

/// Convection goal G(u) = int u lambda . grad u with piecewise-constant
/// lambda (sign flip on U2) and piecewise-constant fvec on U3. Dual data
/// g[w] = lambda . grad w, gvec[w] = -w lambda.
BenchmarkProblem convection_problem();

/// Electrostatic-force goal via the Maxwell stress tensor with a P1
/// cutoff psi on the initial n x n mesh, 1 on closure(U1), falling to 0
/// within one element layer. The operator is not compact; rate guarantees
/// do not apply. Requires n divisible by 4.
BenchmarkProblem force_problem(int n = 8);

/// G(w_h) by per-element quadrature of the variant's integrand.
double evaluate_goal(const BenchmarkProblem& problem, const FeSpace& space,
                     std::span<const double> w_h);

BenchmarkProblem problem_by_name(const std::string& name, int n = 8);

/// True when every element of the mesh lies entirely inside or outside
/// each of U1, U2, U3.
bool regions_resolved(const Mesh& mesh);

namespace regions {
bool in_u1(Vec2 p);  // (0.25,0.75)^2
bool in_u2(Vec2 p);  // (0.5,1) x (0,0.5)
bool in_u3(Vec2 p);  // x - y >= 0.25
}  // namespace regions

}  // namespace goafem
