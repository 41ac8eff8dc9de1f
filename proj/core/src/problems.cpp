#include "goafem/problems.hpp"

#include <cmath>
#include <stdexcept>

#include "goafem/assembly.hpp"
#include "goafem/quadrature.hpp"

namespace goafem {

namespace regions {

bool in_u1(Vec2 p) { return p.x > 0.25 && p.x < 0.75 && p.y > 0.25 && p.y < 0.75; }
bool in_u2(Vec2 p) { return p.x > 0.5 && p.x < 1.0 && p.y > 0.0 && p.y < 0.5; }
bool in_u3(Vec2 p) { return p.x - p.y >= 0.25; }

}  // namespace regions

namespace {

constexpr double kRegionTol = 1e-12;

bool u1_closure(Vec2 p) {
    return p.x >= 0.25 - kRegionTol && p.x <= 0.75 + kRegionTol && p.y >= 0.25 - kRegionTol &&
           p.y <= 0.75 + kRegionTol;
}
bool u1_strict(Vec2 p) {
    return p.x > 0.25 + kRegionTol && p.x < 0.75 - kRegionTol && p.y > 0.25 + kRegionTol &&
           p.y < 0.75 - kRegionTol;
}
bool u2_closure(Vec2 p) {
    return p.x >= 0.5 - kRegionTol && p.y <= 0.5 + kRegionTol && p.x <= 1.0 + kRegionTol &&
           p.y >= -kRegionTol;
}
bool u2_strict(Vec2 p) {
    return p.x > 0.5 + kRegionTol && p.y < 0.5 - kRegionTol && p.x < 1.0 - kRegionTol &&
           p.y > kRegionTol;
}
bool u3_closure(Vec2 p) { return p.x - p.y >= 0.25 - kRegionTol; }
bool u3_strict(Vec2 p) { return p.x - p.y > 0.25 + kRegionTol; }

bool resolved(const Mesh& mesh, int t, bool (*closure)(Vec2), bool (*strict)(Vec2)) {
    const auto c = mesh.coords(t);
    bool all_closure = true, any_strict = false;
    for (const Vec2& p : c) {
        all_closure = all_closure && closure(p);
        any_strict = any_strict || strict(p);
    }
    return all_closure || !any_strict;
}

/// Piecewise-linear nodal interpolant on the criss-cross n x n grid; used
/// for the force cutoff. Gradient lookups classify by the evaluation
/// element's centroid, which never sits on a grid line.
class CrissCrossP1 {
public:
    CrissCrossP1(int n, std::function<bool(Vec2)> node_predicate) : n_(n) {
        values_.resize(static_cast<size_t>(n + 1) * (n + 1));
        for (int j = 0; j <= n; ++j)
            for (int i = 0; i <= n; ++i)
                values_[idx(i, j)] =
                    node_predicate({static_cast<double>(i) / n, static_cast<double>(j) / n}) ? 1.0
                                                                                             : 0.0;
    }

    Vec2 gradient(Vec2 p) const {
        const auto [i, j, lower] = locate(p);
        const double z00 = values_[idx(i, j)];
        const double z10 = values_[idx(i + 1, j)];
        const double z01 = values_[idx(i, j + 1)];
        const double z11 = values_[idx(i + 1, j + 1)];
        if (lower) return {n_ * (z10 - z00), n_ * (z11 - z10)};
        return {n_ * (z11 - z01), n_ * (z01 - z00)};
    }

    double value(Vec2 p) const {
        const auto [i, j, lower] = locate(p);
        const double x0 = static_cast<double>(i) / n_, y0 = static_cast<double>(j) / n_;
        const Vec2 g = gradient(p);
        return values_[idx(i, j)] + g.x * (p.x - x0) + g.y * (p.y - y0);
    }

private:
    size_t idx(int i, int j) const { return static_cast<size_t>(j) * (n_ + 1) + i; }

    std::tuple<int, int, bool> locate(Vec2 p) const {
        int i = std::min(n_ - 1, std::max(0, static_cast<int>(std::floor(p.x * n_))));
        int j = std::min(n_ - 1, std::max(0, static_cast<int>(std::floor(p.y * n_))));
        const double fx = p.x * n_ - i, fy = p.y * n_ - j;
        return {i, j, fx >= fy};
    }

    int n_;
    std::vector<double> values_;
};

double integrate(const FeSpace& space,
                 const std::function<double(const FieldCtx&, Vec2, const FeFunction&)>& integrand,
                 std::span<const double> w) {
    const Mesh& mesh = space.mesh();
    const TriangleRule& rule = triangle_rule(error_degree(space.degree()));
    const FeFunction fe(space, w);
    double sum = 0.0;
    for (int t = 0; t < mesh.n_triangles(); ++t) {
        const auto c = mesh.coords(t);
        const AffineMap map(c[0], c[1], c[2]);
        const FieldCtx ctx{t, mesh.centroid(t)};
        for (const QuadPoint& q : rule.points) {
            const Vec2 x = map.to_physical({q.x, q.y});
            sum += q.w * map.det_jac * integrand(ctx, x, fe);
        }
    }
    return sum;
}

struct DualCapture {
    const FeSpace* space;
    std::vector<double> w;
};

}  // namespace

bool regions_resolved(const Mesh& mesh) {
    for (int t = 0; t < mesh.n_triangles(); ++t) {
        if (!resolved(mesh, t, u1_closure, u1_strict)) return false;
        if (!resolved(mesh, t, u2_closure, u2_strict)) return false;
        if (!resolved(mesh, t, u3_closure, u3_strict)) return false;
    }
    return true;
}

BenchmarkProblem weighted_l2_problem() {
    BenchmarkProblem p;
    p.name = "weighted_l2";
    p.recommended_n = 8;
    p.loads.f = [](const FieldCtx&, Vec2 x) {
        return 2.0 * x.x * (1.0 - x.x) + 2.0 * x.y * (1.0 - x.y);
    };
    auto lambda = [](const FieldCtx& ctx) { return regions::in_u1(ctx.centroid) ? 1.0 : 0.0; };

    p.goal.variant = "weighted_l2";
    p.goal.exact_goal = 41209.0 / 58982400.0;
    p.goal.dual_rhs = [lambda](const FeSpace& space, std::span<const double> w) {
        auto cap = std::make_shared<DualCapture>(
            DualCapture{&space, std::vector<double>(w.begin(), w.end())});
        DualLoad dual;
        dual.g = [cap, lambda](const FieldCtx& ctx, Vec2 x) {
            const FeFunction fe(*cap->space, cap->w);
            return 2.0 * lambda(ctx) * fe.value_at(ctx.elem, x);
        };
        return dual;
    };
    p.goal.evaluate = [lambda](const FeSpace& space, std::span<const double> w) {
        return integrate(space,
                         [lambda](const FieldCtx& ctx, Vec2 x, const FeFunction& fe) {
                             const double v = fe.value_at(ctx.elem, x);
                             return lambda(ctx) * v * v;
                         },
                         w);
    };

    p.exact_u = [](Vec2 x) { return x.x * x.y * (1.0 - x.x) * (1.0 - x.y); };
    p.exact_grad_u = [](Vec2 x) {
        return Vec2{x.y * (1.0 - x.y) * (1.0 - 2.0 * x.x), x.x * (1.0 - x.x) * (1.0 - 2.0 * x.y)};
    };
    return p;
}

BenchmarkProblem convection_problem() {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    BenchmarkProblem p;
    p.name = "convection";
    p.recommended_n = 8;
    p.loads.fvec = [inv_sqrt2](const FieldCtx& ctx, Vec2) {
        return regions::in_u3(ctx.centroid) ? Vec2{-inv_sqrt2, inv_sqrt2} : Vec2{0.0, 0.0};
    };
    auto lambda = [inv_sqrt2](const FieldCtx& ctx) {
        const double sigma = regions::in_u2(ctx.centroid) ? 1.0 : -1.0;
        return Vec2{-sigma * inv_sqrt2, sigma * inv_sqrt2};
    };

    p.goal.variant = "convection";
    p.goal.dual_rhs = [lambda](const FeSpace& space, std::span<const double> w) {
        auto cap = std::make_shared<DualCapture>(
            DualCapture{&space, std::vector<double>(w.begin(), w.end())});
        DualLoad dual;
        dual.g = [cap, lambda](const FieldCtx& ctx, Vec2 x) {
            const FeFunction fe(*cap->space, cap->w);
            return dot(lambda(ctx), fe.gradient_at(ctx.elem, x));
        };
        dual.gvec = [cap, lambda](const FieldCtx& ctx, Vec2 x) {
            const FeFunction fe(*cap->space, cap->w);
            return -fe.value_at(ctx.elem, x) * lambda(ctx);
        };
        dual.div_gvec = [cap, lambda](const FieldCtx& ctx, Vec2 x) {
            const FeFunction fe(*cap->space, cap->w);
            return -dot(lambda(ctx), fe.gradient_at(ctx.elem, x));
        };
        return dual;
    };
    p.goal.evaluate = [lambda](const FeSpace& space, std::span<const double> w) {
        return integrate(space,
                         [lambda](const FieldCtx& ctx, Vec2 x, const FeFunction& fe) {
                             return fe.value_at(ctx.elem, x) *
                                    dot(lambda(ctx), fe.gradient_at(ctx.elem, x));
                         },
                         w);
    };
    return p;
}

BenchmarkProblem force_problem(int n) {
    if (n < 4 || n % 4 != 0)
        throw std::invalid_argument(
            "force_problem: n must be a positive multiple of 4 so that the cutoff falls off "
            "within one element layer around U1");
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const Vec2 chi{inv_sqrt2, inv_sqrt2};
    auto cutoff = std::make_shared<CrissCrossP1>(n, u1_closure);

    BenchmarkProblem p;
    p.name = "force";
    p.recommended_n = n;
    p.loads.f = constant_scalar(1.0);

    p.goal.variant = "force";
    p.goal.compact_operator = false;
    p.goal.dual_rhs = [cutoff, chi](const FeSpace& space, std::span<const double> w) {
        auto cap = std::make_shared<DualCapture>(
            DualCapture{&space, std::vector<double>(w.begin(), w.end())});
        DualLoad dual;
        dual.gvec = [cap, cutoff, chi](const FieldCtx& ctx, Vec2 x) {
            const FeFunction fe(*cap->space, cap->w);
            const Vec2 gp = cutoff->gradient(ctx.centroid);
            const Vec2 gw = fe.gradient_at(ctx.elem, x);
            return dot(gp, chi) * gw - dot(gp, gw) * chi - dot(chi, gw) * gp;
        };
        dual.div_gvec = [cap, cutoff, chi](const FieldCtx& ctx, Vec2 x) {
            const FeFunction fe(*cap->space, cap->w);
            const Vec2 gp = cutoff->gradient(ctx.centroid);
            const Mat2 hess = fe.hessian(ctx.elem);
            const double laplace = hess.a11 + hess.a22;
            return dot(gp, chi) * laplace - 2.0 * dot(chi, hess * gp);
        };
        return dual;
    };
    p.goal.evaluate = [cutoff, chi](const FeSpace& space, std::span<const double> w) {
        return integrate(space,
                         [cutoff, chi](const FieldCtx& ctx, Vec2 x, const FeFunction& fe) {
                             const Vec2 gp = cutoff->gradient(ctx.centroid);
                             const Vec2 gw = fe.gradient_at(ctx.elem, x);
                             return dot(gp, gw) * dot(chi, gw) -
                                    0.5 * dot(gw, gw) * dot(gp, chi);
                         },
                         w);
    };
    return p;
}

double evaluate_goal(const BenchmarkProblem& problem, const FeSpace& space,
                     std::span<const double> w_h) {
    return problem.goal.evaluate(space, w_h);
}

BenchmarkProblem problem_by_name(const std::string& name, int n) {
    if (name == "weighted_l2") return weighted_l2_problem();
    if (name == "convection") return convection_problem();
    if (name == "force") return force_problem(n);
    throw std::invalid_argument("unknown problem: " + name);
}

}  // namespace goafem
