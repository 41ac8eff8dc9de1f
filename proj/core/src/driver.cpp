#include "goafem/driver.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "goafem/assembly.hpp"
#include "goafem/sparse.hpp"

namespace goafem {

RecordQuantity quantity_from_string(const std::string& name) {
    if (name == "eta") return RecordQuantity::Eta;
    if (name == "zeta") return RecordQuantity::Zeta;
    if (name == "product") return RecordQuantity::Product;
    if (name == "combined") return RecordQuantity::Combined;
    if (name == "goal_error") return RecordQuantity::GoalError;
    throw std::invalid_argument("unknown quantity: " + name);
}

std::string to_string(RecordQuantity q) {
    switch (q) {
        case RecordQuantity::Eta: return "eta";
        case RecordQuantity::Zeta: return "zeta";
        case RecordQuantity::Product: return "product";
        case RecordQuantity::Combined: return "combined";
        case RecordQuantity::GoalError: return "goal_error";
    }
    return "?";
}

double record_quantity(const IterationRecord& rec, RecordQuantity q) {
    switch (q) {
        case RecordQuantity::Eta: return rec.eta;
        case RecordQuantity::Zeta: return rec.zeta;
        case RecordQuantity::Product: return rec.product;
        case RecordQuantity::Combined: return rec.combined;
        case RecordQuantity::GoalError:
            if (!rec.goal_error)
                throw std::invalid_argument("record has no goal_error (exact goal unknown)");
            return *rec.goal_error;
    }
    return 0.0;
}

RunResult run_goafem(const BenchmarkProblem& problem, const RunOptions& options) {
    if (!(options.theta > 0.0) || options.theta > 1.0)
        throw std::invalid_argument("run_goafem: theta must be in (0, 1]");
    if (options.p != 1 && options.p != 2)
        throw std::invalid_argument("run_goafem: p must be 1 or 2");

    const int n0 = options.initial_n > 0 ? options.initial_n : problem.recommended_n;
    Mesh mesh = initial_mesh(n0);
    for (int k = 0; k < options.extra_uniform; ++k) mesh = uniform_refine(mesh);
    mesh.validate_unit_square();
    if (!regions_resolved(mesh))
        throw std::invalid_argument("run_goafem: initial mesh does not resolve U1/U2/U3");

    RunResult result;
    for (int level = 0;; ++level) {
        FeSpace space = build_space(mesh, options.p);

        std::vector<double> u, z;
        IndicatorField ind;
        try {
            const SparseMatrix matrix = assemble_bilinear(space, problem.coeffs);
            const std::vector<double> rhs = assemble_primal_rhs(space, problem.loads);
            u = solve_primal(matrix, rhs, space.dirichlet_mask());

            // linearize the goal around the current primal solution
            const DualLoad dual_load = problem.goal.dual_rhs(space, u);
            const std::vector<double> dual_rhs = assemble_dual_rhs(space, dual_load);
            z = solve_dual(matrix, dual_rhs, space.dirichlet_mask());

            ind.eta_sq = eta_indicators(space, u, problem.coeffs, problem.loads);
            ind.zeta_sq = zeta_indicators(space, z, problem.coeffs, dual_load);
        } catch (const std::runtime_error& err) {
            result.complete = false;
            result.failure = err.what();
            return result;
        }

        MarkedSet marked;
        if (options.strategy == Strategy::Uniform) {
            marked.strategy = Strategy::Uniform;
            marked.theta = options.theta;
            marked.indices.resize(mesh.n_triangles());
            std::iota(marked.indices.begin(), marked.indices.end(), 0);
        } else {
            switch (options.strategy) {
                case Strategy::A:
                    marked = strategy_A(ind.eta_sq, ind.zeta_sq, options.theta);
                    break;
                case Strategy::B:
                    marked = strategy_B(ind.eta_sq, ind.zeta_sq, options.theta);
                    break;
                case Strategy::BET1:
                    marked = strategy_BET1(ind.eta_sq, ind.zeta_sq, options.theta);
                    break;
                case Strategy::BET2:
                    marked = strategy_BET2(ind.eta_sq, ind.zeta_sq, options.theta);
                    break;
                default: break;
            }
            if (!marked.indices.empty() && !marking_valid(marked, ind.eta_sq, ind.zeta_sq))
                throw std::logic_error("run_goafem: marked set violates its theta-inequality");
        }

        IterationRecord rec;
        rec.level = level;
        rec.n_elements = mesh.n_triangles();
        rec.n_dofs = space.n_dofs();
        rec.eta = ind.eta();
        rec.zeta = ind.zeta();
        rec.product = rec.eta * std::sqrt(rec.eta * rec.eta + rec.zeta * rec.zeta);
        rec.combined = ind.eta_total_sq() + ind.zeta_total_sq();
        rec.goal_value = problem.goal.evaluate(space, u);
        if (problem.goal.exact_goal)
            rec.goal_error = std::abs(*problem.goal.exact_goal - rec.goal_value);
        rec.n_marked = static_cast<int>(marked.indices.size());
        rec.strategy = options.strategy;
        rec.theta = options.theta;
        result.records.push_back(rec);

        if (options.observer)
            options.observer(LevelState{level, mesh, space, u, z, ind, marked});

        if (space.n_dofs() > options.max_dofs) break;
        if (level >= options.max_levels) break;
        if (marked.indices.empty()) break;
        mesh = refine_nvb(mesh, marked.indices);
    }
    return result;
}

double cumulative_cost(std::span<const IterationRecord> records, double tau,
                       RecordQuantity which) {
    if (records.empty()) throw std::invalid_argument("cumulative_cost: no records");
    double cost = 0.0;
    for (const IterationRecord& rec : records)
        if (record_quantity(rec, which) >= tau) cost += rec.n_elements;
    return cost;
}

double fit_rate(std::span<const IterationRecord> records, RecordQuantity quantity,
                double window) {
    if (!(window > 0.0) || window > 1.0)
        throw std::invalid_argument("fit_rate: window must be in (0, 1]");
    const size_t count = records.size();
    const size_t take = std::min(count, static_cast<size_t>(std::ceil(window * count)));
    std::vector<double> xs, ys;
    for (size_t i = count - take; i < count; ++i) {
        const double q = record_quantity(records[i], quantity);
        if (q <= 0.0) continue;
        xs.push_back(std::log(static_cast<double>(records[i].n_elements)));
        ys.push_back(std::log(q));
    }
    if (xs.size() < 4) throw std::invalid_argument("fit_rate: fewer than 4 usable records");
    const size_t n = xs.size();
    double mx = 0.0, my = 0.0;
    for (size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_rate: degenerate abscissa");
    return sxy / sxx;
}

std::vector<IterationRecord> trailing_decade(std::span<const IterationRecord> records) {
    int max_n = 0;
    for (const auto& r : records) max_n = std::max(max_n, r.n_elements);
    std::vector<IterationRecord> out;
    for (const auto& r : records)
        if (r.n_elements * 10 >= max_n) out.push_back(r);
    return out;
}

}  // namespace goafem
