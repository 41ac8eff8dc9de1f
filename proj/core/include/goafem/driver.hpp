#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "goafem/estimators.hpp"
#include "goafem/marking.hpp"
#include "goafem/problems.hpp"

namespace goafem {

/// One adaptive-loop level.
struct IterationRecord {
    int level = 0;
    int n_elements = 0;
    int n_dofs = 0;
    double eta = 0.0;
    double zeta = 0.0;
    double product = 0.0;   // eta * sqrt(eta^2 + zeta^2)
    double combined = 0.0;  // eta^2 + zeta^2
    double goal_value = 0.0;
    std::optional<double> goal_error;
    int n_marked = 0;
    Strategy strategy = Strategy::A;
    double theta = 0.0;
};

enum class RecordQuantity { Eta, Zeta, Product, Combined, GoalError };

RecordQuantity quantity_from_string(const std::string& name);
std::string to_string(RecordQuantity q);
/// Value of the chosen quantity; throws when GoalError is absent.
double record_quantity(const IterationRecord& rec, RecordQuantity q);

/// Read-only view of one level handed to the observer after estimation
/// and marking, before refinement.
struct LevelState {
    int level;
    const Mesh& mesh;
    const FeSpace& space;
    const std::vector<double>& primal;
    const std::vector<double>& dual;
    const IndicatorField& indicators;
    const MarkedSet& marked;
};

struct RunOptions {
    Strategy strategy = Strategy::A;
    double theta = 0.5;
    int p = 1;
    int max_dofs = 100000;
    int max_levels = 1000;
    int initial_n = 0;  // 0: problem's recommended n
    int extra_uniform = 0;
    std::function<void(const LevelState&)> observer;
};

struct RunResult {
    std::vector<IterationRecord> records;
    bool complete = true;
    std::string failure;
};

/// Adaptive loop: solve primal, rebuild the dual right-hand side around the
/// current primal solution, solve dual, estimate, mark, refine. Stops on
/// the dof budget, the level cap, or an empty marked set; the last solved
/// level is always recorded. A solver failure yields the partial records
/// flagged incomplete.
RunResult run_goafem(const BenchmarkProblem& problem, const RunOptions& options);

/// Sum of n_elements over levels whose selected error is >= tau.
double cumulative_cost(std::span<const IterationRecord> records, double tau, RecordQuantity which);

/// Least-squares slope of log(quantity) vs log(n_elements) over the
/// trailing ceil(window * count) records; nonpositive values are excluded,
/// at least 4 points must remain.
double fit_rate(std::span<const IterationRecord> records, RecordQuantity quantity, double window);

/// Records restricted to the trailing decade n_elements >= max/10.
std::vector<IterationRecord> trailing_decade(std::span<const IterationRecord> records);

}  // namespace goafem
