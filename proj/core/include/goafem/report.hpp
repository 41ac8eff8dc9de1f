#pragma once

#include <span>
#include <string>
#include <vector>

#include "goafem/driver.hpp"

namespace goafem {

/// CSV schema:
/// level,n_elements,n_dofs,eta,zeta,product,combined,goal_value,goal_error,n_marked,strategy,theta
/// Doubles are printed with 17 significant digits so parsing reproduces the
/// records exactly; goal_error is empty when no exact reference exists.
/// Incomplete runs get a trailing "# incomplete" comment line.
std::string records_to_csv(std::span<const IterationRecord> records, bool complete = true);

struct ParsedCsv {
    std::vector<IterationRecord> records;
    bool complete = true;
};
ParsedCsv parse_csv(const std::string& text);

struct PlotSeries {
    std::string label;
    std::vector<std::pair<double, double>> points;  // (n_elements, value)
};

/// Log-log SVG plot: one polyline per series, dashed reference-slope
/// guides, legend. Deterministic byte output for identical input.
std::string plot_convergence_svg(std::span<const PlotSeries> series,
                                 std::span<const double> reference_slopes,
                                 const std::string& x_label, const std::string& y_label);

PlotSeries series_from_records(std::span<const IterationRecord> records, RecordQuantity q,
                               const std::string& label);

/// Flat key=value run configuration (comments start with '#').
struct RunConfig {
    std::string problem = "weighted_l2";
    int p = 1;
    Strategy strategy = Strategy::A;
    double theta = 0.5;
    int initial_n = 0;
    int extra_uniform = 0;
    int max_dofs = 100000;
    int max_levels = 1000;
    std::string out_dir = ".";
    bool plots = true;
    RecordQuantity cost_quantity = RecordQuantity::Product;
    std::vector<double> taus;  // sweep cost thresholds; auto grid when empty
};

RunConfig parse_config_file(const std::string& path);
void apply_config_entry(RunConfig& config, const std::string& key, const std::string& value);
void validate_config(const RunConfig& config);

/// "0.1..1.0:0.1" ranges or comma lists.
std::vector<double> parse_theta_list(const std::string& spec);

/// Executes a run per config, writes run.csv (+ convergence.svg). Returns 0
/// on a completed run.
int cli_run(const RunConfig& config);

/// One run per theta: run_theta<t>.csv each, cumulative.csv
/// (theta,tau,cost) over the tau grid, and a cost plot.
int cli_sweep(const RunConfig& config, std::span<const double> thetas);

/// Renders CSV inputs into one SVG.
int cli_plot(const std::vector<std::string>& inputs, RecordQuantity quantity,
             const std::string& out_path, std::span<const double> reference_slopes);

}  // namespace goafem
