#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "goafem/report.hpp"

namespace {

void add_overrides(CLI::App* cmd, goafem::RunConfig& config, std::string& strategy,
                   std::string& problem) {
    cmd->add_option("--theta", config.theta, "Doerfler marking parameter in (0,1]");
    cmd->add_option("--strategy", strategy, "A|B|BET1|BET2|uniform");
    cmd->add_option("--p", config.p, "polynomial degree 1 or 2");
    cmd->add_option("--problem", problem, "weighted_l2|convection|force");
    cmd->add_option("--max-dofs", config.max_dofs, "dof budget");
    cmd->add_option("--max-levels", config.max_levels, "level cap");
    cmd->add_option("--initial-n", config.initial_n, "initial grid resolution");
    cmd->add_option("--extra-uniform", config.extra_uniform, "extra uniform refinements of T0");
    cmd->add_option("--out", config.out_dir, "output directory");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Goal-oriented adaptive FEM benchmark runner"};
    app.require_subcommand(1);

    std::string config_path, strategy_override, problem_override, thetas_spec;
    std::string plot_inputs, plot_quantity = "product", plot_out = "fig.svg", plot_slopes;

    goafem::RunConfig config;

    CLI::App* run = app.add_subcommand("run", "single adaptive run, writes run.csv");
    run->add_option("--config", config_path, "key=value config file");
    add_overrides(run, config, strategy_override, problem_override);

    CLI::App* sweep = app.add_subcommand("sweep", "theta sweep with cumulative costs");
    sweep->add_option("--config", config_path, "key=value config file");
    sweep->add_option("--thetas", thetas_spec, "list 0.2,0.5 or range 0.1..1.0:0.1")->required();
    add_overrides(sweep, config, strategy_override, problem_override);

    CLI::App* plot = app.add_subcommand("plot", "render run CSVs into a log-log SVG");
    plot->add_option("--inputs", plot_inputs, "comma-separated CSV paths")->required();
    plot->add_option("--quantity", plot_quantity, "eta|zeta|product|combined|goal_error");
    plot->add_option("--out", plot_out, "output SVG path");
    plot->add_option("--slopes", plot_slopes, "comma-separated reference slopes");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed() || sweep->parsed()) {
            goafem::RunConfig base;
            if (!config_path.empty()) base = goafem::parse_config_file(config_path);
            CLI::App* active = run->parsed() ? run : sweep;
            // command-line values win over the file
            auto touched = [&](const std::string& name) {
                return active->count(name) > 0;
            };
            if (touched("--theta")) base.theta = config.theta;
            if (touched("--p")) base.p = config.p;
            if (touched("--max-dofs")) base.max_dofs = config.max_dofs;
            if (touched("--max-levels")) base.max_levels = config.max_levels;
            if (touched("--initial-n")) base.initial_n = config.initial_n;
            if (touched("--extra-uniform")) base.extra_uniform = config.extra_uniform;
            if (touched("--out")) base.out_dir = config.out_dir;
            if (!strategy_override.empty())
                base.strategy = goafem::strategy_from_string(strategy_override);
            if (!problem_override.empty()) base.problem = problem_override;

            if (run->parsed()) return goafem::cli_run(base);
            return goafem::cli_sweep(base, goafem::parse_theta_list(thetas_spec));
        }
        if (plot->parsed()) {
            std::vector<std::string> inputs;
            std::string cur;
            for (char c : plot_inputs) {
                if (c == ',') {
                    if (!cur.empty()) inputs.push_back(cur);
                    cur.clear();
                } else {
                    cur.push_back(c);
                }
            }
            if (!cur.empty()) inputs.push_back(cur);
            std::vector<double> slopes;
            if (!plot_slopes.empty()) slopes = goafem::parse_theta_list(plot_slopes);
            return goafem::cli_plot(inputs, goafem::quantity_from_string(plot_quantity), plot_out,
                                    slopes);
        }
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
    return 0;
}
