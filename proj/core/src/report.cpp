#include "goafem/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace goafem {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

constexpr const char* kCsvHeader =
    "level,n_elements,n_dofs,eta,zeta,product,combined,goal_value,goal_error,n_marked,"
    "strategy,theta";

}  // namespace

std::string records_to_csv(std::span<const IterationRecord> records, bool complete) {
    std::string out = kCsvHeader;
    out += "\n";
    for (const IterationRecord& r : records) {
        out += std::to_string(r.level) + "," + std::to_string(r.n_elements) + "," +
               std::to_string(r.n_dofs) + "," + fmt(r.eta) + "," + fmt(r.zeta) + "," +
               fmt(r.product) + "," + fmt(r.combined) + "," + fmt(r.goal_value) + ",";
        if (r.goal_error) out += fmt(*r.goal_error);
        out += "," + std::to_string(r.n_marked) + "," + to_string(r.strategy) + "," +
               fmt(r.theta) + "\n";
    }
    if (!complete) out += "# incomplete\n";
    return out;
}

ParsedCsv parse_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader)
        throw std::runtime_error("parse_csv: unexpected header");
    ParsedCsv parsed;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (line.find("incomplete") != std::string::npos) parsed.complete = false;
            continue;
        }
        const auto f = split(line, ',');
        if (f.size() != 12) throw std::runtime_error("parse_csv: malformed row: " + line);
        IterationRecord r;
        r.level = std::stoi(f[0]);
        r.n_elements = std::stoi(f[1]);
        r.n_dofs = std::stoi(f[2]);
        r.eta = std::stod(f[3]);
        r.zeta = std::stod(f[4]);
        r.product = std::stod(f[5]);
        r.combined = std::stod(f[6]);
        r.goal_value = std::stod(f[7]);
        if (!f[8].empty()) r.goal_error = std::stod(f[8]);
        r.n_marked = std::stoi(f[9]);
        r.strategy = strategy_from_string(f[10]);
        r.theta = std::stod(f[11]);
        parsed.records.push_back(r);
    }
    return parsed;
}

PlotSeries series_from_records(std::span<const IterationRecord> records, RecordQuantity q,
                               const std::string& label) {
    PlotSeries s;
    s.label = label;
    for (const IterationRecord& r : records) {
        if (q == RecordQuantity::GoalError && !r.goal_error) continue;
        const double v = record_quantity(r, q);
        if (v > 0.0) s.points.emplace_back(r.n_elements, v);
    }
    return s;
}

std::string plot_convergence_svg(std::span<const PlotSeries> series,
                                 std::span<const double> reference_slopes,
                                 const std::string& x_label, const std::string& y_label) {
    if (series.empty()) throw std::invalid_argument("plot: no series");

    double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
    bool have = false;
    for (const PlotSeries& s : series) {
        for (auto [x, y] : s.points) {
            if (x <= 0.0 || y <= 0.0) continue;
            if (!have) {
                xmin = xmax = x;
                ymin = ymax = y;
                have = true;
            }
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    }
    if (!have) throw std::invalid_argument("plot: no positive data points");

    const double lx0 = std::floor(std::log10(xmin));
    const double lx1 = std::ceil(std::log10(xmax) - 1e-12);
    double ly0 = std::floor(std::log10(ymin));
    double ly1 = std::ceil(std::log10(ymax) - 1e-12);
    if (lx1 <= lx0 + 0.5 || ly1 <= ly0 + 0.5) ly1 = ly0 + 1;  // degenerate ranges

    const double px0 = 80, px1 = 700, py0 = 480, py1 = 40;  // svg box (y down)
    auto sx = [&](double x) {
        return px0 + (std::log10(x) - lx0) / (lx1 - lx0) * (px1 - px0);
    };
    auto sy = [&](double y) {
        return py0 + (std::log10(y) - ly0) / (ly1 - ly0) * (py1 - py0);
    };

    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f",
                                    "#bcbd22", "#e377c2"};
    const int n_colors = 10;

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"760\" height=\"560\" "
           "viewBox=\"0 0 760 560\">\n";
    svg += "<rect x=\"0\" y=\"0\" width=\"760\" height=\"560\" fill=\"white\"/>\n";
    svg += "<clipPath id=\"plotclip\"><rect x=\"" + fmt2(px0) + "\" y=\"" + fmt2(py1) +
           "\" width=\"" + fmt2(px1 - px0) + "\" height=\"" + fmt2(py0 - py1) +
           "\"/></clipPath>\n";

    // decade grid and tick labels
    for (int d = static_cast<int>(lx0); d <= static_cast<int>(lx1); ++d) {
        const double x = sx(std::pow(10.0, d));
        svg += "<line x1=\"" + fmt2(x) + "\" y1=\"" + fmt2(py0) + "\" x2=\"" + fmt2(x) +
               "\" y2=\"" + fmt2(py1) + "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        svg += "<text x=\"" + fmt2(x) + "\" y=\"" + fmt2(py0 + 18) +
               "\" font-size=\"12\" text-anchor=\"middle\">1e" + std::to_string(d) + "</text>\n";
    }
    for (int d = static_cast<int>(ly0); d <= static_cast<int>(ly1); ++d) {
        const double y = sy(std::pow(10.0, d));
        svg += "<line x1=\"" + fmt2(px0) + "\" y1=\"" + fmt2(y) + "\" x2=\"" + fmt2(px1) +
               "\" y2=\"" + fmt2(y) + "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        svg += "<text x=\"" + fmt2(px0 - 6) + "\" y=\"" + fmt2(y + 4) +
               "\" font-size=\"12\" text-anchor=\"end\">1e" + std::to_string(d) + "</text>\n";
    }
    svg += "<rect x=\"" + fmt2(px0) + "\" y=\"" + fmt2(py1) + "\" width=\"" + fmt2(px1 - px0) +
           "\" height=\"" + fmt2(py0 - py1) + "\" fill=\"none\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fmt2(0.5 * (px0 + px1)) + "\" y=\"535\" font-size=\"14\" "
           "text-anchor=\"middle\">" + x_label + "</text>\n";
    svg += "<text x=\"20\" y=\"" + fmt2(0.5 * (py0 + py1)) +
           "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 20 " +
           fmt2(0.5 * (py0 + py1)) + ")\">" + y_label + "</text>\n";

    // dashed reference-slope guides through the last point of the first series
    const PlotSeries* anchor_series = nullptr;
    for (const PlotSeries& s : series)
        if (!s.points.empty()) {
            anchor_series = &s;
            break;
        }
    if (anchor_series) {
        const auto [ax, ay] = anchor_series->points.back();
        for (double slope : reference_slopes) {
            const double xa = std::pow(10.0, lx0), xb = std::pow(10.0, lx1);
            const double ya = ay * std::pow(xa / ax, slope);
            const double yb = ay * std::pow(xb / ax, slope);
            svg += "<line clip-path=\"url(#plotclip)\" x1=\"" + fmt2(sx(xa)) + "\" y1=\"" +
                   fmt2(sy(ya)) + "\" x2=\"" + fmt2(sx(xb)) + "\" y2=\"" + fmt2(sy(yb)) +
                   "\" stroke=\"#888888\" stroke-dasharray=\"6 4\" stroke-width=\"1\"/>\n";
            char lbl[48];
            std::snprintf(lbl, sizeof lbl, "slope %g", slope);
            svg += "<text x=\"" + fmt2(px1 - 8) + "\" y=\"" + fmt2(sy(yb) - 4) +
                   "\" font-size=\"11\" fill=\"#888888\" text-anchor=\"end\">" + lbl +
                   "</text>\n";
        }
    }

    for (size_t k = 0; k < series.size(); ++k) {
        const PlotSeries& s = series[k];
        if (s.points.empty()) continue;
        std::string pts;
        for (auto [x, y] : s.points) {
            if (x <= 0.0 || y <= 0.0) continue;
            pts += fmt2(sx(x)) + "," + fmt2(sy(y)) + " ";
        }
        if (!pts.empty()) pts.pop_back();
        svg += "<polyline clip-path=\"url(#plotclip)\" fill=\"none\" stroke=\"" +
               std::string(palette[k % n_colors]) + "\" stroke-width=\"1.5\" points=\"" + pts +
               "\"/>\n";
    }

    // legend
    for (size_t k = 0; k < series.size(); ++k) {
        const double ly = py1 + 16 + 16 * static_cast<double>(k);
        svg += "<line x1=\"" + fmt2(px1 - 150) + "\" y1=\"" + fmt2(ly - 4) + "\" x2=\"" +
               fmt2(px1 - 122) + "\" y2=\"" + fmt2(ly - 4) + "\" stroke=\"" +
               std::string(palette[k % n_colors]) + "\" stroke-width=\"1.5\"/>\n";
        svg += "<text x=\"" + fmt2(px1 - 116) + "\" y=\"" + fmt2(ly) +
               "\" font-size=\"12\">" + series[k].label + "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

std::vector<double> parse_theta_list(const std::string& spec) {
    std::vector<double> out;
    const auto range_pos = spec.find("..");
    if (range_pos != std::string::npos) {
        const auto colon = spec.find(':', range_pos);
        if (colon == std::string::npos)
            throw std::invalid_argument("theta range needs a step: lo..hi:step");
        const double lo = std::stod(spec.substr(0, range_pos));
        const double hi = std::stod(spec.substr(range_pos + 2, colon - range_pos - 2));
        const double step = std::stod(spec.substr(colon + 1));
        if (step <= 0.0) throw std::invalid_argument("theta range step must be positive");
        for (double t = lo; t <= hi + 1e-9; t += step) out.push_back(std::min(t, hi));
        return out;
    }
    for (const std::string& tok : split(spec, ','))
        if (!tok.empty()) out.push_back(std::stod(tok));
    return out;
}

void apply_config_entry(RunConfig& config, const std::string& key, const std::string& value) {
    if (key == "problem") config.problem = value;
    else if (key == "p") config.p = std::stoi(value);
    else if (key == "strategy") config.strategy = strategy_from_string(value);
    else if (key == "theta") config.theta = std::stod(value);
    else if (key == "initial_n") config.initial_n = std::stoi(value);
    else if (key == "extra_uniform") config.extra_uniform = std::stoi(value);
    else if (key == "max_dofs") config.max_dofs = std::stoi(value);
    else if (key == "max_levels") config.max_levels = std::stoi(value);
    else if (key == "out_dir") config.out_dir = value;
    else if (key == "plots") config.plots = (value == "1" || value == "true" || value == "on");
    else if (key == "cost_quantity") config.cost_quantity = quantity_from_string(value);
    else if (key == "taus") config.taus = parse_theta_list(value);
    else throw std::invalid_argument("unknown config key: " + key);
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    RunConfig config;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back())))
            line.pop_back();
        size_t start = 0;
        while (start < line.size() && std::isspace(static_cast<unsigned char>(line[start])))
            ++start;
        if (start >= line.size()) continue;
        const auto eq = line.find('=', start);
        if (eq == std::string::npos)
            throw std::invalid_argument("malformed config line: " + line);
        std::string key = line.substr(start, eq - start);
        std::string value = line.substr(eq + 1);
        while (!key.empty() && std::isspace(static_cast<unsigned char>(key.back()))) key.pop_back();
        size_t vs = 0;
        while (vs < value.size() && std::isspace(static_cast<unsigned char>(value[vs]))) ++vs;
        value.erase(0, vs);
        apply_config_entry(config, key, value);
    }
    return config;
}

void validate_config(const RunConfig& config) {
    if (!(config.theta > 0.0) || config.theta > 1.0)
        throw std::invalid_argument("config: theta must be in (0, 1]");
    if (config.p != 1 && config.p != 2)
        throw std::invalid_argument("config: p must be 1 or 2");
    if (config.max_dofs < 1) throw std::invalid_argument("config: max_dofs must be positive");
    if (config.initial_n < 0) throw std::invalid_argument("config: initial_n must be >= 0");
    problem_by_name(config.problem, config.initial_n > 0 ? config.initial_n : 8);
}

namespace {

RunResult execute(const RunConfig& config) {
    const int n = config.initial_n > 0 ? config.initial_n : 8;
    const BenchmarkProblem problem = problem_by_name(config.problem, n);
    RunOptions options;
    options.strategy = config.strategy;
    options.theta = config.theta;
    options.p = config.p;
    options.max_dofs = config.max_dofs;
    options.max_levels = config.max_levels;
    options.initial_n = config.initial_n;
    options.extra_uniform = config.extra_uniform;
    return run_goafem(problem, options);
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << contents;
}

std::string theta_tag(double theta) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%g", theta);
    return buf;
}

}  // namespace

int cli_run(const RunConfig& config) {
    validate_config(config);
    const RunResult result = execute(config);
    std::filesystem::create_directories(config.out_dir);
    write_file(std::filesystem::path(config.out_dir) / "run.csv",
               records_to_csv(result.records, result.complete));
    if (config.plots && !result.records.empty()) {
        std::vector<PlotSeries> series;
        series.push_back(series_from_records(result.records, RecordQuantity::Product,
                                             "product " + to_string(config.strategy)));
        const PlotSeries err =
            series_from_records(result.records, RecordQuantity::GoalError, "goal error");
        if (!err.points.empty()) series.push_back(err);
        const double slopes[] = {-1.0, -2.0};
        write_file(std::filesystem::path(config.out_dir) / "convergence.svg",
                   plot_convergence_svg(series, slopes, "number of elements", "estimate"));
    }
    return result.complete ? 0 : 3;
}

int cli_sweep(const RunConfig& config, std::span<const double> thetas) {
    validate_config(config);
    if (thetas.empty()) throw std::invalid_argument("sweep: no theta values");
    for (double t : thetas)
        if (!(t > 0.0) || t > 1.0) throw std::invalid_argument("sweep: theta outside (0, 1]");

    std::filesystem::create_directories(config.out_dir);
    std::vector<RunResult> results;
    for (double theta : thetas) {
        RunConfig c = config;
        c.theta = theta;
        results.push_back(execute(c));
        write_file(std::filesystem::path(config.out_dir) /
                       ("run_theta" + theta_tag(theta) + ".csv"),
                   records_to_csv(results.back().records, results.back().complete));
    }

    std::vector<double> taus = config.taus;
    if (taus.empty()) {
        double lo = 0.0, hi = 0.0;
        bool have = false;
        for (const RunResult& r : results) {
            for (const IterationRecord& rec : r.records) {
                if (rec.goal_error.has_value() || config.cost_quantity != RecordQuantity::GoalError) {
                    const double v = record_quantity(rec, config.cost_quantity);
                    if (v <= 0.0) continue;
                    if (!have) {
                        lo = hi = v;
                        have = true;
                    }
                    lo = std::min(lo, v);
                    hi = std::max(hi, v);
                }
            }
        }
        if (!have) throw std::runtime_error("sweep: no positive cost quantity values");
        const int n_taus = 12;
        for (int i = 0; i < n_taus; ++i)
            taus.push_back(hi * std::pow(lo / hi, static_cast<double>(i) / (n_taus - 1)));
    }

    std::string csv = "theta,tau,cost\n";
    std::vector<PlotSeries> cost_series;
    for (size_t k = 0; k < thetas.size(); ++k) {
        PlotSeries s;
        s.label = "theta " + theta_tag(thetas[k]);
        for (double tau : taus) {
            const double cost = cumulative_cost(results[k].records, tau, config.cost_quantity);
            csv += fmt(thetas[k]) + "," + fmt(tau) + "," + fmt(cost) + "\n";
            if (tau > 0.0 && cost > 0.0) s.points.emplace_back(tau, cost);
        }
        // plot descending tau from the left
        std::sort(s.points.begin(), s.points.end(),
                  [](auto a, auto b) { return a.first > b.first; });
        cost_series.push_back(std::move(s));
    }
    write_file(std::filesystem::path(config.out_dir) / "cumulative.csv", csv);
    if (config.plots) {
        write_file(std::filesystem::path(config.out_dir) / "sweep.svg",
                   plot_convergence_svg(cost_series, {},
                                        "tau (" + to_string(config.cost_quantity) + ")",
                                        "cumulative cost"));
    }
    for (const RunResult& r : results)
        if (!r.complete) return 3;
    return 0;
}

int cli_plot(const std::vector<std::string>& inputs, RecordQuantity quantity,
             const std::string& out_path, std::span<const double> reference_slopes) {
    if (inputs.empty()) throw std::invalid_argument("plot: no input files");
    std::vector<PlotSeries> series;
    for (const std::string& path : inputs) {
        std::ifstream in(path);
        if (!in) throw std::invalid_argument("cannot open " + path);
        std::stringstream buf;
        buf << in.rdbuf();
        const ParsedCsv parsed = parse_csv(buf.str());
        series.push_back(series_from_records(parsed.records, quantity,
                                             std::filesystem::path(path).stem().string()));
    }
    const std::string svg = plot_convergence_svg(series, reference_slopes, "number of elements",
                                                 to_string(quantity));
    write_file(out_path, svg);
    return 0;
}

}  // namespace goafem
