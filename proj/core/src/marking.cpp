#include "goafem/marking.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace goafem {

std::string to_string(Strategy s) {
    switch (s) {
        case Strategy::A: return "A";
        case Strategy::B: return "B";
        case Strategy::BET1: return "BET1";
        case Strategy::BET2: return "BET2";
        case Strategy::Uniform: return "uniform";
    }
    return "?";
}

Strategy strategy_from_string(const std::string& name) {
    if (name == "A") return Strategy::A;
    if (name == "B") return Strategy::B;
    if (name == "BET1") return Strategy::BET1;
    if (name == "BET2") return Strategy::BET2;
    if (name == "uniform") return Strategy::Uniform;
    throw std::invalid_argument("unknown marking strategy: " + name);
}

namespace {

void check_values(std::span<const double> values) {
    for (double v : values) {
        if (!(v >= 0.0) || !std::isfinite(v))
            throw std::invalid_argument("marking: indicators must be nonnegative and finite");
    }
}

void check_theta(double theta) {
    if (!(theta > 0.0) || theta > 1.0)
        throw std::invalid_argument("marking: theta must be in (0, 1]");
}

/// Indices ordered by descending value, ties by ascending index.
std::vector<int> descending_order(std::span<const double> values) {
    std::vector<int> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return values[a] > values[b]; });
    return order;
}

/// Minimal-cardinality prefix in selection order (not sorted by index).
std::vector<int> doerfler_prefix(std::span<const double> values, double theta) {
    const std::vector<int> order = descending_order(values);
    double total = 0.0;
    for (int i : order) total += values[i];
    if (total == 0.0) return {};
    const double target = theta * total;
    std::vector<int> prefix;
    double sum = 0.0;
    for (int i : order) {
        if (sum >= target) break;
        prefix.push_back(i);
        sum += values[i];
    }
    return prefix;
}

MarkedSet finish(std::vector<int> indices, Strategy strategy, double theta) {
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    return {std::move(indices), strategy, theta};
}

std::vector<double> combined_field(std::span<const double> eta_sq,
                                   std::span<const double> zeta_sq) {
    if (eta_sq.size() != zeta_sq.size())
        throw std::invalid_argument("marking: indicator fields differ in length");
    std::vector<double> c(eta_sq.size());
    for (size_t i = 0; i < c.size(); ++i) c[i] = eta_sq[i] + zeta_sq[i];
    return c;
}

}  // namespace

double descending_sum(std::span<const double> values) {
    double s = 0.0;
    for (int i : descending_order(values)) s += values[i];
    return s;
}

double descending_subset_sum(std::span<const double> values, std::span<const int> subset) {
    std::vector<double> picked;
    picked.reserve(subset.size());
    for (int i : subset) picked.push_back(values[i]);
    std::sort(picked.begin(), picked.end(), std::greater<>());
    double s = 0.0;
    for (double v : picked) s += v;
    return s;
}

bool satisfies_doerfler(std::span<const double> values, std::span<const int> subset,
                        double theta) {
    return descending_subset_sum(values, subset) >= theta * descending_sum(values);
}

MarkedSet doerfler_min(std::span<const double> indicators_sq, double theta) {
    check_theta(theta);
    check_values(indicators_sq);
    return finish(doerfler_prefix(indicators_sq, theta), Strategy::B, theta);
}

MarkedSet strategy_A(std::span<const double> eta_sq, std::span<const double> zeta_sq,
                     double theta) {
    check_theta(theta);
    check_values(eta_sq);
    check_values(zeta_sq);
    const std::vector<double> comb = combined_field(eta_sq, zeta_sq);

    const std::vector<int> set_u = doerfler_prefix(eta_sq, theta);
    const std::vector<int> set_uz = doerfler_prefix(comb, theta);
    const size_t m = std::min(set_u.size(), set_uz.size());

    std::vector<int> merged(set_u.begin(), set_u.begin() + m);
    merged.insert(merged.end(), set_uz.begin(), set_uz.begin() + m);
    return finish(std::move(merged), Strategy::A, theta);
}

MarkedSet strategy_B(std::span<const double> eta_sq, std::span<const double> zeta_sq,
                     double theta) {
    check_theta(theta);
    check_values(eta_sq);
    check_values(zeta_sq);
    const std::vector<double> comb = combined_field(eta_sq, zeta_sq);
    MarkedSet out = finish(doerfler_prefix(comb, theta), Strategy::B, theta);
    return out;
}

MarkedSet strategy_BET1(std::span<const double> eta_sq, std::span<const double> zeta_sq,
                        double theta) {
    check_theta(theta);
    check_values(eta_sq);
    check_values(zeta_sq);
    if (eta_sq.size() != zeta_sq.size())
        throw std::invalid_argument("marking: indicator fields differ in length");
    const double eta_tot = descending_sum(eta_sq);
    const double zeta_tot = descending_sum(zeta_sq);
    std::vector<double> rho(eta_sq.size());
    for (size_t i = 0; i < rho.size(); ++i)
        rho[i] = eta_sq[i] * zeta_tot + eta_tot * zeta_sq[i];
    return finish(doerfler_prefix(rho, theta), Strategy::BET1, theta);
}

MarkedSet strategy_BET2(std::span<const double> eta_sq, std::span<const double> zeta_sq,
                        double theta) {
    check_theta(theta);
    check_values(eta_sq);
    check_values(zeta_sq);
    if (eta_sq.size() != zeta_sq.size())
        throw std::invalid_argument("marking: indicator fields differ in length");
    const double eta_tot = descending_sum(eta_sq);
    const double zeta_tot = descending_sum(zeta_sq);
    std::vector<double> varrho(eta_sq.size());
    for (size_t i = 0; i < varrho.size(); ++i)
        varrho[i] = eta_sq[i] * (eta_tot + zeta_tot) + eta_tot * (eta_sq[i] + zeta_sq[i]);
    return finish(doerfler_prefix(varrho, theta), Strategy::BET2, theta);
}

bool marking_valid(const MarkedSet& marked, std::span<const double> eta_sq,
                   std::span<const double> zeta_sq) {
    const std::vector<double> comb = combined_field(eta_sq, zeta_sq);
    const std::span<const int> idx(marked.indices);
    switch (marked.strategy) {
        case Strategy::A:
            return satisfies_doerfler(eta_sq, idx, marked.theta) ||
                   satisfies_doerfler(comb, idx, marked.theta);
        case Strategy::B:
            return satisfies_doerfler(comb, idx, marked.theta);
        case Strategy::BET1: {
            const double eta_tot = descending_sum(eta_sq);
            const double zeta_tot = descending_sum(zeta_sq);
            std::vector<double> rho(eta_sq.size());
            for (size_t i = 0; i < rho.size(); ++i)
                rho[i] = eta_sq[i] * zeta_tot + eta_tot * zeta_sq[i];
            return satisfies_doerfler(rho, idx, marked.theta);
        }
        case Strategy::BET2: {
            const double eta_tot = descending_sum(eta_sq);
            const double zeta_tot = descending_sum(zeta_sq);
            std::vector<double> varrho(eta_sq.size());
            for (size_t i = 0; i < varrho.size(); ++i)
                varrho[i] = eta_sq[i] * (eta_tot + zeta_tot) + eta_tot * (eta_sq[i] + zeta_sq[i]);
            return satisfies_doerfler(varrho, idx, marked.theta);
        }
        case Strategy::Uniform:
            return marked.indices.size() == eta_sq.size();
    }
    return false;
}

}  // namespace goafem
