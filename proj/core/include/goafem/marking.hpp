#pragma once

#include <span>
#include <string>
#include <vector>

namespace goafem {

enum class Strategy { A, B, BET1, BET2, Uniform };

std::string to_string(Strategy s);
Strategy strategy_from_string(const std::string& name);

/// Marked elements of one level; indices ascending, unique.
struct MarkedSet {
    std::vector<int> indices;
    Strategy strategy = Strategy::A;
    double theta = 0.0;
};

/// Doerfler set of truly minimal cardinality with
///   sum_{T in M} ind^2(T) >= theta * sum_T ind^2(T),
/// realized by a descending sort with ascending-index tie-break
/// (C_mark = 1). A zero total yields the empty set.
MarkedSet doerfler_min(std::span<const double> indicators_sq, double theta);

/// Two Doerfler sets for eta^2 and eta^2 + zeta^2, both truncated to the
/// smaller cardinality (keeping the largest indicators), then united.
MarkedSet strategy_A(std::span<const double> eta_sq, std::span<const double> zeta_sq,
                     double theta);

/// Doerfler marking for the combined estimator eta^2 + zeta^2.
MarkedSet strategy_B(std::span<const double> eta_sq, std::span<const double> zeta_sq,
                     double theta);

/// Doerfler marking for rho(T)^2 = eta(T)^2 zeta^2 + eta^2 zeta(T)^2 with
/// full-mesh totals eta^2, zeta^2.
MarkedSet strategy_BET1(std::span<const double> eta_sq, std::span<const double> zeta_sq,
                        double theta);

/// Doerfler marking for
/// varrho(T)^2 = eta(T)^2 [eta^2 + zeta^2] + eta^2 [eta(T)^2 + zeta(T)^2].
MarkedSet strategy_BET2(std::span<const double> eta_sq, std::span<const double> zeta_sq,
                        double theta);

/// Canonical summation (descending value, ascending index) shared by the
/// marking routines and the post-hoc inequality checks.
double descending_sum(std::span<const double> values);
double descending_subset_sum(std::span<const double> values, std::span<const int> subset);
bool satisfies_doerfler(std::span<const double> values, std::span<const int> subset,
                        double theta);

/// Post-hoc validity of a marked set: the defining theta-inequality of its
/// strategy (for A, the inequality of whichever Doerfler set survived the
/// truncation in full).
bool marking_valid(const MarkedSet& marked, std::span<const double> eta_sq,
                   std::span<const double> zeta_sq);

}  // namespace goafem
