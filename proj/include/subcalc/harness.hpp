// Convergence experiments: refinement ladders with rate columns, the named
// experiment registry behind the CLI, and order fitting.
#pragma once

#include <string>
#include <vector>

#include "subcalc/oracle.hpp"
#include "subcalc/types.hpp"

namespace subcalc {

enum class Problem {
    example1,              // residual of apply() against the smooth closed-form pair
    example2_corrected,    // data with an x^{0.6} layer, starting correction on
    example2_uncorrected,  // same data, correction off
    operator_apply,        // apply() vs closed form, sweeping p
    identity_suite,        // calculus identities, no ladder
    consistency_check,     // consistency_defect ladder, sweeping p
};

struct Experiment {
    std::string name;
    Problem problem = Problem::example1;
    int p = 0;  // 0 means sweep p = 1..5 (operator_apply, consistency_check)
    double sigma = 0.5;
    std::vector<double> alphas;
    std::vector<double> h_ladder;  // strictly decreasing
    double beta = 0.0;  // example2_corrected only
    int r = 0;          // example2_corrected only
    double b = 1.0;     // domain (0, b]
};

struct ConvergenceRow {
    double h = 0.0;
    double max_error = 0.0;
    double rate = 0.0;  // NaN on the first row: no coarser level to compare
};

struct ConvergenceReport {
    std::string experiment;
    double alpha = 0.0;
    double sigma = 0.0;
    int p = 0;
    std::vector<ConvergenceRow> rows;
    double wall_ms = 0.0;
};

// One report per (p, alpha) combination; identity experiments fill
// `identities` instead of `reports`.
struct ExperimentResult {
    std::string experiment;
    std::vector<ConvergenceReport> reports;
    std::vector<IdentityCheck> identities;
    double wall_ms = 0.0;
};

const std::vector<std::string>& registry_names();

// Throws std::invalid_argument naming the known experiments when `name` is
// not one of them.
Experiment registry_lookup(const std::string& name);

// Errors are computed in the max norm over the interior nodes x_1..x_N;
// ladder levels and alpha values run in parallel under the SUBCALC_THREADS
// cap. Oracle or conditioning failures propagate as their own exceptions.
ExperimentResult run_experiment(const Experiment& e);

// Least-squares slope of log(max_error) against log(h); at least 3 rows.
double fit_order(const std::vector<ConvergenceRow>& rows);
double fit_order(const ConvergenceReport& report);

// Forward solve of the two-point example from f_0 alone (the system is
// fully determined by it), with the right-endpoint probe |f_N - f(b)|
// recorded per level.
struct SolveLadderRow {
    double h = 0.0;
    double max_error = 0.0;
    double endpoint_error = 0.0;
};
std::vector<SolveLadderRow> solve_ladder(double alpha, double sigma, int p,
                                         const std::vector<double>& h_ladder, double b = 1.0);

// Threshold checks behind `converge --assert`: returns one line per
// violated target, empty when the experiment meets them all. Experiments
// without registered targets pass vacuously.
std::vector<std::string> check_acceptance(const ExperimentResult& result);

}  // namespace subcalc
