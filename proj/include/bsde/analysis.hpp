#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bsde/problems.hpp"
#include "bsde/scheme.hpp"

namespace bsde {

struct ConvergenceRow {
    int num_steps = 0;
    double h = 0.0;
    double err_y = 0.0;
    double err_z = 0.0;
    double wall_seconds = 0.0;
};

/// One convergence study: per-N errors at (0, x0) plus least-squares
/// convergence rates. Rows are sorted by ascending N. Rows whose error sits
/// below the floor (1e-11) are excluded from the regression and flagged; a
/// rate is reported only when at least two rows survive.
struct ConvergenceReport {
    std::string problem;
    double alpha = 0.0;
    std::vector<ConvergenceRow> rows;
    std::optional<double> cr_y;
    std::optional<double> cr_z;
    std::vector<int> floored_y;  // N values excluded from the err_y regression
    std::vector<int> floored_z;

    static constexpr double error_floor = 1e-11;
};

/// Least-squares slope of ln(err) against ln(h). Requires equal lengths
/// >= 2 and strictly positive entries; throws ConfigError otherwise.
double convergence_rate(std::span<const double> hs, std::span<const double> errs);

/// Runs solve() for every N, collecting errors and wall times. The problem
/// must carry exact solutions (ConfigError otherwise).
ConvergenceReport run_convergence_study(const FbsdeProblem& problem, const SchemeParams& params,
                                        std::vector<int> step_counts);

}  // namespace bsde
