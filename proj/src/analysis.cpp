#include "bsde/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bsde/errors.hpp"

namespace bsde {

double convergence_rate(std::span<const double> hs, std::span<const double> errs) {
    if (hs.size() != errs.size()) {
        throw ConfigError("convergence_rate: mismatched lengths");
    }
    if (hs.size() < 2) {
        throw ConfigError("convergence_rate needs at least 2 samples");
    }
    for (std::size_t i = 0; i < hs.size(); ++i) {
        if (!(hs[i] > 0.0) || !(errs[i] > 0.0)) {
            throw ConfigError("convergence_rate: entries must be positive");
        }
    }
    const std::size_t n = hs.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += std::log(hs[i]);
        my += std::log(errs[i]);
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = std::log(hs[i]) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(errs[i]) - my);
    }
    return sxy / sxx;
}

namespace {

std::optional<double> regress_column(const std::vector<ConvergenceRow>& rows,
                                     double ConvergenceRow::*column, std::vector<int>& floored) {
    std::vector<double> hs, errs;
    for (const ConvergenceRow& row : rows) {
        const double err = row.*column;
        if (err < ConvergenceReport::error_floor) {
            floored.push_back(row.num_steps);
        } else {
            hs.push_back(row.h);
            errs.push_back(err);
        }
    }
    if (hs.size() < 2) return std::nullopt;
    return convergence_rate(hs, errs);
}

}  // namespace

ConvergenceReport run_convergence_study(const FbsdeProblem& problem, const SchemeParams& params,
                                        std::vector<int> step_counts) {
    if (!problem.has_exact()) {
        throw ConfigError("convergence study needs a problem with exact solutions: " +
                          problem.name);
    }
    if (step_counts.empty()) {
        throw ConfigError("convergence study needs at least one N");
    }
    std::sort(step_counts.begin(), step_counts.end());

    ConvergenceReport report;
    report.problem = problem.name;
    report.alpha = params.alpha;
    report.rows.reserve(step_counts.size());
    for (const int n : step_counts) {
        const SolveResult res = solve(problem, params, n);
        ConvergenceRow row;
        row.num_steps = n;
        row.h = problem.terminal_time / n;
        row.err_y = *res.err_y;
        row.err_z = *res.err_z;
        row.wall_seconds = res.wall_seconds;
        report.rows.push_back(row);
    }
    report.cr_y = regress_column(report.rows, &ConvergenceRow::err_y, report.floored_y);
    report.cr_z = regress_column(report.rows, &ConvergenceRow::err_z, report.floored_z);
    return report;
}

}  // namespace bsde
