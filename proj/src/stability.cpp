#include "bsde/stability.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bsde/errors.hpp"

namespace bsde {

SolveResult solve_perturbed(const FbsdeProblem& problem, const SchemeParams& params, int num_steps,
                            const PerturbationSpec& pert, bool keep_fields) {
    FbsdeProblem perturbed = problem;
    if (pert.eps_f) {
        perturbed.generator = [f = problem.generator, eps = pert.eps_f](double t, double y,
                                                                        double z) {
            return f(t, y, z) + eps(t, y, z);
        };
    }
    if (pert.eps_y_terminal) {
        perturbed.terminal_y = [phi = problem.terminal_y, eps = pert.eps_y_terminal](double x) {
            return phi(x) + eps(x);
        };
    }
    if (pert.eps_z_terminal) {
        perturbed.terminal_z = [tz = problem.terminal_z, eps = pert.eps_z_terminal](double x) {
            return tz(x) + eps(x);
        };
    }
    return solve(perturbed, params, num_steps, keep_fields);
}

DeviationReport deviation(const SolveResult& base, const SolveResult& perturbed) {
    if (!base.fields || !perturbed.fields) {
        throw ConfigError("deviation needs both solves run with keep_fields");
    }
    const auto& bf = *base.fields;
    const auto& pf = *perturbed.fields;
    if (bf.size() != pf.size() || bf.empty()) {
        throw ConfigError("deviation: mismatched number of time levels");
    }
    for (std::size_t l = 0; l < bf.size(); ++l) {
        const SpatialGrid& bg = bf[l].grid;
        const SpatialGrid& pg = pf[l].grid;
        if (bg.num_points != pg.num_points || bg.center != pg.center ||
            bg.half_width != pg.half_width || bf[l].time != pf[l].time) {
            throw ConfigError("deviation: mesh/grid mismatch at level " + std::to_string(l));
        }
    }

    const std::size_t levels = bf.size();
    const int num_steps = static_cast<int>(levels) - 1;
    DeviationReport report;
    report.sup_y.resize(levels);
    report.sup_z.resize(levels);
    for (std::size_t l = 0; l < levels; ++l) {
        double sy = 0.0, sz = 0.0;
        for (int j = 0; j < bf[l].grid.num_points; ++j) {
            sy = std::max(sy, std::abs(pf[l].y_values[j] - bf[l].y_values[j]));
            sz = std::max(sz, std::abs(pf[l].z_values[j] - bf[l].z_values[j]));
        }
        report.sup_y[l] = sy;
        report.sup_z[l] = sz;
    }

    const double h = num_steps > 0 ? bf[1].time - bf[0].time : 0.0;
    double zsum = 0.0;
    for (int l = 0; l < num_steps; ++l) zsum += report.sup_z[l] * report.sup_z[l];
    report.z_sup_sq_sum = h * zsum;
    report.dev = report.sup_y[0] * report.sup_y[0] + report.z_sup_sq_sum;

    const int center = bf[0].grid.num_points / 2;
    report.y0_at_x0 = std::abs(pf[0].y_values[center] - bf[0].y_values[center]);
    report.z0_at_x0 = std::abs(pf[0].z_values[center] - bf[0].z_values[center]);
    return report;
}

}  // namespace bsde
