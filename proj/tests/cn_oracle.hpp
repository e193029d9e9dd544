#pragma once

#include <utility>
#include <vector>

#include "bsde/problems.hpp"
#include "bsde/scheme.hpp"

namespace bsde::testing {

struct CnResult {
    double y0 = 0.0;
    double z0 = 0.0;
    std::vector<double> grid;      // spatial grid points
    std::vector<double> y_values;  // level-0 values on the grid
    std::vector<double> z_values;
};

/// Direct Crank-Nicolson predictor-corrector sweep, written out from the
/// alpha = 1 update rule with its own quadrature summation and backward loop.
/// Shares only grid construction, the Hermite rule, and the spline class with
/// the library, so it cross-checks the scheme's formula wiring. params.alpha
/// must be 1.
CnResult crank_nicolson_full(const FbsdeProblem& problem, const SchemeParams& params,
                             int num_steps);

/// (y0, z0) at the problem's x0.
std::pair<double, double> crank_nicolson_solve(const FbsdeProblem& problem,
                                               const SchemeParams& params, int num_steps);

}  // namespace bsde::testing
