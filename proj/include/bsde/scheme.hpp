#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "bsde/fields.hpp"
#include "bsde/problems.hpp"
#include "bsde/quadrature.hpp"

namespace bsde {

/// Tunable parameters of the one-step predictor-corrector scheme. alpha is
/// the interior abscissa in (0, 1]; alpha = 1 degenerates to the
/// Crank-Nicolson scheme.
struct SchemeParams {
    double alpha = 0.5;
    int quad_order = 12;           // Gauss-Hermite K
    double halfwidth_sigmas = 6.0; // grid core extent in diffusion units
    int grid_points = 257;         // odd

    /// Throws ConfigError on out-of-domain values.
    void validate() const;
};

/// Outcome of one backward solve. y0/z0 are the field values at (0, x0);
/// errors are filled when the problem carries exact solutions.
struct SolveResult {
    double y0 = 0.0;
    double z0 = 0.0;
    std::optional<double> err_y;
    std::optional<double> err_z;
    std::optional<std::vector<ValueField>> fields;  // index = time level, 0..N
    std::uint64_t out_of_domain_evals = 0;
    double wall_seconds = 0.0;
};

/// Euler predictor at the intermediate time t_{i+1-alpha}: conditional on
/// X_{t_{i+1-alpha}} = x, steps delta = alpha h to the next level and returns
///
///   y_mid = E[ Y_{i+1} + alpha h f_{i+1} ],
///   z_mid = E[ dW (Y_{i+1} + alpha h f_{i+1}) ] / (alpha h),
///
/// with Y_{i+1}, Z_{i+1} read through the splines of `next`.
std::pair<double, double> predictor(const ValueField& next, double x, int i, const TimeMesh& mesh,
                                    const FbsdeProblem& problem, const QuadratureRule& rule);

/// Second-order corrector for level i, combining the intermediate field with
/// the next level. With f~ the generator composed with `mid` and f the
/// generator composed with `next`, launching from (t_i, x) over the
/// increments d1 = (1-alpha) h and d2 = h:
///
///   y = h/(2 alpha) E_d1[f~] + E_d2[ Y_{i+1} + h (1 - 1/(2 alpha)) f ],
///   z = 2/h Ew_d2[Y_{i+1}] + 1/alpha Ew_d1[f~]
///       + (2 alpha - 1)/alpha Ew_d2[f] - E_d2[Z_{i+1}],
///
/// where Ew is the Brownian-weighted expectation. At alpha = 1 the d1
/// expectations short-circuit (E_0[f~] = f~(x), Ew_0 = 0) and the step is the
/// Crank-Nicolson rule.
std::pair<double, double> corrector(const ValueField& next, const ValueField& mid, double x, int i,
                                    const TimeMesh& mesh, const FbsdeProblem& problem,
                                    const QuadratureRule& rule);

/// One full backward transition: materializes the intermediate field at
/// t_{i+1-alpha} by running the predictor at every grid point, then the
/// corrector at every grid point, and returns the fitted field at t_i.
/// scratch_oob, when given, accumulates the out-of-domain evaluations of the
/// intermediate field discarded on return.
ValueField backward_step(const ValueField& next, int i, const TimeMesh& mesh,
                         const FbsdeProblem& problem, const SchemeParams& params,
                         const QuadratureRule& rule, std::uint64_t* scratch_oob = nullptr);

/// Full backward solve with N uniform steps: terminal field from
/// (terminal_y, terminal_z), then backward_step for i = N-1 .. 0. Reads
/// (y0, z0) by spline evaluation at x0 and reports errors against the exact
/// solution when available. Deterministic for fixed inputs.
SolveResult solve(const FbsdeProblem& problem, const SchemeParams& params, int num_steps,
                  bool keep_fields = false);

}  // namespace bsde
