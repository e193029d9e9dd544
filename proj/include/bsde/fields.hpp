#pragma once

#include <functional>
#include <vector>

#include "bsde/problems.hpp"
#include "bsde/quadrature.hpp"
#include "bsde/spline.hpp"

namespace bsde {

struct SchemeParams;  // scheme.hpp

/// Uniform time mesh t_i = i T / N plus the intermediate times
/// t_{i+1-alpha} = t_i + (1-alpha) h used by the predictor. Node values are
/// computed directly from the index, never accumulated, so t_0 = 0 and
/// t_N = T exactly.
struct TimeMesh {
    int num_steps = 0;       // N
    double terminal_time = 0.0;
    double alpha = 1.0;      // in (0, 1]

    double step() const { return terminal_time / num_steps; }
    double time(int i) const {
        return i == num_steps ? terminal_time : static_cast<double>(i) * terminal_time / num_steps;
    }
    /// t_i + (1-alpha) h; equals t_i when alpha = 1.
    double intermediate_time(int i) const { return time(i) + (1.0 - alpha) * step(); }
};

/// Uniform symmetric spatial grid. The point count is odd so the center is a
/// grid point.
struct SpatialGrid {
    double center = 0.0;
    double half_width = 0.0;
    int num_points = 0;
    std::vector<double> points;

    double spacing() const { return 2.0 * half_width / (num_points - 1); }
};

/// Sizes the grid for a solve: half_width = c * sbar * sqrt(T) + margin with
/// c = params.halfwidth_sigmas, sbar the sampled diffusion bound over
/// [0,T] x [x0 +- c sqrt(T)], and margin = sqrt(2 h) * max|node| * sbar, one
/// quadrature excursion at step h. Throws ConfigError when the computed
/// half-width is not positive.
SpatialGrid build_grid(const FbsdeProblem& problem, const SchemeParams& params,
                       const TimeMesh& mesh);

/// Discrete (Y, Z) pair over a spatial grid at one time level, with spline
/// evaluators fitted over the same knots.
struct ValueField {
    SpatialGrid grid;
    double time = 0.0;
    std::vector<double> y_values;
    std::vector<double> z_values;
    CubicSpline y_spline;
    CubicSpline z_spline;

    double y(double x) const { return y_spline.eval(x); }
    double z(double x) const { return z_spline.eval(x); }
    std::uint64_t out_of_domain_count() const {
        return y_spline.out_of_domain_count() + z_spline.out_of_domain_count();
    }
};

/// Builds a field from value vectors (must match the grid length; all values
/// finite, else NumericalError naming the grid index).
ValueField field_from_values(SpatialGrid grid, double time, std::vector<double> y_values,
                             std::vector<double> z_values);

/// Samples y_fn / z_fn on the grid points and fits both splines.
ValueField field_from_functions(const SpatialGrid& grid, double time, const SpatialFn& y_fn,
                                const SpatialFn& z_fn);

}  // namespace bsde
