#include "bsde/fields.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "bsde/errors.hpp"
#include "bsde/parallel.hpp"
#include "bsde/scheme.hpp"

namespace bsde {

SpatialGrid build_grid(const FbsdeProblem& problem, const SchemeParams& params,
                       const TimeMesh& mesh) {
    params.validate();
    const double T = problem.terminal_time;
    const double core_reach = params.halfwidth_sigmas * std::sqrt(T);

    // diffusion bound sampled over [0,T] x [x0 +- c sqrt(T)]
    double sigma_bar = 0.0;
    constexpr int time_samples = 33;
    constexpr int space_samples = 65;
    for (int i = 0; i < time_samples; ++i) {
        const double t = T * i / (time_samples - 1);
        for (int j = 0; j < space_samples; ++j) {
            const double x =
                problem.x0 + core_reach * (2.0 * j / (space_samples - 1) - 1.0);
            sigma_bar = std::max(sigma_bar, std::abs(problem.diffusion(t, x)));
        }
    }

    const QuadratureRule rule = hermite_rule(params.quad_order);
    const double margin = std::sqrt(2.0 * mesh.step()) * rule.max_abs_node() * sigma_bar;
    const double half_width = params.halfwidth_sigmas * sigma_bar * std::sqrt(T) + margin;
    if (!(half_width > 0.0)) {
        throw ConfigError("computed grid half-width is not positive (" +
                          std::to_string(half_width) + "); check the diffusion coefficient");
    }

    SpatialGrid grid;
    grid.center = problem.x0;
    grid.half_width = half_width;
    grid.num_points = params.grid_points;
    grid.points.resize(grid.num_points);
    const int mid = grid.num_points / 2;
    const double spacing = 2.0 * half_width / (grid.num_points - 1);
    for (int j = 0; j < grid.num_points; ++j) {
        grid.points[j] = grid.center + (j - mid) * spacing;
    }
    return grid;
}

ValueField field_from_values(SpatialGrid grid, double time, std::vector<double> y_values,
                             std::vector<double> z_values) {
    if (static_cast<int>(y_values.size()) != grid.num_points ||
        static_cast<int>(z_values.size()) != grid.num_points) {
        throw ConfigError("field value vectors must match the grid size");
    }
    for (int j = 0; j < grid.num_points; ++j) {
        if (!std::isfinite(y_values[j]) || !std::isfinite(z_values[j])) {
            throw NumericalError("non-finite field value at grid index " + std::to_string(j) +
                                 " (x=" + std::to_string(grid.points[j]) +
                                 ", t=" + std::to_string(time) + ")");
        }
    }
    ValueField field;
    field.time = time;
    field.y_spline = CubicSpline::fit(grid.points, y_values);
    field.z_spline = CubicSpline::fit(grid.points, z_values);
    field.y_values = std::move(y_values);
    field.z_values = std::move(z_values);
    field.grid = std::move(grid);
    return field;
}

ValueField field_from_functions(const SpatialGrid& grid, double time, const SpatialFn& y_fn,
                                const SpatialFn& z_fn) {
    std::vector<double> y(grid.num_points), z(grid.num_points);
    parallel_for(grid.points.size(), [&](std::size_t j) {
        y[j] = y_fn(grid.points[j]);
        z[j] = z_fn(grid.points[j]);
    });
    return field_from_values(grid, time, std::move(y), std::move(z));
}

}  // namespace bsde
