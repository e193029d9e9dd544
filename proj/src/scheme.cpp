#include "bsde/scheme.hpp"

#include <chrono>
#include <cmath>
#include <string>
#include <utility>

#include "bsde/errors.hpp"
#include "bsde/parallel.hpp"

namespace bsde {

void SchemeParams::validate() const {
    if (!(alpha > 0.0) || !(alpha <= 1.0)) {
        throw ConfigError("alpha must lie in (0, 1], got " + std::to_string(alpha));
    }
    if (quad_order < 1 || quad_order > 64) {
        throw ConfigError("quadrature order must lie in [1, 64], got " +
                          std::to_string(quad_order));
    }
    if (!(halfwidth_sigmas > 0.0)) {
        throw ConfigError("halfwidth_sigmas must be positive, got " +
                          std::to_string(halfwidth_sigmas));
    }
    if (grid_points < 5 || grid_points % 2 == 0) {
        throw ConfigError("grid_points must be odd and >= 5, got " + std::to_string(grid_points));
    }
}

std::pair<double, double> predictor(const ValueField& next, double x, int i, const TimeMesh& mesh,
                                    const FbsdeProblem& problem, const QuadratureRule& rule) {
    const double h = mesh.step();
    const double delta = mesh.alpha * h;
    const double t_mid = mesh.intermediate_time(i);
    const double t_next = mesh.time(i + 1);
    const auto euler_target = [&](double xp) {
        const double yn = next.y(xp);
        return yn + delta * problem.generator(t_next, yn, next.z(xp));
    };
    const double y_mid = expect(euler_target, x, t_mid, delta, problem, rule);
    const double z_mid = expect_weighted(euler_target, x, t_mid, delta, problem, rule) / delta;
    return {y_mid, z_mid};
}

std::pair<double, double> corrector(const ValueField& next, const ValueField& mid, double x, int i,
                                    const TimeMesh& mesh, const FbsdeProblem& problem,
                                    const QuadratureRule& rule) {
    const double h = mesh.step();
    const double alpha = mesh.alpha;
    const double t_i = mesh.time(i);
    const double t_mid = mesh.intermediate_time(i);
    const double t_next = mesh.time(i + 1);
    const double d1 = (1.0 - alpha) * h;  // exactly 0 at alpha = 1
    const double d2 = h;

    const auto gen_mid = [&](double xp) {
        return problem.generator(t_mid, mid.y(xp), mid.z(xp));
    };
    const auto gen_next = [&](double xp) {
        return problem.generator(t_next, next.y(xp), next.z(xp));
    };
    const double trailing_weight = h * (1.0 - 1.0 / (2.0 * alpha));
    const auto y_target = [&](double xp) {
        return next.y(xp) + trailing_weight * gen_next(xp);
    };
    const auto next_y = [&](double xp) { return next.y(xp); };
    const auto next_z = [&](double xp) { return next.z(xp); };

    const double y = h / (2.0 * alpha) * expect(gen_mid, x, t_i, d1, problem, rule) +
                     expect(y_target, x, t_i, d2, problem, rule);
    const double z = 2.0 / h * expect_weighted(next_y, x, t_i, d2, problem, rule) +
                     1.0 / alpha * expect_weighted(gen_mid, x, t_i, d1, problem, rule) +
                     (2.0 * alpha - 1.0) / alpha *
                         expect_weighted(gen_next, x, t_i, d2, problem, rule) -
                     expect(next_z, x, t_i, d2, problem, rule);
    return {y, z};
}

ValueField backward_step(const ValueField& next, int i, const TimeMesh& mesh,
                         const FbsdeProblem& problem, const SchemeParams& params,
                         const QuadratureRule& rule, std::uint64_t* scratch_oob) {
    if (params.alpha != mesh.alpha) {
        throw ConfigError("backward_step: params.alpha disagrees with the mesh");
    }
    const SpatialGrid& grid = next.grid;
    const std::size_t m = grid.points.size();

    std::vector<double> y_mid(m), z_mid(m);
    parallel_for(m, [&](std::size_t j) {
        const auto [ym, zm] = predictor(next, grid.points[j], i, mesh, problem, rule);
        y_mid[j] = ym;
        z_mid[j] = zm;
    });
    ValueField mid;
    try {
        mid = field_from_values(grid, mesh.intermediate_time(i), std::move(y_mid),
                                std::move(z_mid));
    } catch (const NumericalError& e) {
        throw NumericalError("predictor failed at time level " + std::to_string(i) + ": " +
                             e.what());
    }

    std::vector<double> y_new(m), z_new(m);
    parallel_for(m, [&](std::size_t j) {
        const auto [y, z] = corrector(next, mid, grid.points[j], i, mesh, problem, rule);
        y_new[j] = y;
        z_new[j] = z;
    });
    ValueField out;
    try {
        out = field_from_values(grid, mesh.time(i), std::move(y_new), std::move(z_new));
    } catch (const NumericalError& e) {
        throw NumericalError("corrector failed at time level " + std::to_string(i) + ": " +
                             e.what());
    }
    if (scratch_oob) *scratch_oob += mid.out_of_domain_count();
    return out;
}

SolveResult solve(const FbsdeProblem& problem, const SchemeParams& params, int num_steps,
                  bool keep_fields) {
    params.validate();
    if (num_steps < 1) {
        throw ConfigError("number of time steps must be >= 1, got " + std::to_string(num_steps));
    }
    const auto clock_start = std::chrono::steady_clock::now();

    const TimeMesh mesh{num_steps, problem.terminal_time, params.alpha};
    const QuadratureRule rule = hermite_rule(params.quad_order);
    const SpatialGrid grid = build_grid(problem, params, mesh);

    std::vector<ValueField> fields(num_steps + 1);
    fields[num_steps] =
        field_from_functions(grid, problem.terminal_time, problem.terminal_y, problem.terminal_z);

    std::uint64_t scratch_oob = 0;
    for (int i = num_steps - 1; i >= 0; --i) {
        fields[i] = backward_step(fields[i + 1], i, mesh, problem, params, rule, &scratch_oob);
    }

    SolveResult result;
    result.y0 = fields[0].y_spline.eval(problem.x0);
    result.z0 = fields[0].z_spline.eval(problem.x0);
    if (problem.exact_y) result.err_y = std::abs(problem.exact_y(0.0, problem.x0) - result.y0);
    if (problem.exact_z) result.err_z = std::abs(problem.exact_z(0.0, problem.x0) - result.z0);

    result.out_of_domain_evals = scratch_oob;
    for (const ValueField& f : fields) result.out_of_domain_evals += f.out_of_domain_count();
    if (keep_fields) result.fields = std::move(fields);

    const auto clock_end = std::chrono::steady_clock::now();
    result.wall_seconds = std::chrono::duration<double>(clock_end - clock_start).count();
    return result;
}

}  // namespace bsde
