#include "cn_oracle.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "bsde/errors.hpp"
#include "bsde/fields.hpp"
#include "bsde/quadrature.hpp"
#include "bsde/spline.hpp"

namespace bsde::testing {

CnResult crank_nicolson_full(const FbsdeProblem& problem, const SchemeParams& params,
                             int num_steps) {
    if (params.alpha != 1.0) throw ConfigError("the Crank-Nicolson oracle requires alpha = 1");
    params.validate();

    const TimeMesh mesh{num_steps, problem.terminal_time, 1.0};
    const double h = mesh.step();
    const QuadratureRule rule = hermite_rule(params.quad_order);
    const SpatialGrid grid = build_grid(problem, params, mesh);
    const std::size_t m = grid.points.size();
    constexpr double inv_sqrtpi = std::numbers::inv_sqrtpi;

    std::vector<double> y(m), z(m);
    for (std::size_t j = 0; j < m; ++j) {
        y[j] = problem.terminal_y(grid.points[j]);
        z[j] = problem.terminal_z(grid.points[j]);
    }
    CubicSpline ys = CubicSpline::fit(grid.points, y);
    CubicSpline zs = CubicSpline::fit(grid.points, z);

    for (int i = num_steps - 1; i >= 0; --i) {
        const double t_i = mesh.time(i);
        const double t_next = mesh.time(i + 1);
        std::vector<double> y_new(m), z_new(m);
        for (std::size_t j = 0; j < m; ++j) {
            const double x = grid.points[j];
            const double mean = x + problem.drift(t_i, x) * h;
            const double dw_scale = std::sqrt(2.0 * h);
            const double scale = problem.diffusion(t_i, x) * dw_scale;

            // Euler predictor to t_{i+1}: ey = E[Y + h f], ez = E[dW (Y + h f)] / h
            double sum_g = 0.0, sum_gw = 0.0;
            double sum_corr = 0.0, sum_yw = 0.0, sum_fw = 0.0, sum_z = 0.0;
            for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
                const double xk = mean + scale * rule.nodes[k];
                const double dw = dw_scale * rule.nodes[k];
                const double yk = ys.eval(xk);
                const double zk = zs.eval(xk);
                const double fk = problem.generator(t_next, yk, zk);
                const double gk = yk + h * fk;
                const double w = rule.weights[k];
                sum_g += w * gk;
                sum_gw += w * dw * gk;
                sum_corr += w * (yk + h * (1.0 - 1.0 / 2.0) * fk);
                sum_yw += w * dw * yk;
                sum_fw += w * dw * fk;
                sum_z += w * zk;
            }
            const double y_pred = sum_g * inv_sqrtpi;
            const double z_pred = sum_gw * inv_sqrtpi / h;

            // trapezoidal corrector
            y_new[j] = h / 2.0 * problem.generator(t_i, y_pred, z_pred) + sum_corr * inv_sqrtpi;
            z_new[j] = 2.0 / h * (sum_yw * inv_sqrtpi) + sum_fw * inv_sqrtpi - sum_z * inv_sqrtpi;
        }
        y = std::move(y_new);
        z = std::move(z_new);
        ys = CubicSpline::fit(grid.points, y);
        zs = CubicSpline::fit(grid.points, z);
    }
    CnResult result;
    result.y0 = ys.eval(problem.x0);
    result.z0 = zs.eval(problem.x0);
    result.grid = grid.points;
    result.y_values = std::move(y);
    result.z_values = std::move(z);
    return result;
}

std::pair<double, double> crank_nicolson_solve(const FbsdeProblem& problem,
                                               const SchemeParams& params, int num_steps) {
    const CnResult res = crank_nicolson_full(problem, params, num_steps);
    return {res.y0, res.z0};
}

}  // namespace bsde::testing
