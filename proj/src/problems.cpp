#include "bsde/problems.hpp"

#include <cmath>

namespace bsde {

namespace {

double logistic(double u) {
    const double e = std::exp(u);
    return e / (e + 1.0);
}

double logistic_slope(double u) {
    const double e = std::exp(u);
    const double d = e + 1.0;
    return e / (d * d);
}

}  // namespace

FbsdeProblem example1() {
    FbsdeProblem p;
    p.name = "example1";
    p.terminal_time = 1.0;
    p.x0 = 0.0;
    p.drift = [](double, double) { return 0.0; };
    p.diffusion = [](double, double) { return 1.0; };
    p.generator = [](double, double y, double) { return -y * y * y + 2.5 * y * y - 1.5 * y; };
    const double T = p.terminal_time;
    p.terminal_y = [T](double x) { return logistic(x + T); };
    p.terminal_z = [T](double x) { return logistic_slope(x + T); };
    p.exact_y = [](double t, double x) { return logistic(x + t); };
    p.exact_z = [](double t, double x) { return logistic_slope(x + t); };
    return p;
}

FbsdeProblem example2(double a, double x0) {
    FbsdeProblem p;
    p.name = "example2";
    p.terminal_time = 1.0;
    p.x0 = x0;
    p.drift = [](double, double) { return 0.0; };
    p.diffusion = [](double, double) { return 1.0; };
    p.generator = [a](double, double y, double) {
        return -y * y * y + (1.0 + a) * y * y - a * y;
    };
    p.terminal_y = [](double x) { return 1.0 / (1.0 + std::exp(x)); };
    p.terminal_z = [](double x) {
        const double e = std::exp(x);
        const double d = 1.0 + e;
        return -e / (d * d);
    };
    const double T = p.terminal_time;
    p.exact_y = [a, T](double t, double x) {
        return 1.0 / (1.0 + std::exp(x - (0.5 - a) * (T - t)));
    };
    p.exact_z = [a, T](double t, double x) {
        const double e = std::exp(x - (0.5 - a) * (T - t));
        const double d = 1.0 + e;
        return -e / (d * d);
    };
    return p;
}

SpatialFn terminal_z_from_phi(SpatialFn phi, CoefficientFn sigma, double terminal_time) {
    return [phi = std::move(phi), sigma = std::move(sigma), terminal_time](double x) {
        const double step = 1e-6 * std::max(1.0, std::abs(x));
        const double slope = (phi(x + step) - phi(x - step)) / (2.0 * step);
        return slope * sigma(terminal_time, x);
    };
}

}  // namespace bsde
