#include "bsde/quadrature.hpp"

#include <cmath>
#include <string>

namespace bsde {

namespace detail {

void throw_nonfinite_integrand(double abscissa, double t) {
    throw NumericalError("non-finite integrand value at abscissa x=" + std::to_string(abscissa) +
                         ", t=" + std::to_string(t));
}

void throw_nonpositive_diffusion(double value, double t, double x) {
    throw NumericalError("diffusion coefficient must be positive, got " + std::to_string(value) +
                         " at (t,x)=(" + std::to_string(t) + "," + std::to_string(x) + ")");
}

void throw_negative_increment(double delta) {
    throw ConfigError("expectation increment must be >= 0, got " + std::to_string(delta));
}

namespace {

// Orthonormal Hermite recurrence evaluated at z; returns (p_K, p_{K-1}).
std::pair<double, double> hermite_pair(int order, double z) {
    constexpr double pi_quarter_inv = 0.7511255444649425;  // pi^{-1/4}
    double p1 = pi_quarter_inv;
    double p2 = 0.0;
    for (int j = 1; j <= order; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / j) * p2 - std::sqrt((j - 1.0) / j) * p3;
    }
    return {p1, p2};
}

}  // namespace

}  // namespace detail

QuadratureRule hermite_rule(int order) {
    if (order < 1 || order > 64) {
        throw ConfigError("Gauss-Hermite order must be in [1, 64], got " + std::to_string(order));
    }
    QuadratureRule rule;
    rule.order = order;
    rule.nodes.assign(order, 0.0);
    rule.weights.assign(order, 0.0);

    const int half = (order + 1) / 2;
    double z = 0.0;
    for (int i = 0; i < half; ++i) {
        // descending-root initial guesses, then Newton on the recurrence
        if (i == 0) {
            z = std::sqrt(2.0 * order + 1.0) - 1.85575 * std::pow(2.0 * order + 1.0, -0.16667);
        } else if (i == 1) {
            z -= 1.14 * std::pow(static_cast<double>(order), 0.426) / z;
        } else if (i == 2) {
            z = 1.86 * z - 0.86 * rule.nodes[order - 1];
        } else if (i == 3) {
            z = 1.91 * z - 0.91 * rule.nodes[order - 2];
        } else {
            z = 2.0 * z - rule.nodes[order - i + 1];
        }
        for (int iter = 0; iter < 100; ++iter) {
            const auto [p1, p2] = detail::hermite_pair(order, z);
            const double dp = std::sqrt(2.0 * order) * p2;
            const double z_prev = z;
            z = z_prev - p1 / dp;
            if (std::abs(z - z_prev) <= 1e-15 * std::max(1.0, std::abs(z))) break;
        }
        const bool middle = (order % 2 == 1) && (i == half - 1);
        if (middle) z = 0.0;  // exact center root for odd orders
        const auto [p1, p2] = detail::hermite_pair(order, z);
        (void)p1;
        const double dp = std::sqrt(2.0 * order) * p2;
        const double w = 2.0 / (dp * dp);
        rule.nodes[order - 1 - i] = z;
        rule.nodes[i] = -z;
        rule.weights[order - 1 - i] = w;
        rule.weights[i] = w;
    }
    return rule;
}

}  // namespace bsde
