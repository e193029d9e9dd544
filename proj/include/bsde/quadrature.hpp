#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "bsde/errors.hpp"
#include "bsde/problems.hpp"

namespace bsde {

/// Gauss-Hermite rule in the physicists' convention: nodes are the roots of
/// the degree-K Hermite polynomial, weights integrate against e^{-x^2}.
/// Nodes are strictly increasing and exactly symmetric about 0; the weights
/// sum to sqrt(pi). Exact for polynomials of degree <= 2K - 1.
struct QuadratureRule {
    int order = 0;
    std::vector<double> nodes;
    std::vector<double> weights;

    double max_abs_node() const { return nodes.empty() ? 0.0 : std::abs(nodes.back()); }
};

/// Computes the order-K rule by Newton iteration on the three-term
/// recurrence of the orthonormal Hermite polynomials. Deterministic.
/// Throws ConfigError unless 1 <= K <= 64.
QuadratureRule hermite_rule(int order);

namespace detail {

[[noreturn]] void throw_nonfinite_integrand(double abscissa, double t);
[[noreturn]] void throw_nonpositive_diffusion(double value, double t, double x);
[[noreturn]] void throw_negative_increment(double delta);

struct GaussStep {
    double mean;
    double scale;  // sigma * sqrt(2 delta); Brownian increment is sqrt(2 delta) * node
    double dw_scale;

    GaussStep(const FbsdeProblem& problem, double x, double t, double delta) {
        const double sig = problem.diffusion(t, x);
        if (!(sig > 0.0)) throw_nonpositive_diffusion(sig, t, x);
        mean = x + problem.drift(t, x) * delta;
        dw_scale = std::sqrt(2.0 * delta);
        scale = sig * dw_scale;
    }
};

}  // namespace detail

/// One-step conditional expectation E[v(X_{t+delta}) | X_t = x] under the
/// Gaussian transition with coefficients frozen at the launch point (t, x).
/// delta = 0 short-circuits to v(x) bit-for-bit.
template <class V>
double expect(V&& v, double x, double t, double delta, const FbsdeProblem& problem,
              const QuadratureRule& rule) {
    if (delta < 0.0) detail::throw_negative_increment(delta);
    if (delta == 0.0) return v(x);
    const detail::GaussStep step(problem, x, t, delta);
    double acc = 0.0;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
        const double xk = step.mean + step.scale * rule.nodes[k];
        const double vk = v(xk);
        if (!std::isfinite(vk)) detail::throw_nonfinite_integrand(xk, t);
        acc += rule.weights[k] * vk;
    }
    return acc * std::numbers::inv_sqrtpi;
}

/// Brownian-weighted variant E[dW * v(X_{t+delta}) | X_t = x], where dW is
/// the increment of W over [t, t+delta] under the same frozen transition.
/// delta = 0 short-circuits to 0 bit-for-bit.
template <class V>
double expect_weighted(V&& v, double x, double t, double delta, const FbsdeProblem& problem,
                       const QuadratureRule& rule) {
    if (delta < 0.0) detail::throw_negative_increment(delta);
    if (delta == 0.0) return 0.0;
    const detail::GaussStep step(problem, x, t, delta);
    double acc = 0.0;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
        const double xk = step.mean + step.scale * rule.nodes[k];
        const double vk = v(xk);
        if (!std::isfinite(vk)) detail::throw_nonfinite_integrand(xk, t);
        acc += rule.weights[k] * (step.dw_scale * rule.nodes[k]) * vk;
    }
    return acc * std::numbers::inv_sqrtpi;
}

}  // namespace bsde
