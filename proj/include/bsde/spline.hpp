#pragma once

#include <atomic>
#include <cstdint>
#include <vector>

namespace bsde {

/// Not-a-knot cubic spline interpolant. Immutable after fit; evaluation is
/// concurrency-safe. Outside the knot hull the value is continued linearly
/// from the nearest endpoint (value and first derivative), and an internal
/// out-of-domain counter is incremented for diagnostics.
class CubicSpline {
public:
    CubicSpline() = default;

    /// Fits the not-a-knot spline through (knots, values). Requires at least
    /// 4 strictly increasing knots and matching lengths; throws ConfigError
    /// otherwise. Deterministic: identical inputs give bit-identical splines.
    static CubicSpline fit(std::vector<double> knots, std::vector<double> values);

    /// Spline value at x, linear extension outside the hull. Throws
    /// NumericalError for non-finite x.
    double eval(double x) const;
    double operator()(double x) const { return eval(x); }

    /// First derivative at x (the linear extension keeps the endpoint slope).
    double derivative(double x) const;
    /// Second derivative at x (zero outside the hull).
    double second_derivative(double x) const;

    const std::vector<double>& knots() const { return x_; }
    const std::vector<double>& values() const { return y_; }
    double hull_min() const { return x_.front(); }
    double hull_max() const { return x_.back(); }

    /// Number of evaluations that fell outside the knot hull so far.
    std::uint64_t out_of_domain_count() const { return oob_.load(std::memory_order_relaxed); }

    CubicSpline(const CubicSpline& other);
    CubicSpline& operator=(const CubicSpline& other);
    CubicSpline(CubicSpline&& other) noexcept;
    CubicSpline& operator=(CubicSpline&& other) noexcept;
    ~CubicSpline() = default;

private:
    // piece i on [x_i, x_{i+1}]: y_i + c1 dx + c2 dx^2 + c3 dx^3
    std::vector<double> x_, y_, c1_, c2_, c3_;
    double left_slope_ = 0.0;
    double right_slope_ = 0.0;
    double right_value_ = 0.0;
    mutable std::atomic<std::uint64_t> oob_{0};

    std::size_t piece_index(double x) const;
};

}  // namespace bsde
