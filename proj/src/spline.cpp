#include "bsde/spline.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "bsde/errors.hpp"

namespace bsde {

namespace {

// Tridiagonal solve (Thomas); diag/rhs are overwritten.
void solve_tridiagonal(std::vector<double>& sub, std::vector<double>& diag,
                       std::vector<double>& super, std::vector<double>& rhs,
                       std::vector<double>& out) {
    const std::size_t n = diag.size();
    for (std::size_t i = 1; i < n; ++i) {
        const double m = sub[i] / diag[i - 1];
        diag[i] -= m * super[i - 1];
        rhs[i] -= m * rhs[i - 1];
    }
    out.resize(n);
    out[n - 1] = rhs[n - 1] / diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) {
        out[i] = (rhs[i] - super[i] * out[i + 1]) / diag[i];
    }
}

}  // namespace

CubicSpline CubicSpline::fit(std::vector<double> knots, std::vector<double> values) {
    if (knots.size() != values.size()) {
        throw ConfigError("spline knots/values length mismatch: " + std::to_string(knots.size()) +
                          " vs " + std::to_string(values.size()));
    }
    const std::size_t n = knots.size();
    if (n < 4) {
        throw ConfigError("not-a-knot spline needs at least 4 points, got " + std::to_string(n));
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (!(knots[i] < knots[i + 1])) {
            throw ConfigError("spline knots must be strictly increasing near index " +
                              std::to_string(i));
        }
    }

    std::vector<double> h(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) h[i] = knots[i + 1] - knots[i];

    // Second-derivative (moment) system for M_1..M_{n-2}; the not-a-knot ends
    //   M_0 = (1+r) M_1 - r M_2,          r = h_0 / h_1,
    //   M_{n-1} = (1+s) M_{n-2} - s M_{n-3},  s = h_{n-2} / h_{n-3},
    // are eliminated into the first and last interior rows.
    const std::size_t m = n - 2;
    std::vector<double> sub(m, 0.0), diag(m, 0.0), super(m, 0.0), rhs(m, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double hl = h[i - 1];
        const double hr = h[i];
        const double mu = hl / (hl + hr);
        const double lam = hr / (hl + hr);
        const double d = 6.0 *
                         ((values[i + 1] - values[i]) / hr - (values[i] - values[i - 1]) / hl) /
                         (hl + hr);
        const std::size_t row = i - 1;
        sub[row] = mu;
        diag[row] = 2.0;
        super[row] = lam;
        rhs[row] = d;
    }
    {
        const double r = h[0] / h[1];
        diag[0] += sub[0] * (1.0 + r);
        super[0] -= sub[0] * r;
        sub[0] = 0.0;
        const double s = h[n - 2] / h[n - 3];
        diag[m - 1] += super[m - 1] * (1.0 + s);
        sub[m - 1] -= super[m - 1] * s;
        super[m - 1] = 0.0;
    }

    std::vector<double> interior;
    solve_tridiagonal(sub, diag, super, rhs, interior);

    std::vector<double> moments(n);
    for (std::size_t i = 0; i < m; ++i) moments[i + 1] = interior[i];
    {
        const double r = h[0] / h[1];
        moments[0] = (1.0 + r) * moments[1] - r * moments[2];
        const double s = h[n - 2] / h[n - 3];
        moments[n - 1] = (1.0 + s) * moments[n - 2] - s * moments[n - 3];
    }

    CubicSpline out;
    out.x_ = std::move(knots);
    out.y_ = std::move(values);
    out.c1_.resize(n - 1);
    out.c2_.resize(n - 1);
    out.c3_.resize(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        out.c1_[i] = (out.y_[i + 1] - out.y_[i]) / h[i] -
                     h[i] * (2.0 * moments[i] + moments[i + 1]) / 6.0;
        out.c2_[i] = moments[i] / 2.0;
        out.c3_[i] = (moments[i + 1] - moments[i]) / (6.0 * h[i]);
    }
    out.left_slope_ = out.c1_.front();
    const double hl = h[n - 2];
    out.right_slope_ = out.c1_[n - 2] + 2.0 * out.c2_[n - 2] * hl + 3.0 * out.c3_[n - 2] * hl * hl;
    out.right_value_ = out.y_.back();
    return out;
}

std::size_t CubicSpline::piece_index(double x) const {
    const auto it = std::upper_bound(x_.begin(), x_.end(), x);
    const std::size_t idx = static_cast<std::size_t>(it - x_.begin());
    if (idx == 0) return 0;
    return std::min(idx - 1, x_.size() - 2);
}

double CubicSpline::eval(double x) const {
    if (x_.empty()) throw ConfigError("spline evaluated before fit");
    if (!std::isfinite(x)) {
        throw NumericalError("spline evaluated at non-finite abscissa");
    }
    if (x < x_.front()) {
        oob_.fetch_add(1, std::memory_order_relaxed);
        return y_.front() + left_slope_ * (x - x_.front());
    }
    if (x > x_.back()) {
        oob_.fetch_add(1, std::memory_order_relaxed);
        return right_value_ + right_slope_ * (x - x_.back());
    }
    const std::size_t i = piece_index(x);
    const double dx = x - x_[i];
    return y_[i] + dx * (c1_[i] + dx * (c2_[i] + dx * c3_[i]));
}

double CubicSpline::derivative(double x) const {
    if (x_.empty()) throw ConfigError("spline evaluated before fit");
    if (!std::isfinite(x)) {
        throw NumericalError("spline derivative at non-finite abscissa");
    }
    if (x < x_.front()) return left_slope_;
    if (x > x_.back()) return right_slope_;
    const std::size_t i = piece_index(x);
    const double dx = x - x_[i];
    return c1_[i] + dx * (2.0 * c2_[i] + dx * 3.0 * c3_[i]);
}

double CubicSpline::second_derivative(double x) const {
    if (!std::isfinite(x)) {
        throw NumericalError("spline second derivative at non-finite abscissa");
    }
    if (x < x_.front() || x > x_.back()) return 0.0;
    const std::size_t i = piece_index(x);
    const double dx = x - x_[i];
    return 2.0 * c2_[i] + 6.0 * c3_[i] * dx;
}

CubicSpline::CubicSpline(const CubicSpline& other)
    : x_(other.x_),
      y_(other.y_),
      c1_(other.c1_),
      c2_(other.c2_),
      c3_(other.c3_),
      left_slope_(other.left_slope_),
      right_slope_(other.right_slope_),
      right_value_(other.right_value_),
      oob_(other.oob_.load(std::memory_order_relaxed)) {}

CubicSpline& CubicSpline::operator=(const CubicSpline& other) {
    if (this != &other) {
        x_ = other.x_;
        y_ = other.y_;
        c1_ = other.c1_;
        c2_ = other.c2_;
        c3_ = other.c3_;
        left_slope_ = other.left_slope_;
        right_slope_ = other.right_slope_;
        right_value_ = other.right_value_;
        oob_.store(other.oob_.load(std::memory_order_relaxed), std::memory_order_relaxed);
    }
    return *this;
}

CubicSpline::CubicSpline(CubicSpline&& other) noexcept
    : x_(std::move(other.x_)),
      y_(std::move(other.y_)),
      c1_(std::move(other.c1_)),
      c2_(std::move(other.c2_)),
      c3_(std::move(other.c3_)),
      left_slope_(other.left_slope_),
      right_slope_(other.right_slope_),
      right_value_(other.right_value_),
      oob_(other.oob_.load(std::memory_order_relaxed)) {}

CubicSpline& CubicSpline::operator=(CubicSpline&& other) noexcept {
    if (this != &other) {
        x_ = std::move(other.x_);
        y_ = std::move(other.y_);
        c1_ = std::move(other.c1_);
        c2_ = std::move(other.c2_);
        c3_ = std::move(other.c3_);
        left_slope_ = other.left_slope_;
        right_slope_ = other.right_slope_;
        right_value_ = other.right_value_;
        oob_.store(other.oob_.load(std::memory_order_relaxed), std::memory_order_relaxed);
    }
    return *this;
}

}  // namespace bsde
