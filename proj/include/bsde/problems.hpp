#pragma once

#include <functional>
#include <optional>
#include <string>

namespace bsde {

using CoefficientFn = std::function<double(double t, double x)>;
using GeneratorFn = std::function<double(double t, double y, double z)>;
using SpatialFn = std::function<double(double x)>;

/// Data of a decoupled forward-backward problem:
///
///   dX = b(t,X) dt + sigma(t,X) dW,      X_0 = x0,
///   -dY = f(t,Y,Z) dt - Z dW,            Y_T = terminal_y(X_T).
///
/// terminal_z supplies the terminal value of the Z process (the spatial
/// derivative of the value function times sigma at t = T); the backward
/// scheme needs it alongside terminal_y. Optional closed-form solutions
/// enable error reporting and convergence studies.
struct FbsdeProblem {
    std::string name;
    double terminal_time = 1.0;
    double x0 = 0.0;
    CoefficientFn drift;
    CoefficientFn diffusion;
    GeneratorFn generator;
    SpatialFn terminal_y;
    SpatialFn terminal_z;
    std::function<double(double t, double x)> exact_y;  // may be empty
    std::function<double(double t, double x)> exact_z;  // may be empty

    bool has_exact() const { return exact_y && exact_z; }
};

/// Benchmark with generator f(y) = -y^3 + 2.5 y^2 - 1.5 y and logistic
/// terminal data on the Brownian state (b = 0, sigma = 1, T = 1, x0 = 0).
/// Closed form: Y_t = e^{x+t} / (e^{x+t} + 1), Z_t = e^{x+t} / (e^{x+t}+1)^2,
/// so (Y_0, Z_0) = (0.5, 0.25) at the origin.
FbsdeProblem example1();

/// Benchmark from the scalar FitzHugh-Nagumo reduction: generator
/// f(y) = -y^3 + (1+a) y^2 - a y, terminal data (1 + e^x)^{-1}, Brownian
/// state started at x0 (b = 0, sigma = 1, T = 1). Closed form:
/// Y_t = (1 + exp{x - (0.5-a)(T-t)})^{-1} with the matching derivative for Z.
FbsdeProblem example2(double a, double x0);

/// Derives the terminal Z data from the terminal condition by central finite
/// differences with step 1e-6 * max(1, |x|), for user problems without an
/// analytic derivative. Assumes sigma is evaluable at t = T.
SpatialFn terminal_z_from_phi(SpatialFn phi, CoefficientFn sigma, double terminal_time);

}  // namespace bsde
