#pragma once

#include <stdexcept>
#include <string>

namespace bsde {

/// Invalid configuration: bad parameter values, malformed grids, mismatched
/// inputs. Distinct from NumericalError so callers can map it to usage-level
/// exit codes.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Numerical evaluation failure (non-finite values, coefficient assumption
/// violated at an evaluated point). The message carries the offending
/// location.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace bsde
