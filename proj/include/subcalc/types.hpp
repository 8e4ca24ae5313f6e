// Core value types shared by every module: the operator descriptor, uniform
// grid samples, and the error types thrown by numerical routines.
#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace subcalc {

// Fixes which discrete operator is meant: alpha > 0 is the derivative of
// order alpha, alpha < 0 the integral of order -alpha, and alpha == 0 the
// identity shortcut. sigma is the exponential damping rate, p the scheme
// order, h the grid spacing.
struct OperatorSpec {
    double alpha = 0.0;
    double sigma = 0.0;
    int p = 1;
    double h = 1.0;

    void validate() const {
        if (!std::isfinite(alpha)) throw std::invalid_argument("OperatorSpec: alpha must be finite");
        if (!std::isfinite(sigma)) throw std::invalid_argument("OperatorSpec: sigma must be finite");
        if (p < 1 || p > 5) throw std::invalid_argument("OperatorSpec: p must be in 1..5");
        if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("OperatorSpec: h must be positive");
    }
};

// Samples f(a + i*h), i = 0..N, on a uniform grid.
struct GridFunction {
    double a = 0.0;
    double h = 1.0;
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
    double x(std::size_t i) const { return a + static_cast<double>(i) * h; }
};

// Thrown when an adaptive routine cannot reach its tolerance; carries the
// best available estimate and the residual error bound.
struct convergence_error : std::runtime_error {
    double estimate;
    double bound;
    convergence_error(const std::string& msg, double est, double bnd)
        : std::runtime_error(msg), estimate(est), bound(bnd) {}
};

// Thrown when a linear system is too ill-conditioned to trust.
struct conditioning_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace subcalc
