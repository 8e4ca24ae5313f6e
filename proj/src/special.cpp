#include "subcalc/special.hpp"

#include <cmath>
#include <stdexcept>

namespace subcalc {

double sinpi(double x) {
    // reduce to |r| <= 1/2 so the sine argument never loses precision
    double n = std::nearbyint(x);
    double r = x - n;
    double s = std::sin(M_PI * r);
    // sin(pi*(n+r)) = (-1)^n sin(pi*r)
    return (std::fmod(std::fabs(n), 2.0) < 0.5) ? s : -s;
}

double rgamma(double z) {
    if (!std::isfinite(z)) throw std::invalid_argument("rgamma: argument must be finite");
    if (z > 0.0) return 1.0 / std::tgamma(z);
    if (z == std::floor(z)) return 0.0;  // pole of Gamma
    // reflection: 1/Gamma(z) = Gamma(1-z) sin(pi z)/pi
    return std::tgamma(1.0 - z) * sinpi(z) / M_PI;
}

double gamma_ratio(double num, double den) {
    if (!(num > 0.0)) throw std::invalid_argument("gamma_ratio: numerator argument must be positive");
    return std::tgamma(num) * rgamma(den);
}

}  // namespace subcalc
