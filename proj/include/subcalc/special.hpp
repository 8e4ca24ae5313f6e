// Gamma-function helpers. The reciprocal gamma is the natural object here:
// it is entire, and its zeros at 0, -1, -2, ... implement the convention
// that boundary terms with a gamma pole in the denominator drop out.
#pragma once

namespace subcalc {

// sin(pi*x) with the argument reduced exactly, accurate near integers.
double sinpi(double x);

// 1/Gamma(z) for any real z; exactly 0 at z = 0, -1, -2, ...
double rgamma(double z);

// Gamma(num)/Gamma(den) for num > 0 and any real den (0 at den poles).
double gamma_ratio(double num, double den);

}  // namespace subcalc
