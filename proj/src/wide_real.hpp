// Extended-precision scalar used by the consistency-defect series. With GCC
// on x86-64 this is __float128 (about 33 decimal digits); elsewhere it falls
// back to long double.
#pragma once

#include <cmath>

#if defined(SUBCALC_HAVE_QUADMATH)
#include <quadmath.h>

namespace subcalc::detail {
using wide_real = __float128;
inline wide_real wide_exp(wide_real x) { return expq(x); }
inline wide_real wide_pow(wide_real x, wide_real y) { return powq(x, y); }
inline wide_real wide_fabs(wide_real x) { return fabsq(x); }
}  // namespace subcalc::detail

#else

namespace subcalc::detail {
using wide_real = long double;
inline wide_real wide_exp(wide_real x) { return std::exp(x); }
inline wide_real wide_pow(wide_real x, wide_real y) { return std::pow(x, y); }
inline wide_real wide_fabs(wide_real x) { return std::fabs(x); }
}  // namespace subcalc::detail

#endif
