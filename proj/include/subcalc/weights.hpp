// Convolution quadrature weights. The generating function is the alpha-th
// power of the p-step backward-difference polynomial evaluated at
// e^{-sigma h} zeta; its power-series coefficients are the weights
//   g_m = e^{-sigma m h} l_m,
// where l_m are the undamped (sigma = 0) coefficients. alpha follows the
// signed convention of OperatorSpec: positive for the derivative operator,
// negative for the integral.
#pragma once

#include <cstddef>
#include <vector>

#include "subcalc/types.hpp"

namespace subcalc {

// Exact rational coefficient; kept exact until the final power step.
struct Rational {
    long long num = 0;
    long long den = 1;
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// Coefficients u_0..u_p of sum_{i=1}^p (1/i)(1 - w)^i in the variable w,
// with w standing for e^{-sigma h} zeta. u_0 is the p-th harmonic number.
struct GeneratingPolynomial {
    int p = 0;
    std::vector<Rational> coeffs;
};

struct WeightTable {
    OperatorSpec spec;
    std::vector<double> g;
};

GeneratingPolynomial generating_polynomial(int p);

// Weights g_0..g_N for the given operator. alpha == 0 yields the impulse
// table (1, 0, 0, ...), the discrete identity.
WeightTable weights(const OperatorSpec& spec, std::size_t N);

// Consistency defect |h^A sum_{m<=N} kappa_m zeta^m - 1| at zeta =
// e^{sigma h} e^{-h}, with A = |alpha| and kappa_m the integral-convention
// weights of order A. The damping factors in kappa_m cancel against the
// evaluation point, so the defect does not depend on sigma. An order-p
// scheme makes this O(h^p); at fine h the true defect sits below double
// rounding noise, so the series is summed in extended precision.
// Throws convergence_error when the truncation tail dominates the defect
// (N too small for this h).
double consistency_defect(const OperatorSpec& spec, std::size_t N);

}  // namespace subcalc
