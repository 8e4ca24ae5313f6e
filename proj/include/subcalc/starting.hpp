// Starting-weight correction: per-row weights kappa_{n,j} at the first r
// nodes chosen so the scheme is exact on e^{-sigma t} t^{q+beta-1},
// q = 0..r-1, which restores order p for data with an x^{beta-1} layer.
#pragma once

#include "subcalc/types.hpp"

namespace subcalc {

struct StartingWeightSet {
    OperatorSpec spec;
    double beta = 1.0;
    int r = 0;
    std::size_t N = 0;                // rows built: n = 1..N
    std::vector<double> kappa;        // row-major, kappa[(n-1)*r + (j-1)]

    double at(std::size_t n, int j) const { return kappa[(n - 1) * r + (j - 1)]; }
};

// Number of correction nodes m with m+beta-1 <= p < m+beta (at least 1).
int default_starting_count(int p, double beta);

// Defect of the uncorrected scheme on f(t) = e^{-sigma t} t^{exponent} at
// node n: discrete application minus the closed-form operator value.
// exponent > -1, n >= 1.
double error_functional(const OperatorSpec& spec, double exponent, std::size_t n);

// Builds kappa rows 1..N by solving, per row, the r x r system
//   sum_j kappa_{n,j} e^{-sigma j h} j^{q+beta-1} = rhs_q(n),  q = 0..r-1,
// whose right-hand side cancels the uncorrected defect on the exactness
// family. The matrix is LU-factored once and reused for every row.
// Preconditions: r >= 1, beta not in {0, -1, -2, ...}, and beta > ceil(-alpha)
// for alpha < 0; r > 8 raises conditioning_error (the power nodes become
// too ill-conditioned to trust).
StartingWeightSet starting_weights(const OperatorSpec& spec, double beta, int r, std::size_t N);

// apply() plus the per-row correction h^{-alpha} sum_{j=1}^r kappa_{n,j} f_j.
GridFunction corrected_apply(const OperatorSpec& spec, const StartingWeightSet& sws,
                             const GridFunction& f);

// Solves the corrected system for f given rhs and f_0. The correction
// couples f_1..f_r into every row, so the leading r x r dense block is
// solved first, then forward substitution takes over. Unlike solve(),
// both signs of alpha are accepted (the integral-equation form needs
// alpha < 0). Throws conditioning_error if the leading block is singular.
GridFunction corrected_solve(const OperatorSpec& spec, const StartingWeightSet& sws,
                             const GridFunction& rhs, double f0);

}  // namespace subcalc
