// Grid-level operators: discrete convolution application of the weight
// table, its FFT-accelerated twin, and forward substitution for the
// triangular solve.
#pragma once

#include "subcalc/types.hpp"

namespace subcalc {

// out_i = h^{-alpha} sum_{m=0}^i g_m f_{i-m}. The signed alpha convention
// makes this the order-alpha derivative for alpha > 0 and the order
// |alpha| integral for alpha < 0. Throws std::invalid_argument if the grid
// spacing disagrees with spec.h beyond 1e-12 relative.
GridFunction apply(const OperatorSpec& spec, const GridFunction& f);

// Same result as apply within 1e-12 relative max-norm, via circular
// convolution on a power-of-two grid of size >= 2N+1. The transformed
// weight spectrum is cached per spec and padded size, safe for concurrent
// reads.
GridFunction apply_fast(const OperatorSpec& spec, const GridFunction& f);

// Solve h^{-alpha} sum_{m=0}^i g_m f_{i-m} = rhs_i for i >= 1 with f_0
// prescribed, by forward substitution (g_0 = u_0^alpha > 0 always).
// Requires spec.alpha > 0; the corrected variant in starting.hpp also
// accepts the integral convention.
GridFunction solve(const OperatorSpec& spec, const GridFunction& rhs, double f0);

namespace detail {
// Shared precondition: |f.h - spec.h| <= 1e-12 * spec.h.
void require_matching_h(const OperatorSpec& spec, const GridFunction& f);
}  // namespace detail

}  // namespace subcalc
