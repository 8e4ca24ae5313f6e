// Minimal power-of-two FFT used by the Toeplitz fast path. Twiddle factors
// come from cached per-size tables built with std::polar, not running
// products; the table lookup keeps large transforms near 1 ulp per stage,
// which the 1e-12 fast-path equivalence budget depends on.
#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace subcalc::fft {

std::size_t next_pow2(std::size_t n);

// In-place transforms; a.size() must be a power of two.
void forward(std::vector<std::complex<double>>& a);
void inverse(std::vector<std::complex<double>>& a);  // scales by 1/n

}  // namespace subcalc::fft
