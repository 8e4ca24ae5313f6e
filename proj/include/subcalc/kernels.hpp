// Low-level convolution kernels with runtime-dispatched SIMD variants.
// The scalar versions are the reference; the vector versions must agree
// with them to reassociation-level rounding (covered by the test suite).
#pragma once

#include <cstddef>

namespace subcalc::kernels {

enum class Backend { scalar, avx2, neon };

// Backend currently in use (auto-detected at first call).
Backend active_backend();

// Override the dispatch, e.g. to force the scalar path in tests.
// Throws std::invalid_argument if the backend is unavailable on this CPU.
void force_backend(Backend b);

const char* backend_name(Backend b);

// sum_{i<n} x[i]*y[i]
double dot(const double* x, const double* y, std::size_t n);

// y[i] += a*x[i] for i < n
void axpy(double* y, const double* x, double a, std::size_t n);

namespace detail {
double dot_scalar(const double* x, const double* y, std::size_t n);
void axpy_scalar(double* y, const double* x, double a, std::size_t n);
#if defined(__x86_64__) || defined(_M_X64)
double dot_avx2(const double* x, const double* y, std::size_t n);
void axpy_avx2(double* y, const double* x, double a, std::size_t n);
#endif
#if defined(__aarch64__)
double dot_neon(const double* x, const double* y, std::size_t n);
void axpy_neon(double* y, const double* x, double a, std::size_t n);
#endif
}  // namespace detail

}  // namespace subcalc::kernels
