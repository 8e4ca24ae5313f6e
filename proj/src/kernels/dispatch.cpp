// Runtime kernel selection. The best available backend is picked once; tests
// can pin a specific backend to compare results across implementations.
#include "subcalc/kernels.hpp"

#include <atomic>
#include <stdexcept>

namespace subcalc::kernels {

namespace {

bool backend_available(Backend b) {
    switch (b) {
        case Backend::scalar:
            return true;
        case Backend::avx2:
#if defined(__x86_64__) || defined(_M_X64)
            return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
            return false;
#endif
        case Backend::neon:
#if defined(__aarch64__)
            return true;
#else
            return false;
#endif
    }
    return false;
}

Backend detect() {
    if (backend_available(Backend::avx2)) return Backend::avx2;
    if (backend_available(Backend::neon)) return Backend::neon;
    return Backend::scalar;
}

std::atomic<Backend>& current() {
    static std::atomic<Backend> b{detect()};
    return b;
}

}  // namespace

Backend active_backend() { return current().load(std::memory_order_relaxed); }

void force_backend(Backend b) {
    if (!backend_available(b)) throw std::invalid_argument("force_backend: backend not available on this CPU");
    current().store(b, std::memory_order_relaxed);
}

const char* backend_name(Backend b) {
    switch (b) {
        case Backend::scalar: return "scalar";
        case Backend::avx2: return "avx2";
        case Backend::neon: return "neon";
    }
    return "?";
}

double dot(const double* x, const double* y, std::size_t n) {
    switch (active_backend()) {
#if defined(__x86_64__) || defined(_M_X64)
        case Backend::avx2: return detail::dot_avx2(x, y, n);
#endif
#if defined(__aarch64__)
        case Backend::neon: return detail::dot_neon(x, y, n);
#endif
        default: return detail::dot_scalar(x, y, n);
    }
}

void axpy(double* y, const double* x, double a, std::size_t n) {
    switch (active_backend()) {
#if defined(__x86_64__) || defined(_M_X64)
        case Backend::avx2: detail::axpy_avx2(y, x, a, n); return;
#endif
#if defined(__aarch64__)
        case Backend::neon: detail::axpy_neon(y, x, a, n); return;
#endif
        default: detail::axpy_scalar(y, x, a, n); return;
    }
}

}  // namespace subcalc::kernels
