#include "subcalc/gridops.hpp"

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "subcalc/fft.hpp"
#include "subcalc/kernels.hpp"
#include "subcalc/weights.hpp"

namespace subcalc {

namespace detail {

void require_matching_h(const OperatorSpec& spec, const GridFunction& f) {
    if (f.values.empty()) throw std::invalid_argument("grid function must hold at least one sample");
    if (!(f.h > 0.0)) throw std::invalid_argument("grid spacing must be positive");
    if (std::fabs(f.h - spec.h) > 1e-12 * spec.h)
        throw std::invalid_argument("grid spacing does not match spec.h");
}

}  // namespace detail

GridFunction apply(const OperatorSpec& spec, const GridFunction& f) {
    spec.validate();
    detail::require_matching_h(spec, f);
    const std::size_t N = f.values.size() - 1;
    const WeightTable t = weights(spec, N);
    const double scale = std::pow(spec.h, -spec.alpha);

    // Reversing f turns each prefix convolution into a contiguous dot
    // product, the form the SIMD kernels want.
    std::vector<double> fr(N + 1);
    for (std::size_t j = 0; j <= N; ++j) fr[j] = f.values[N - j];

    GridFunction out;
    out.a = f.a;
    out.h = f.h;
    out.values.resize(N + 1);
    for (std::size_t i = 0; i <= N; ++i)
        out.values[i] = scale * kernels::dot(t.g.data(), fr.data() + (N - i), i + 1);
    return out;
}

namespace {

struct SpectrumKey {
    std::uint64_t alpha_bits, sigma_bits, h_bits;
    int p;
    std::size_t N;
    bool operator<(const SpectrumKey& o) const {
        return std::tie(alpha_bits, sigma_bits, h_bits, p, N)
             < std::tie(o.alpha_bits, o.sigma_bits, o.h_bits, o.p, o.N);
    }
};

using Spectrum = std::vector<std::complex<double>>;

// Transform of g_0..g_N zero-padded to M = next_pow2(2N+1). The padding
// must stay zero beyond index N or the circular wrap would alias weight
// mass back into valid output indices, so the cache is keyed on N too.
std::shared_ptr<const Spectrum> weight_spectrum(const OperatorSpec& spec, std::size_t N, std::size_t M) {
    const SpectrumKey key{std::bit_cast<std::uint64_t>(spec.alpha),
                          std::bit_cast<std::uint64_t>(spec.sigma),
                          std::bit_cast<std::uint64_t>(spec.h), spec.p, N};
    static std::mutex mu;
    static std::map<SpectrumKey, std::shared_ptr<const Spectrum>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    const WeightTable t = weights(spec, N);
    auto spec_ptr = std::make_shared<Spectrum>(M);
    for (std::size_t m = 0; m <= N; ++m) (*spec_ptr)[m] = t.g[m];
    fft::forward(*spec_ptr);
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(key, spec_ptr);
    return cache[key];
}

}  // namespace

GridFunction apply_fast(const OperatorSpec& spec, const GridFunction& f) {
    spec.validate();
    detail::require_matching_h(spec, f);
    const std::size_t N = f.values.size() - 1;
    const std::size_t M = fft::next_pow2(2 * N + 1);
    const auto gs = weight_spectrum(spec, N, M);

    std::vector<std::complex<double>> fa(M);
    for (std::size_t i = 0; i <= N; ++i) fa[i] = f.values[i];
    fft::forward(fa);
    for (std::size_t i = 0; i < M; ++i) fa[i] *= (*gs)[i];
    fft::inverse(fa);

    const double scale = std::pow(spec.h, -spec.alpha);
    GridFunction out;
    out.a = f.a;
    out.h = f.h;
    out.values.resize(N + 1);
    for (std::size_t i = 0; i <= N; ++i) out.values[i] = scale * fa[i].real();
    return out;
}

GridFunction solve(const OperatorSpec& spec, const GridFunction& rhs, double f0) {
    spec.validate();
    if (!(spec.alpha > 0.0))
        throw std::invalid_argument("solve: spec.alpha must be positive (derivative convention)");
    detail::require_matching_h(spec, rhs);
    const std::size_t N = rhs.values.size() - 1;
    const WeightTable t = weights(spec, N);
    const double ha = std::pow(spec.h, spec.alpha);

    GridFunction f;
    f.a = rhs.a;
    f.h = rhs.h;
    f.values.assign(N + 1, 0.0);
    f.values[0] = f0;
    if (N == 0) return f;

    // acc_i accumulates sum_{1<=k<i} g_{i-k} f_k column by column, so each
    // determined f_i is pushed forward with one axpy instead of re-reading
    // the whole history per row.
    std::vector<double> acc(N + 1, 0.0);
    for (std::size_t i = 1; i <= N; ++i) {
        f.values[i] = (ha * rhs.values[i] - t.g[i] * f0 - acc[i]) / t.g[0];
        if (i < N) kernels::axpy(acc.data() + i + 1, t.g.data() + 1, f.values[i], N - i);
    }
    return f;
}

}  // namespace subcalc
