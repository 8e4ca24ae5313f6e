#include "subcalc/fft.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace subcalc::fft {

namespace {

constexpr double kPi = 3.14159265358979323846;

using Table = std::vector<std::complex<double>>;

// tw[k] = e^{-2 pi i k / n}, k < n/2; shared across threads once built
std::shared_ptr<const Table> twiddles(std::size_t n) {
    static std::mutex mu;
    static std::map<std::size_t, std::shared_ptr<const Table>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    auto t = std::make_shared<Table>(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k)
        (*t)[k] = std::polar(1.0, -2.0 * kPi * static_cast<double>(k) / static_cast<double>(n));
    cache.emplace(n, t);
    return t;
}

void bit_reverse(std::vector<std::complex<double>>& a) {
    const std::size_t n = a.size();
    std::size_t j = 0;
    for (std::size_t i = 1; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
}

}  // namespace

std::size_t next_pow2(std::size_t n) {
    std::size_t m = 1;
    while (m < n) m <<= 1;
    return m;
}

void forward(std::vector<std::complex<double>>& a) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0) throw std::invalid_argument("fft: size must be a power of two");
    if (n == 1) return;
    const auto tw = twiddles(n);
    bit_reverse(a);
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t step = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> w = (*tw)[k * step];
                const std::complex<double> u = a[i + k];
                const std::complex<double> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
            }
        }
    }
}

void inverse(std::vector<std::complex<double>>& a) {
    for (auto& z : a) z = std::conj(z);
    forward(a);
    const double s = 1.0 / static_cast<double>(a.size());
    for (auto& z : a) z = std::conj(z) * s;
}

}  // namespace subcalc::fft
