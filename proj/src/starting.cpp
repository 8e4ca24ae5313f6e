#include "subcalc/starting.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "subcalc/gridops.hpp"
#include "subcalc/kernels.hpp"
#include "subcalc/special.hpp"
#include "subcalc/weights.hpp"

namespace subcalc {

namespace {

// Integer powers of grid indices. The origin sample of a singular family
// member (negative exponent) is taken as 0: the scheme never legitimately
// samples a pole, and the correction absorbs the resulting defect.
long double pw(std::size_t k, double gamma) {
    if (k == 0) return gamma == 0.0 ? 1.0L : 0.0L;
    return powl(static_cast<long double>(k), static_cast<long double>(gamma));
}

void require_same_spec(const OperatorSpec& spec, const StartingWeightSet& sws) {
    if (spec.alpha != sws.spec.alpha || spec.sigma != sws.spec.sigma || spec.p != sws.spec.p
        || std::fabs(spec.h - sws.spec.h) > 1e-12 * spec.h)
        throw std::invalid_argument("starting weights were built for a different operator spec");
}

// Dense LU with partial pivoting in long double; n is tiny (<= 8).
struct LU {
    int n = 0;
    std::vector<long double> a;  // row-major, factored in place
    std::vector<int> piv;

    // returns false on a (numerically) singular pivot
    bool factor() {
        piv.resize(n);
        for (int c = 0; c < n; ++c) {
            int best = c;
            for (int i = c + 1; i < n; ++i)
                if (fabsl(a[i * n + c]) > fabsl(a[best * n + c])) best = i;
            piv[c] = best;
            if (best != c)
                for (int j = 0; j < n; ++j) std::swap(a[c * n + j], a[best * n + j]);
            if (a[c * n + c] == 0.0L) return false;
            for (int i = c + 1; i < n; ++i) {
                const long double m = a[i * n + c] / a[c * n + c];
                a[i * n + c] = m;
                for (int j = c + 1; j < n; ++j) a[i * n + j] -= m * a[c * n + j];
            }
        }
        return true;
    }

    void solve(std::vector<long double>& b) const {
        // factor() swaps whole rows, so the permutation must be applied to
        // b in full before the triangular sweeps.
        for (int c = 0; c < n; ++c)
            if (piv[c] != c) std::swap(b[c], b[piv[c]]);
        for (int c = 0; c < n; ++c)
            for (int i = c + 1; i < n; ++i) b[i] -= a[i * n + c] * b[c];
        for (int i = n - 1; i >= 0; --i) {
            for (int j = i + 1; j < n; ++j) b[i] -= a[i * n + j] * b[j];
            b[i] /= a[i * n + i];
        }
    }
};

}  // namespace

int default_starting_count(int p, double beta) {
    const int m = static_cast<int>(std::floor(static_cast<double>(p) - beta)) + 1;
    return m < 1 ? 1 : m;
}

double error_functional(const OperatorSpec& spec, double exponent, std::size_t n) {
    spec.validate();
    if (!(exponent > -1.0)) throw std::invalid_argument("error_functional: exponent must exceed -1");
    if (n < 1) throw std::invalid_argument("error_functional: n must be at least 1");
    OperatorSpec flat = spec;
    flat.sigma = 0.0;
    const WeightTable l = weights(flat, n);
    long double S = 0.0L;
    for (std::size_t m = 0; m <= n; ++m) S += static_cast<long double>(l.g[m]) * pw(n - m, exponent);
    const double G = gamma_ratio(exponent + 1.0, exponent + 1.0 - spec.alpha);
    const long double bracket = S - static_cast<long double>(G) * pw(n, exponent - spec.alpha);
    return std::pow(spec.h, exponent - spec.alpha) * std::exp(-spec.sigma * static_cast<double>(n) * spec.h)
         * static_cast<double>(bracket);
}

StartingWeightSet starting_weights(const OperatorSpec& spec, double beta, int r, std::size_t N) {
    spec.validate();
    if (r < 1) throw std::invalid_argument("starting_weights: r must be at least 1");
    if (r > 8)
        throw conditioning_error("starting_weights: r > 8 makes the power-node system too ill-conditioned");
    if (!(beta > 0.0) && beta == std::floor(beta))
        throw std::invalid_argument("starting_weights: beta must avoid 0, -1, -2, ...");
    if (!(beta > 0.0))
        throw std::invalid_argument("starting_weights: beta must be positive so the family is integrable");
    if (spec.alpha < 0.0 && !(beta > std::ceil(-spec.alpha)))
        throw std::invalid_argument("starting_weights: alpha < 0 requires beta > ceil(-alpha)");
    if (N < 1) throw std::invalid_argument("starting_weights: N must be at least 1");

    OperatorSpec flat = spec;
    flat.sigma = 0.0;
    const WeightTable l = weights(flat, N);

    // Row-independent r x r system: only the right-hand side changes with n,
    // so factor the node matrix once.
    LU lu;
    lu.n = r;
    lu.a.resize(static_cast<std::size_t>(r) * r);
    for (int q = 0; q < r; ++q) {
        const double gq = static_cast<double>(q) + beta - 1.0;
        for (int j = 1; j <= r; ++j)
            lu.a[static_cast<std::size_t>(q) * r + (j - 1)] =
                static_cast<long double>(std::exp(-spec.sigma * j * spec.h)) * pw(j, gq);
    }
    if (!lu.factor())
        throw conditioning_error("starting_weights: singular correction-node system");

    std::vector<double> G(r);
    for (int q = 0; q < r; ++q) {
        const double gq = static_cast<double>(q) + beta - 1.0;
        G[q] = gamma_ratio(gq + 1.0, gq + 1.0 - spec.alpha);
    }

    StartingWeightSet sws;
    sws.spec = spec;
    sws.beta = beta;
    sws.r = r;
    sws.N = N;
    sws.kappa.resize(N * static_cast<std::size_t>(r));
    std::vector<long double> b(r);
    for (std::size_t n = 1; n <= N; ++n) {
        const long double damp = expl(-static_cast<long double>(spec.sigma) * n * spec.h);
        for (int q = 0; q < r; ++q) {
            const double gq = static_cast<double>(q) + beta - 1.0;
            // b_q = e^{-sigma n h} (G_q n^{gq - alpha} - sum_m l_m (n-m)^{gq});
            // the bracket cancels sharply, hence the long double sums
            long double S = 0.0L;
            for (std::size_t m = 0; m <= n; ++m)
                S += static_cast<long double>(l.g[m]) * pw(n - m, gq);
            b[q] = damp * (static_cast<long double>(G[q]) * pw(n, gq - spec.alpha) - S);
        }
        lu.solve(b);
        for (int j = 0; j < r; ++j) sws.kappa[(n - 1) * r + j] = static_cast<double>(b[j]);
    }
    return sws;
}

GridFunction corrected_apply(const OperatorSpec& spec, const StartingWeightSet& sws,
                             const GridFunction& f) {
    spec.validate();
    require_same_spec(spec, sws);
    detail::require_matching_h(spec, f);
    const std::size_t N = f.values.size() - 1;
    if (N < static_cast<std::size_t>(sws.r))
        throw std::invalid_argument("corrected_apply: grid must reach past the correction nodes");
    if (sws.N < N) throw std::invalid_argument("corrected_apply: starting weights cover too few rows");

    GridFunction out = apply(spec, f);
    const double scale = std::pow(spec.h, -spec.alpha);
    for (std::size_t n = 1; n <= N; ++n) {
        double c = 0.0;
        for (int j = 1; j <= sws.r; ++j) c += sws.at(n, j) * f.values[j];
        out.values[n] += scale * c;
    }
    return out;
}

GridFunction corrected_solve(const OperatorSpec& spec, const StartingWeightSet& sws,
                             const GridFunction& rhs, double f0) {
    spec.validate();
    require_same_spec(spec, sws);
    detail::require_matching_h(spec, rhs);
    const std::size_t N = rhs.values.size() - 1;
    const int r = sws.r;
    if (N < static_cast<std::size_t>(r))
        throw std::invalid_argument("corrected_solve: grid must reach past the correction nodes");
    if (sws.N < N) throw std::invalid_argument("corrected_solve: starting weights cover too few rows");

    const WeightTable t = weights(spec, N);
    const double ha = std::pow(spec.h, spec.alpha);

    GridFunction f;
    f.a = rhs.a;
    f.h = rhs.h;
    f.values.assign(N + 1, 0.0);
    f.values[0] = f0;

    // The correction writes kappa_{n,j} f_j into every row, so rows 1..r
    // form a dense block in f_1..f_r; solve it first.
    LU lu;
    lu.n = r;
    lu.a.assign(static_cast<std::size_t>(r) * r, 0.0L);
    std::vector<long double> b(r);
    for (int n = 1; n <= r; ++n) {
        for (int k = 1; k <= r; ++k) {
            long double a = sws.at(n, k);
            if (k <= n) a += t.g[n - k];
            lu.a[static_cast<std::size_t>(n - 1) * r + (k - 1)] = a;
        }
        b[n - 1] = static_cast<long double>(ha) * rhs.values[n] - static_cast<long double>(t.g[n]) * f0;
    }
    if (!lu.factor()) throw conditioning_error("corrected_solve: singular leading block");
    lu.solve(b);
    for (int k = 1; k <= r; ++k) f.values[k] = static_cast<double>(b[k - 1]);

    // Forward substitution for the rest; acc_i carries the already-settled
    // convolution history as in solve().
    std::vector<double> acc(N + 1, 0.0);
    for (int k = 1; k <= r && static_cast<std::size_t>(k) < N; ++k)
        kernels::axpy(acc.data() + k + 1, t.g.data() + 1, f.values[k], N - k);
    for (std::size_t i = r + 1; i <= N; ++i) {
        double kdot = 0.0;
        for (int j = 1; j <= r; ++j) kdot += sws.at(i, j) * f.values[j];
        f.values[i] = (ha * rhs.values[i] - t.g[i] * f0 - acc[i] - kdot) / t.g[0];
        if (i < N) kernels::axpy(acc.data() + i + 1, t.g.data() + 1, f.values[i], N - i);
    }
    return f;
}

}  // namespace subcalc
