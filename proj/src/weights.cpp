#include "subcalc/weights.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "wide_real.hpp"

namespace subcalc {

namespace {

long long binom_ll(int n, int k) {
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

Rational reduced(long long num, long long den) {
    if (den < 0) { num = -num; den = -den; }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
    return {num, den};
}

// Power-series exponentiation: given u_0..u_p (u_0 != 0) and real alpha,
// produce the coefficients w of (sum u_k z^k)^alpha from
//   m u_0 w_m = sum_{k=1}^{min(m,p)} (k(alpha+1) - m) u_k w_{m-k}.
template <typename Real>
std::vector<Real> series_power(const std::vector<Real>& u, Real alpha, std::size_t N) {
    const std::size_t p = u.size() - 1;
    std::vector<Real> w(N + 1);
    w[0] = detail::wide_pow(u[0], alpha);
    for (std::size_t m = 1; m <= N; ++m) {
        Real s = 0;
        const std::size_t kmax = m < p ? m : p;
        for (std::size_t k = 1; k <= kmax; ++k)
            s += (static_cast<Real>(k) * (alpha + 1) - static_cast<Real>(m)) * u[k] * w[m - k];
        w[m] = s / (static_cast<Real>(m) * u[0]);
    }
    return w;
}

// double instantiation avoids pulling wide_pow into the common path
std::vector<double> series_power_d(const std::vector<double>& u, double alpha, std::size_t N) {
    const std::size_t p = u.size() - 1;
    std::vector<double> w(N + 1);
    w[0] = std::pow(u[0], alpha);
    for (std::size_t m = 1; m <= N; ++m) {
        double s = 0.0;
        const std::size_t kmax = m < p ? m : p;
        for (std::size_t k = 1; k <= kmax; ++k)
            s += (static_cast<double>(k) * (alpha + 1.0) - static_cast<double>(m)) * u[k] * w[m - k];
        w[m] = s / (static_cast<double>(m) * u[0]);
    }
    return w;
}

}  // namespace

GeneratingPolynomial generating_polynomial(int p) {
    if (p < 1 || p > 5) throw std::domain_error("generating_polynomial: p must be in 1..5");
    // c_j = sum_{i=max(j,1)}^p (1/i) C(i,j) (-1)^j, assembled over the common
    // denominator lcm(1..p) so every intermediate stays an exact integer
    long long L = 1;
    for (int i = 2; i <= p; ++i) L = std::lcm(L, static_cast<long long>(i));
    GeneratingPolynomial gp;
    gp.p = p;
    gp.coeffs.resize(p + 1);
    for (int j = 0; j <= p; ++j) {
        long long num = 0;
        for (int i = std::max(j, 1); i <= p; ++i) num += (L / i) * binom_ll(i, j);
        if (j % 2 != 0) num = -num;
        gp.coeffs[j] = reduced(num, L);
    }
    return gp;
}

WeightTable weights(const OperatorSpec& spec, std::size_t N) {
    spec.validate();
    WeightTable t;
    t.spec = spec;
    t.g.assign(N + 1, 0.0);
    if (spec.alpha == 0.0) {  // identity operator
        t.g[0] = 1.0;
        return t;
    }
    const GeneratingPolynomial gp = generating_polynomial(spec.p);
    std::vector<double> u(gp.coeffs.size());
    for (std::size_t k = 0; k < u.size(); ++k) u[k] = gp.coeffs[k].value();
    const std::vector<double> l = series_power_d(u, spec.alpha, N);
    // one exp per entry keeps the damping factor at rounding accuracy for
    // every m, rather than letting a running product drift
    for (std::size_t m = 0; m <= N; ++m)
        t.g[m] = std::exp(-spec.sigma * static_cast<double>(m) * spec.h) * l[m];
    return t;
}

double consistency_defect(const OperatorSpec& spec, std::size_t N) {
    spec.validate();
    using detail::wide_real;
    const double A = std::fabs(spec.alpha);
    if (A == 0.0) return 0.0;

    const GeneratingPolynomial gp = generating_polynomial(spec.p);
    std::vector<wide_real> u(gp.coeffs.size());
    for (std::size_t k = 0; k < u.size(); ++k)
        u[k] = static_cast<wide_real>(gp.coeffs[k].num) / static_cast<wide_real>(gp.coeffs[k].den);

    // Integral-convention series kappa = u^{-A}. Its damped coefficients are
    // evaluated at zeta = e^{sigma h} e^{-h}; the damping cancels, leaving
    // sum_m l~_m e^{-m h} with l~ the coefficients of u^{-A}.
    const std::vector<wide_real> l = series_power<wide_real>(u, static_cast<wide_real>(-A), N);
    const wide_real q = detail::wide_exp(static_cast<wide_real>(-spec.h));
    wide_real sum = 0, qm = 1;
    for (std::size_t m = 0; m <= N; ++m) {
        sum += l[m] * qm;
        qm *= q;
    }
    const wide_real hA = detail::wide_pow(static_cast<wide_real>(spec.h), static_cast<wide_real>(A));
    const double defect = static_cast<double>(detail::wide_fabs(hA * sum - 1));

    // l~_m decays like m^{A-1} (up to A = 1.5 the growth of (m'/N)^{A-1}
    // over the tail's e^{-m h} range is a factor < 1.3), so a geometric
    // bound on the neglected tail with a 3x safety margin is reliable.
    const double lN = std::fabs(static_cast<double>(l[N]));
    const double tail = 3.0 * static_cast<double>(hA) * lN * std::exp(-(static_cast<double>(N) + 1.0) * spec.h)
                        / (1.0 - std::exp(-spec.h));
    if (tail > 0.25 * defect)
        throw convergence_error("consistency_defect: truncation tail dominates the defect; increase N",
                                defect, tail);
    return defect;
}

}  // namespace subcalc
