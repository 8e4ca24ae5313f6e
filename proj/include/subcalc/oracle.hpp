// Ground-truth values for the operators under test: the closed form on
// power-times-exponential functions, and adaptive quadrature of the
// defining singular integral for everything else.
#pragma once

#include <functional>

#include "subcalc/types.hpp"

namespace subcalc {

// f(x) = e^{-sigma (x-a)} (x-a)^nu with nu > -1 so f is integrable at a.
struct PowerExpFunction {
    double nu = 0.0;
    double sigma = 0.0;
    double a = 0.0;

    double operator()(double x) const;
};

struct QuadratureConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-13;
    int max_refinements = 30;
};

// Closed form: D_s^mu f(x) = (Gamma(nu+1)/Gamma(nu+1-mu)) (x-a)^{nu-mu}
// e^{-sigma(x-a)}; mu < 0 gives the order -mu integral. A Gamma pole in
// the denominator yields exactly 0 by the reciprocal-gamma convention.
double power_exp_transform(const PowerExpFunction& f, double mu, double x);

// I_s^nu f(x) = (1/Gamma(nu)) Int_a^x (x-t)^{nu-1} e^{-sigma(x-t)} f(t) dt,
// nu > 0. For nu < 1 the endpoint singularity is absorbed by the
// substitution t = x - u^{1/nu} before adaptive composite Gauss-Legendre
// is applied; nu >= 1 integrates directly. Throws convergence_error
// (carrying estimate and error bound) if the tolerance cannot be met
// within cfg.max_refinements bisection levels.
double singular_quadrature(const std::function<double(double)>& f, double nu, double sigma,
                           double a, double x, const QuadratureConfig& cfg = {});

// Caputo-form evaluation of D_s^mu f(x), mu > 0, m = ceil(mu):
//   I_s^{m-mu}[D_s^m f](x)
//     + sum_{k=0}^{m-1} D_s^k f(a) (x-a)^{k-mu} e^{-sigma(x-a)} / Gamma(k-mu+1).
// df_list[k] must supply D_s^k f for k = 0..m (D_s = d/dx + sigma); fewer
// entries is a precondition error. Integer mu short-circuits to
// df_list[m](x).
double substantial_derivative_quadrature(const std::vector<std::function<double(double)>>& df_list,
                                         double mu, double sigma, double a, double x,
                                         const QuadratureConfig& cfg = {});

// One calculus-identity check: largest residual over the randomized
// evaluation points, against the tolerance it must beat.
struct IdentityCheck {
    std::string name;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

// Runs the full identity suite (semigroup, inversion and composition laws,
// closed-form cross-checks, sigma = 0 reduction) at 10 random points per
// identity from a fixed seed, so results are deterministic.
std::vector<IdentityCheck> identity_suite();

}  // namespace subcalc
