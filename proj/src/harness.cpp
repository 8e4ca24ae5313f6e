#include "subcalc/harness.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "parallel.hpp"
#include "subcalc/gridops.hpp"
#include "subcalc/special.hpp"
#include "subcalc/starting.hpp"
#include "subcalc/weights.hpp"

namespace subcalc {

namespace {

using clock_type = std::chrono::steady_clock;

double elapsed_ms(clock_type::time_point t0) {
    return std::chrono::duration<double, std::milli>(clock_type::now() - t0).count();
}

std::size_t level_size(double b, double h) {
    const auto N = std::llround(b / h);
    if (N < 1) throw std::invalid_argument("run_experiment: domain shorter than one step");
    return static_cast<std::size_t>(N);
}

void fill_rates(std::vector<ConvergenceRow>& rows) {
    if (!rows.empty()) rows[0].rate = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t k = 1; k < rows.size(); ++k)
        rows[k].rate = std::log2(rows[k - 1].max_error / rows[k].max_error);
}

// Exact pair for the smooth two-point example: f = e^{-sx} x^{5+al},
// D_s^al f = (Gamma(6+al)/Gamma(6)) e^{-sx} x^5.
double example1_error(double alpha, double sigma, int p, double h, double b) {
    const std::size_t N = level_size(b, h);
    const OperatorSpec spec{alpha, sigma, p, h};
    GridFunction f{0.0, h, std::vector<double>(N + 1)};
    std::vector<double> rhs(N + 1);
    const double C = gamma_ratio(6.0 + alpha, 6.0);
    for (std::size_t i = 0; i <= N; ++i) {
        const double x = static_cast<double>(i) * h;
        const double damp = std::exp(-sigma * x);
        f.values[i] = damp * std::pow(x, 5.0 + alpha);
        rhs[i] = C * damp * std::pow(x, 5.0);
    }
    const GridFunction out = apply(spec, f);
    double err = 0.0;
    for (std::size_t i = 1; i <= N; ++i) err = std::max(err, std::fabs(out.values[i] - rhs[i]));
    return err;
}

// Same pair plus an x^{0.6} layer, which the plain scheme cannot resolve.
double example2_error(double alpha, double sigma, int p, double h, double b, double beta, int r,
                      bool corrected) {
    const std::size_t N = level_size(b, h);
    const OperatorSpec spec{alpha, sigma, p, h};
    GridFunction f{0.0, h, std::vector<double>(N + 1)};
    std::vector<double> rhs(N + 1);
    const double C1 = gamma_ratio(6.0 + alpha, 6.0);
    const double C2 = gamma_ratio(1.6, 1.6 - alpha);
    for (std::size_t i = 0; i <= N; ++i) {
        const double x = static_cast<double>(i) * h;
        const double damp = std::exp(-sigma * x);
        f.values[i] = damp * (std::pow(x, 5.0 + alpha) + std::pow(x, 0.6));
        rhs[i] = damp * (C1 * std::pow(x, 5.0) + C2 * std::pow(x, 0.6 - alpha));
    }
    GridFunction out;
    if (corrected) {
        const StartingWeightSet sws = starting_weights(spec, beta, r, N);
        out = corrected_apply(spec, sws, f);
    } else {
        out = apply(spec, f);
    }
    double err = 0.0;
    for (std::size_t i = 1; i <= N; ++i) err = std::max(err, std::fabs(out.values[i] - rhs[i]));
    return err;
}

double operator_apply_error(double alpha, double sigma, int p, double h, double b) {
    const std::size_t N = level_size(b, h);
    const OperatorSpec spec{alpha, sigma, p, h};
    const double nu = 5.0 + std::fabs(alpha);
    GridFunction f{0.0, h, std::vector<double>(N + 1)};
    std::vector<double> exact(N + 1);
    const double C = gamma_ratio(nu + 1.0, nu + 1.0 - alpha);
    for (std::size_t i = 0; i <= N; ++i) {
        const double x = static_cast<double>(i) * h;
        const double damp = std::exp(-sigma * x);
        f.values[i] = damp * std::pow(x, nu);
        exact[i] = C * damp * std::pow(x, nu - alpha);
    }
    const GridFunction out = apply(spec, f);
    double err = 0.0;
    for (std::size_t i = 1; i <= N; ++i) err = std::max(err, std::fabs(out.values[i] - exact[i]));
    return err;
}

double consistency_error(double alpha, double sigma, int p, double h) {
    // truncation point: Nh >= 48 keeps the geometric tail ~1e-20, far under
    // the finest defects, and the floor keeps coarse ladders honest too
    const std::size_t N = std::max<std::size_t>(2000, static_cast<std::size_t>(std::ceil(48.0 / h)));
    return consistency_defect({alpha, sigma, p, h}, N);
}

template <typename ErrAt>
ConvergenceReport build_report(const Experiment& e, double alpha, int p, const ErrAt& err_at) {
    const auto t0 = clock_type::now();
    ConvergenceReport rep;
    rep.experiment = e.name;
    rep.alpha = alpha;
    rep.sigma = e.sigma;
    rep.p = p;
    rep.rows.resize(e.h_ladder.size());
    detail::parallel_for(e.h_ladder.size(), [&](std::size_t i) {
        rep.rows[i].h = e.h_ladder[i];
        rep.rows[i].max_error = err_at(e.h_ladder[i]);
    });
    fill_rates(rep.rows);
    rep.wall_ms = elapsed_ms(t0);
    return rep;
}

void require_ladder(const Experiment& e) {
    if (e.h_ladder.empty()) throw std::invalid_argument("run_experiment: empty refinement ladder");
    for (std::size_t k = 1; k < e.h_ladder.size(); ++k)
        if (!(e.h_ladder[k] < e.h_ladder[k - 1]))
            throw std::invalid_argument("run_experiment: ladder must be strictly decreasing");
    if (e.alphas.empty()) throw std::invalid_argument("run_experiment: no alpha values given");
}

std::vector<int> p_values(const Experiment& e, bool sweepable) {
    if (e.p != 0) return {e.p};
    if (!sweepable) throw std::invalid_argument("run_experiment: this problem needs a fixed p");
    return {1, 2, 3, 4, 5};
}

}  // namespace

const std::vector<std::string>& registry_names() {
    static const std::vector<std::string> names{
        "table2", "table3-corrected", "table3-uncorrected", "consistency", "identities", "order-sweep",
    };
    return names;
}

Experiment registry_lookup(const std::string& name) {
    const auto dyadic = [](double h0, int n) {
        std::vector<double> hs(n);
        for (int k = 0; k < n; ++k) hs[k] = h0 / static_cast<double>(1 << k);
        return hs;
    };
    Experiment e;
    e.name = name;
    if (name == "table2") {
        e.problem = Problem::example1;
        e.p = 5;
        e.sigma = 0.5;
        e.alphas = {-0.5, 0.5, 1.5};
        e.h_ladder = dyadic(0.1, 5);
    } else if (name == "table3-corrected") {
        e.problem = Problem::example2_corrected;
        e.p = 5;
        e.sigma = 0.5;
        e.alphas = {-0.5, 0.5};
        e.beta = 1.6;
        e.r = 4;
        e.h_ladder = dyadic(0.1, 5);
    } else if (name == "table3-uncorrected") {
        e.problem = Problem::example2_uncorrected;
        e.p = 5;
        e.sigma = 0.5;
        e.alphas = {-0.5, 0.5};
        e.h_ladder = dyadic(0.1, 5);
    } else if (name == "consistency") {
        e.problem = Problem::consistency_check;
        e.p = 0;
        e.sigma = 0.5;
        e.alphas = {-1.5, -0.5, 0.5, 1.5};
        e.h_ladder = dyadic(1.0 / 16.0, 7);
    } else if (name == "identities") {
        e.problem = Problem::identity_suite;
    } else if (name == "order-sweep") {
        e.problem = Problem::operator_apply;
        e.p = 0;
        e.sigma = 0.5;
        e.alphas = {0.5, 1.5, -0.5, -1.5};
        // six levels: deep enough that the finest pairs sit in asymptotia,
        // while p=5 errors (~1e-10 at the bottom) stay above rounding noise
        e.h_ladder = dyadic(0.1, 6);
    } else {
        std::string msg = "unknown experiment '" + name + "'; known experiments:";
        for (const auto& n : registry_names()) msg += " " + n;
        throw std::invalid_argument(msg);
    }
    return e;
}

ExperimentResult run_experiment(const Experiment& e) {
    const auto t0 = clock_type::now();
    ExperimentResult res;
    res.experiment = e.name;

    if (e.problem == Problem::identity_suite) {
        res.identities = identity_suite();
        res.wall_ms = elapsed_ms(t0);
        return res;
    }

    require_ladder(e);
    switch (e.problem) {
        case Problem::example1:
            for (const double alpha : e.alphas)
                res.reports.push_back(build_report(e, alpha, e.p, [&](double h) {
                    return example1_error(alpha, e.sigma, e.p, h, e.b);
                }));
            break;
        case Problem::example2_corrected:
        case Problem::example2_uncorrected: {
            const bool corrected = e.problem == Problem::example2_corrected;
            if (corrected && (e.r < 1 || e.beta == 0.0))
                throw std::invalid_argument("run_experiment: corrected example needs beta and r");
            for (const double alpha : e.alphas)
                res.reports.push_back(build_report(e, alpha, e.p, [&](double h) {
                    return example2_error(alpha, e.sigma, e.p, h, e.b, e.beta, e.r, corrected);
                }));
            break;
        }
        case Problem::operator_apply:
            for (const int p : p_values(e, true))
                for (const double alpha : e.alphas)
                    res.reports.push_back(build_report(e, alpha, p, [&](double h) {
                        return operator_apply_error(alpha, e.sigma, p, h, e.b);
                    }));
            break;
        case Problem::consistency_check:
            for (const int p : p_values(e, true))
                for (const double alpha : e.alphas)
                    res.reports.push_back(build_report(e, alpha, p, [&](double h) {
                        return consistency_error(alpha, e.sigma, p, h);
                    }));
            break;
        case Problem::identity_suite:
            break;  // handled above
    }
    res.wall_ms = elapsed_ms(t0);
    return res;
}

double fit_order(const std::vector<ConvergenceRow>& rows) {
    if (rows.size() < 3) throw std::invalid_argument("fit_order: need at least 3 ladder points");
    double sx = 0.0, sy = 0.0;
    for (const auto& r : rows) {
        if (!(r.max_error > 0.0) || !std::isfinite(r.max_error) || !(r.h > 0.0))
            throw std::invalid_argument("fit_order: rows must hold positive finite errors");
        sx += std::log(r.h);
        sy += std::log(r.max_error);
    }
    const double mx = sx / static_cast<double>(rows.size());
    const double my = sy / static_cast<double>(rows.size());
    double sxx = 0.0, sxy = 0.0;
    for (const auto& r : rows) {
        const double dx = std::log(r.h) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(r.max_error) - my);
    }
    return sxy / sxx;
}

double fit_order(const ConvergenceReport& report) { return fit_order(report.rows); }

std::vector<SolveLadderRow> solve_ladder(double alpha, double sigma, int p,
                                         const std::vector<double>& h_ladder, double b) {
    if (h_ladder.empty()) throw std::invalid_argument("solve_ladder: empty refinement ladder");
    std::vector<SolveLadderRow> rows(h_ladder.size());
    detail::parallel_for(h_ladder.size(), [&](std::size_t k) {
        const double h = h_ladder[k];
        const std::size_t N = level_size(b, h);
        const OperatorSpec spec{alpha, sigma, p, h};
        GridFunction rhs{0.0, h, std::vector<double>(N + 1)};
        std::vector<double> exact(N + 1);
        const double C = gamma_ratio(6.0 + alpha, 6.0);
        for (std::size_t i = 0; i <= N; ++i) {
            const double x = static_cast<double>(i) * h;
            const double damp = std::exp(-sigma * x);
            exact[i] = damp * std::pow(x, 5.0 + alpha);
            rhs.values[i] = C * damp * std::pow(x, 5.0);
        }
        const GridFunction f = solve(spec, rhs, 0.0);
        double err = 0.0;
        for (std::size_t i = 1; i <= N; ++i) err = std::max(err, std::fabs(f.values[i] - exact[i]));
        rows[k] = {h, err, std::fabs(f.values[N] - exact[N])};
    });
    return rows;
}

namespace {

// Reference ladders the named experiments must land on, with the
// tolerances the converge --assert path enforces.
struct RefColumn {
    double alpha;
    std::array<double, 5> err;
    std::array<double, 4> rate;
};

constexpr std::array<RefColumn, 3> kTable2Ref{{
    {-0.5, {3.7956e-5, 1.3109e-6, 4.3065e-8, 1.3798e-9, 4.3662e-11}, {4.8557, 4.9279, 4.9639, 4.9820}},
    {0.5, {2.0214e-4, 6.9814e-6, 2.2935e-7, 7.3488e-9, 2.3254e-10}, {4.8557, 4.9279, 4.9639, 4.9820}},
    {1.5, {3.7954e-3, 1.2933e-4, 4.3193e-6, 1.4014e-7, 4.4622e-9}, {4.8751, 4.9041, 4.9459, 4.9729}},
}};

constexpr std::array<RefColumn, 2> kTable3CorrectedRef{{
    {-0.5, {2.8710e-5, 1.0424e-6, 3.5111e-8, 1.1391e-9, 3.6272e-11}, {4.78, 4.90, 4.95, 4.97}},
    {0.5, {3.7035e-4, 1.2791e-5, 4.2020e-7, 1.3464e-8, 4.2604e-10}, {4.86, 4.93, 4.96, 4.98}},
}};

constexpr std::array<RefColumn, 2> kTable3UncorrectedRef{{
    {-0.5, {1.4508e-2, 6.9407e-3, 3.2787e-3, 1.5392e-3, 7.2029e-4}, {1.06, 1.08, 1.09, 1.10}},
    {0.5, {4.3208e-1, 4.1336e-1, 3.9053e-1, 3.6666e-1, 3.4318e-1}, {0.064, 0.082, 0.091, 0.096}},
}};

std::string describe(const ConvergenceReport& rep, std::size_t row, const char* what,
                     double got, double want, double tol) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s alpha=%g p=%d h=%g: %s %.6e vs target %.6e (tol %g)",
                  rep.experiment.c_str(), rep.alpha, rep.p, rep.rows[row].h, what, got, want, tol);
    return buf;
}

template <std::size_t K>
void check_against(const std::array<RefColumn, K>& ref, const ConvergenceReport& rep,
                   double err_rel_tol, double rate_abs_tol, bool check_errors,
                   std::vector<std::string>& out) {
    const RefColumn* col = nullptr;
    for (const auto& c : ref)
        if (std::fabs(c.alpha - rep.alpha) < 1e-12) col = &c;
    if (col == nullptr || rep.rows.size() != col->err.size()) return;
    for (std::size_t k = 0; k < rep.rows.size(); ++k) {
        if (check_errors) {
            const double want = col->err[k];
            if (std::fabs(rep.rows[k].max_error - want) > err_rel_tol * want)
                out.push_back(describe(rep, k, "max_error", rep.rows[k].max_error, want, err_rel_tol));
        }
        if (k >= 1) {
            const double want = col->rate[k - 1];
            if (std::fabs(rep.rows[k].rate - want) > rate_abs_tol)
                out.push_back(describe(rep, k, "rate", rep.rows[k].rate, want, rate_abs_tol));
        }
    }
}

}  // namespace

std::vector<std::string> check_acceptance(const ExperimentResult& result) {
    std::vector<std::string> failures;
    if (result.experiment == "table2") {
        for (const auto& rep : result.reports)
            check_against(kTable2Ref, rep, 0.02, 0.05, true, failures);
    } else if (result.experiment == "table3-corrected") {
        for (const auto& rep : result.reports)
            check_against(kTable3CorrectedRef, rep, 0.05, 0.1, true, failures);
    } else if (result.experiment == "table3-uncorrected") {
        for (const auto& rep : result.reports)
            check_against(kTable3UncorrectedRef, rep, 0.0, 0.05, false, failures);
    } else if (result.experiment == "consistency" || result.experiment == "order-sweep") {
        // The consistency ladder is fitted whole; the apply sweep asserts an
        // asymptotic order, so its slope comes from the finest three levels
        // past the coarse-grid transient. Levels whose error sits near the
        // rounding floor of the convolution (amplified by h^{-alpha} on the
        // derivative side) measure noise, not order, and are dropped first.
        const bool tail = result.experiment == "order-sweep";
        for (const auto& rep : result.reports) {
            std::vector<ConvergenceRow> window = rep.rows;
            if (tail) {
                const double eps = std::numeric_limits<double>::epsilon();
                while (window.size() > 3 &&
                       window.back().max_error <
                           1e3 * eps * std::pow(window.back().h, -std::max(rep.alpha, 0.0)))
                    window.pop_back();
                if (window.size() > 3) window.erase(window.begin(), window.end() - 3);
            }
            const double slope = fit_order(window);
            if (!(slope >= static_cast<double>(rep.p) - 0.1)) {
                char buf[160];
                std::snprintf(buf, sizeof buf, "%s alpha=%g p=%d: fitted order %.4f below %g",
                              rep.experiment.c_str(), rep.alpha, rep.p, slope,
                              static_cast<double>(rep.p) - 0.1);
                failures.push_back(buf);
            }
        }
    } else if (result.experiment == "identities") {
        for (const auto& c : result.identities)
            if (!c.pass) {
                char buf[160];
                std::snprintf(buf, sizeof buf, "identity %s: residual %.3e exceeds %.1e",
                              c.name.c_str(), c.max_residual, c.tolerance);
                failures.push_back(buf);
            }
    }
    return failures;
}

}  // namespace subcalc
