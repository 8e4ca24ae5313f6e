#include "doctest.h"

#include "subcalc/weights.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace subcalc;

namespace {

int defect_terms(double h) {
    return std::max(2000, static_cast<int>(std::ceil(48.0 / h)));
}

double defect(double alpha, int p, double h) {
    OperatorSpec s{alpha, 0.0, p, h};
    return consistency_defect(s, defect_terms(h));
}

double fit_slope(const std::vector<double>& hs, const std::vector<double>& ds) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(hs.size());
    for (std::size_t i = 0; i < hs.size(); ++i) {
        const double lx = std::log(hs[i]), ly = std::log(ds[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

TEST_CASE("consistency defect matches frozen high-precision values") {
    // 50-digit references for |h^A sum_m l_m e^(-m h) - 1| with the sum taken
    // deep enough that the truncation tail is negligible.
    struct Ref {
        int p;
        double a;  // |alpha|
        double h;
        double value;
        double tol;
    };
    const Ref refs[] = {
        {1, 1.0, 1.0 / 16, 0.0315754996425416071291, 1e-9},
        {1, 1.0, 1.0 / 32, 0.0157063788838164686103, 1e-9},
        {1, 1.0, 1.0 / 64, 0.00783284496929958568981, 1e-9},
        {5, 0.5, 1.0 / 16, 6.95664765865615435777e-8, 1e-9},
        {5, 0.5, 1.0 / 128, 2.38508444010314482117e-12, 1e-9},
        {5, 1.5, 1.0 / 16, 2.08699444278168961405e-7, 1e-9},
        {3, 0.5, 1.0 / 32, 3.67472153434529068791e-6, 1e-9},
        // Finest levels sit near the quad-precision floor; allow for the
        // truncation-tail convention as well.
        {5, 0.5, 1.0 / 1024, 7.38601586053853803707e-17, 1e-6},
        {5, 1.5, 1.0 / 1024, 2.21580475816156157478e-16, 1e-6},
    };
    for (const auto& r : refs) {
        CAPTURE(r.p);
        CAPTURE(r.h);
        CHECK(defect(r.a, r.p, r.h) == doctest::Approx(r.value).epsilon(r.tol));
        // The defect only depends on |alpha|: derivative and integral agree.
        CHECK(defect(-r.a, r.p, r.h) == defect(r.a, r.p, r.h));
    }
}

TEST_CASE("defect is independent of sigma") {
    OperatorSpec flat{0.5, 0.0, 4, 1.0 / 32};
    OperatorSpec damped{0.5, 1.3, 4, 1.0 / 32};
    CHECK(consistency_defect(flat, 2000) == consistency_defect(damped, 2000));
}

TEST_CASE("defect decays at the design order") {
    std::vector<double> hs;
    for (int k = 4; k <= 10; ++k) hs.push_back(std::pow(2.0, -k));

    SUBCASE("p=1, alpha=-1") {
        std::vector<double> ds;
        for (double h : hs) ds.push_back(defect(1.0, 1, h));
        const double slope = fit_slope(hs, ds);
        CHECK(slope > 0.9);
        CHECK(slope < 1.1);
    }
    SUBCASE("p=5, alpha=0.5") {
        std::vector<double> ds;
        for (double h : hs) ds.push_back(defect(0.5, 5, h));
        CHECK(fit_slope(hs, ds) >= 4.9);
    }
    SUBCASE("p=3, alpha=1.5") {
        std::vector<double> ds;
        for (double h : hs) ds.push_back(defect(1.5, 3, h));
        CHECK(fit_slope(hs, ds) >= 2.9);
    }
}

TEST_CASE("alpha=0 has zero defect") {
    OperatorSpec s{0.0, 0.0, 3, 0.1};
    CHECK(consistency_defect(s, 2000) == 0.0);
}

TEST_CASE("undersized truncation is refused") {
    // N*h ~ 2 leaves an exponential tail far above the tiny defect.
    OperatorSpec s{0.5, 0.0, 5, 1.0 / 1024};
    CHECK_THROWS_AS(consistency_defect(s, 2000), convergence_error);
    try {
        consistency_defect(s, 2000);
    } catch (const convergence_error& e) {
        CHECK(e.bound > 0.25 * e.estimate);
    }
}
