#include "doctest.h"

#include "subcalc/weights.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace subcalc;

namespace {

OperatorSpec spec(double alpha, double sigma, int p, double h) {
    return OperatorSpec{alpha, sigma, p, h};
}

// (-1)^m * binom(alpha, m), the exact p=1 weight at sigma=0.
double signed_binom(double alpha, int m) {
    double v = 1.0;
    for (int k = 1; k <= m; ++k) v *= (static_cast<double>(k) - 1.0 - alpha) / k;
    return v;
}

// Truncated product of two coefficient sequences.
std::vector<double> conv(const std::vector<double>& a, const std::vector<double>& b,
                         std::size_t n) {
    std::vector<double> c(n + 1, 0.0);
    for (std::size_t i = 0; i <= n && i < a.size(); ++i)
        for (std::size_t j = 0; i + j <= n && j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
}

// Least-squares slope of log|y| against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]), ly = std::log(std::fabs(y[i]));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

TEST_CASE("generating polynomial coefficients are the exact rationals") {
    struct Row {
        int p;
        std::vector<long long> num;
        std::vector<long long> den;
    };
    const Row rows[] = {
        {1, {1, -1}, {1, 1}},
        {2, {3, -2, 1}, {2, 1, 2}},
        {3, {11, -3, 3, -1}, {6, 1, 2, 3}},
        {4, {25, -4, 3, -4, 1}, {12, 1, 1, 3, 4}},
        {5, {137, -5, 5, -10, 5, -1}, {60, 1, 1, 3, 4, 5}},
    };
    for (const auto& row : rows) {
        CAPTURE(row.p);
        const auto poly = generating_polynomial(row.p);
        REQUIRE(poly.coeffs.size() == row.num.size());
        for (std::size_t j = 0; j < row.num.size(); ++j) {
            CHECK(poly.coeffs[j].num == row.num[j]);
            CHECK(poly.coeffs[j].den == row.den[j]);
        }
    }
}

TEST_CASE("generating polynomial rejects out-of-range order") {
    CHECK_THROWS_AS(generating_polynomial(0), std::domain_error);
    CHECK_THROWS_AS(generating_polynomial(6), std::domain_error);
}

TEST_CASE("p=1 weights reduce to the binomial expansion") {
    const double alpha = 0.7, sigma = 0.3, h = 0.1;
    const auto table = weights(spec(alpha, sigma, 1, h), 50);
    for (int m = 0; m <= 50; ++m) {
        const double expect = std::exp(-sigma * m * h) * signed_binom(alpha, m);
        CHECK(table.g[m] == doctest::Approx(expect).epsilon(1e-12));
    }
    // Same content as the one-step ratio recurrence.
    for (int m = 1; m <= 50; ++m) {
        const double ratio = std::exp(-sigma * h) * (1.0 - (alpha + 1.0) / m);
        CHECK(table.g[m] == doctest::Approx(ratio * table.g[m - 1]).epsilon(1e-12));
    }
}

TEST_CASE("integer order terminates the expansion") {
    // alpha=1: the weights are the u-coefficients themselves and stop after p terms.
    const auto t2 = weights(spec(1.0, 0.0, 2, 0.1), 10);
    CHECK(t2.g[0] == 1.5);
    CHECK(t2.g[1] == -2.0);
    CHECK(t2.g[2] == 0.5);
    for (int m = 3; m <= 10; ++m) CHECK(t2.g[m] == 0.0);

    // alpha=2, p=3: u^2 has degree 6; beyond that only rounding residue remains.
    const auto t3 = weights(spec(2.0, 0.0, 3, 0.1), 20);
    const double scale = max_abs(t3.g);
    for (int m = 7; m <= 20; ++m) CHECK(std::fabs(t3.g[m]) <= 1e-13 * scale);
}

TEST_CASE("alpha=0 yields the identity stencil") {
    const auto table = weights(spec(0.0, 0.8, 4, 0.05), 12);
    CHECK(table.g[0] == 1.0);
    for (int m = 1; m <= 12; ++m) CHECK(table.g[m] == 0.0);
}

TEST_CASE("leading weight is u0^alpha") {
    const auto table = weights(spec(0.5, 0.5, 5, 0.1), 3);
    CHECK(table.g[0] == doctest::Approx(std::pow(137.0 / 60.0, 0.5)).epsilon(1e-15));
}

TEST_CASE("frozen p=5 weight values at sigma=0") {
    // References from a 50-digit series expansion of u(z)^alpha.
    const double l_half[] = {
        1.51107026088575157735,   -1.6544564900208958876,   0.748732134170040474682,
        -0.283191284401964135271, -0.0819469259444031359417, -0.0155804857833292014575,
        -0.00299098656659940903237, -0.0109124654243675535225, -0.0156079165973534409314};
    const double l_mhalf[] = {
        0.661782596008358355042, 0.724579484680684330338, 0.465423318627008912918,
        0.274585345412052537708, 0.241707990615758311826, 0.261931079858122176762,
        0.252501763359607634861, 0.217877621647849731462, 0.191455644605975291551};
    const auto th = weights(spec(0.5, 0.0, 5, 0.1), 8);
    const auto tm = weights(spec(-0.5, 0.0, 5, 0.1), 8);
    for (int m = 0; m <= 8; ++m) {
        CAPTURE(m);
        CHECK(th.g[m] == doctest::Approx(l_half[m]).epsilon(1e-13));
        CHECK(tm.g[m] == doctest::Approx(l_mhalf[m]).epsilon(1e-13));
    }
}

TEST_CASE("frozen p=3 weight values for alpha=3/2") {
    const double l_ref[] = {2.48234506808321011014,   -6.09302880347697027034,
                            5.53911709406997297304,   -2.48980515844559391212,
                            0.57451173165767075051,   -0.0335010462864487471322,
                            0.00285218142987081685541};
    const auto table = weights(spec(1.5, 0.0, 3, 0.2), 6);
    for (int m = 0; m <= 6; ++m) {
        CAPTURE(m);
        CHECK(table.g[m] == doctest::Approx(l_ref[m]).epsilon(1e-13));
    }
}

TEST_CASE("sigma enters as a pure exponential twist") {
    const double sigma = 0.7, h = 0.05;
    const auto flat = weights(spec(0.8, 0.0, 4, h), 200);
    const auto damped = weights(spec(0.8, sigma, 4, h), 200);
    for (int m = 0; m <= 200; ++m) {
        const double expect = std::exp(-sigma * m * h) * flat.g[m];
        CHECK(damped.g[m] == doctest::Approx(expect).epsilon(1e-14));
    }
}

TEST_CASE("opposite orders convolve to the identity") {
    const double h = 0.1;
    const auto fwd = weights(spec(0.9, 0.4, 5, h), 200);
    const auto bwd = weights(spec(-0.9, 0.4, 5, h), 200);
    const auto c = conv(fwd.g, bwd.g, 200);
    CHECK(c[0] == doctest::Approx(1.0).epsilon(1e-12));
    for (int m = 1; m <= 200; ++m) {
        CAPTURE(m);
        CHECK(std::fabs(c[m]) <= 1e-12);
    }
}

TEST_CASE("weight decay follows m^(-1-alpha) for negative order") {
    // For alpha=-1/2 the tail behaves like m^(-1/2); check the log-log slope.
    const auto table = weights(spec(-0.5, 0.0, 5, 0.1), 5000);
    std::vector<double> ms, gs;
    for (int m = 100; m <= 5000; m += 25) {
        ms.push_back(static_cast<double>(m));
        gs.push_back(table.g[m]);
    }
    const double slope = loglog_slope(ms, gs);
    CHECK(slope > -0.55);
    CHECK(slope < -0.45);
}

TEST_CASE("weights validates its spec") {
    CHECK_THROWS_AS(weights(spec(0.5, 0.5, 5, -0.1), 4), std::invalid_argument);
    CHECK_THROWS_AS(weights(spec(0.5, 0.5, 6, 0.1), 4), std::invalid_argument);
    CHECK_THROWS_AS(weights(spec(std::nan(""), 0.5, 5, 0.1), 4), std::invalid_argument);
    CHECK_THROWS_AS(weights(spec(0.5, 0.5, 5, 0.0), 4), std::invalid_argument);
}
