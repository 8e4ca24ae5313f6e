#include "doctest.h"

#include "subcalc/harness.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

using namespace subcalc;

namespace {

std::vector<ConvergenceRow> synthetic_rows(const std::vector<double>& hs, double order,
                                           double c) {
    std::vector<ConvergenceRow> rows;
    for (double h : hs) rows.push_back({h, c * std::pow(h, order), 0.0});
    return rows;
}

const ConvergenceReport& report_for(const ExperimentResult& res, double alpha, int p) {
    for (const auto& r : res.reports) {
        if (r.alpha == alpha && r.p == p) return r;
    }
    REQUIRE(false);
    return res.reports.front();
}

}  // namespace

TEST_CASE("fit_order recovers synthetic slopes") {
    const std::vector<double> hs = {0.1, 0.05, 0.025, 0.0125};
    CHECK(fit_order(synthetic_rows(hs, 1.0, 3.7)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fit_order(synthetic_rows(hs, 4.0, 0.2)) == doctest::Approx(4.0).epsilon(1e-10));
    CHECK(fit_order(synthetic_rows(hs, 0.0, 2.0)) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("fit_order input validation") {
    const std::vector<double> hs = {0.1, 0.05};
    CHECK_THROWS_AS(fit_order(synthetic_rows(hs, 1.0, 1.0)), std::invalid_argument);
    auto rows = synthetic_rows({0.1, 0.05, 0.025}, 1.0, 1.0);
    rows[1].max_error = 0.0;
    CHECK_THROWS_AS(fit_order(rows), std::invalid_argument);
}

TEST_CASE("registry") {
    const auto& names = registry_names();
    CHECK(names.size() == 6);
    for (const auto& n :
         {"table2", "table3-corrected", "table3-uncorrected", "consistency", "identities",
          "order-sweep"}) {
        CHECK(std::find(names.begin(), names.end(), n) != names.end());
        CHECK(registry_lookup(n).name == n);
    }
    try {
        registry_lookup("no-such-experiment");
        CHECK(false);
    } catch (const std::invalid_argument& e) {
        const std::string msg = e.what();
        CHECK(msg.find("table2") != std::string::npos);
    }
}

TEST_CASE("rates are the pairwise log2 ratios") {
    Experiment e = registry_lookup("table2");
    e.alphas = {0.5};
    const auto res = run_experiment(e);
    REQUIRE(res.reports.size() == 1);
    const auto& rows = res.reports[0].rows;
    REQUIRE(rows.size() == 5);
    CHECK(std::isnan(rows[0].rate));
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double expect = std::log2(rows[i - 1].max_error / rows[i].max_error) /
                              std::log2(rows[i - 1].h / rows[i].h);
        CHECK(rows[i].rate == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("table2 experiment reproduces the reference ladder") {
    const auto res = run_experiment(registry_lookup("table2"));
    REQUIRE(res.reports.size() == 3);

    struct Col {
        double alpha;
        double errs[5];
    };
    const Col cols[] = {
        {-0.5, {3.7956e-5, 1.3109e-6, 4.3065e-8, 1.3798e-9, 4.3662e-11}},
        {0.5, {2.0214e-4, 6.9814e-6, 2.2935e-7, 7.3488e-9, 2.3254e-10}},
        {1.5, {3.7954e-3, 1.2933e-4, 4.3193e-6, 1.4014e-7, 4.4622e-9}},
    };
    for (const auto& col : cols) {
        CAPTURE(col.alpha);
        const auto& rep = report_for(res, col.alpha, 5);
        REQUIRE(rep.rows.size() == 5);
        for (int k = 0; k < 5; ++k) {
            CHECK(rep.rows[k].max_error ==
                  doctest::Approx(col.errs[k]).epsilon(0.02));
        }
        CHECK(fit_order(rep) == doctest::Approx(5.0).epsilon(0.03));
    }
    CHECK(check_acceptance(res).empty());
}

TEST_CASE("table3 experiments meet their targets") {
    const auto corrected = run_experiment(registry_lookup("table3-corrected"));
    REQUIRE(corrected.reports.size() == 2);
    CHECK(check_acceptance(corrected).empty());

    const auto uncorrected = run_experiment(registry_lookup("table3-uncorrected"));
    REQUIRE(uncorrected.reports.size() == 2);
    CHECK(check_acceptance(uncorrected).empty());
    // The layer term caps the uncorrected derivative scheme near first order.
    const auto& rep = report_for(uncorrected, -0.5, 5);
    CHECK(fit_order(rep) < 1.3);
}

TEST_CASE("consistency experiment on a single order") {
    Experiment e = registry_lookup("consistency");
    e.p = 5;
    e.alphas = {0.5};
    e.h_ladder = {std::pow(2.0, -4), std::pow(2.0, -5), std::pow(2.0, -6), std::pow(2.0, -7)};
    const auto res = run_experiment(e);
    REQUIRE(res.reports.size() == 1);
    CHECK(res.reports[0].rows[0].max_error == doctest::Approx(6.95664765865615435777e-8).epsilon(1e-9));
    CHECK(fit_order(res.reports[0]) >= 4.9);
}

TEST_CASE("identity experiment fills the identity slot") {
    const auto res = run_experiment(registry_lookup("identities"));
    CHECK(res.reports.empty());
    REQUIRE(res.identities.size() == 7);
    for (const auto& c : res.identities) CHECK(c.pass);
    CHECK(check_acceptance(res).empty());
}

TEST_CASE("experiment validation") {
    Experiment e = registry_lookup("table2");
    e.h_ladder = {0.05, 0.1};  // not decreasing
    CHECK_THROWS_AS(run_experiment(e), std::invalid_argument);
    e = registry_lookup("table2");
    e.alphas.clear();
    CHECK_THROWS_AS(run_experiment(e), std::invalid_argument);
}

TEST_CASE("solve ladder tracks the reference solve errors") {
    const auto rows = solve_ladder(1.5, 0.5, 5, {0.1, 0.05, 0.025});
    REQUIRE(rows.size() == 3);
    // Frozen from a high-precision forward solve of the same system.
    CHECK(rows[0].max_error == doctest::Approx(1.489622e-3).epsilon(1e-4));
    CHECK(rows[1].max_error == doctest::Approx(5.6300741e-5).epsilon(1e-4));
    CHECK(rows[0].endpoint_error == doctest::Approx(1.48962e-3).epsilon(1e-3));
    CHECK(rows[1].endpoint_error == doctest::Approx(5.63007e-5).epsilon(1e-3));
    CHECK(rows[2].endpoint_error == doctest::Approx(1.9194e-6).epsilon(1e-3));
}

TEST_CASE("experiments record wall time") {
    Experiment e = registry_lookup("table2");
    e.alphas = {0.5};
    e.h_ladder = {0.1, 0.05};
    const auto res = run_experiment(e);
    CHECK(res.wall_ms >= 0.0);
    REQUIRE(res.reports.size() == 1);
    CHECK(res.reports[0].wall_ms >= 0.0);
}
