#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "fairdist/benchmark.hpp"

using namespace fairdist;

namespace {

// A benchmark whose lines satisfy all five conditions exactly. Line i is
// 0.2 + c_i g^2 + e_i g^2 (1-g)^2 with c = (-0.2,...,-0.2, 0.8) pinning
// the endpoints and e = (-0.4,-0.2,0,0.2,0.4) ordering the lines (the
// difference between neighbours is 0.2 g^2 (1-g)^2 >= 0); both vectors
// sum across quintiles so that the five lines add up to the constant 1.
FairnessBenchmark consistent_benchmark() {
    FairnessBenchmark bench;
    bench.provenance = "synthetic";
    bench.lines = {{
        {1, -0.4, 0.8, -0.6, 0.0, 0.2, std::nullopt},
        {2, -0.2, 0.4, -0.4, 0.0, 0.2, std::nullopt},
        {3, 0.0, 0.0, -0.2, 0.0, 0.2, std::nullopt},
        {4, 0.2, -0.4, 0.0, 0.0, 0.2, std::nullopt},
        {5, 0.4, -0.8, 1.2, 0.0, 0.2, std::nullopt},
    }};
    return bench;
}

std::vector<SharePoint> sample_benchmark(const FairnessBenchmark& bench,
                                         std::span<const double> ginis) {
    std::vector<SharePoint> points;
    for (double g : ginis) {
        SharePoint pt;
        pt.gini = g;
        pt.shares = fair_shares(bench, g);
        points.push_back(pt);
    }
    return points;
}

constexpr double kTable4Ginis[] = {0.247, 0.447, 0.468, 0.469, 0.495, 0.557,
                                   0.560, 0.603, 0.604, 0.870, 0.873};

}  // namespace

TEST_CASE("published_benchmark carries the printed coefficients") {
    const FairnessBenchmark bench = published_benchmark();
    CHECK(bench.provenance == "published");
    const FairnessLine& l1 = bench.line(1);
    CHECK(l1.a4 == 0.1956);
    CHECK(l1.a3 == -0.6612);
    CHECK(l1.a2 == 0.9356);
    CHECK(l1.a1 == -0.6700);
    CHECK(l1.intercept == 0.2);
    const FairnessLine& l5 = bench.line(5);
    CHECK(l5.a4 == -1.9067);
    CHECK(l5.a3 == 2.5669);
    CHECK(l5.a2 == -0.2136);
    CHECK(l5.a1 == 0.3534);
    // endpoint of the top line: coefficient sum + intercept = 1 exactly as printed
    CHECK(l5.coefficient_sum() + l5.intercept == doctest::Approx(1.0).epsilon(1e-12));
    // all five evaluated at 0.5 sum to 1 within printed rounding
    double total = 0.0;
    for (int q = 1; q <= 5; ++q) total += bench.line(q).value(0.5);
    CHECK(std::abs(total - 1.0) < 1e-4);
}

TEST_CASE("fair_shares endpoints and published anchors") {
    const FairnessBenchmark bench = published_benchmark();
    const QuintileShares at0 = fair_shares(bench, 0.0);
    for (double q : at0.q) CHECK(q == doctest::Approx(0.2).epsilon(1e-12));

    // Denmark's Gini reproduces the published fair shares to 3 decimals
    const QuintileShares denmark = fair_shares(bench, 0.282);
    const double expected[5] = {0.072, 0.143, 0.195, 0.262, 0.328};
    for (int i = 0; i < 5; ++i) {
        CHECK(std::round(denmark.q[i] * 1000.0) / 1000.0 ==
              doctest::Approx(expected[i]).epsilon(1e-12));
    }

    const QuintileShares target = fair_shares(bench, 0.226);
    const double plan[5] = {0.089, 0.161, 0.203, 0.253, 0.294};
    for (int i = 0; i < 5; ++i) {
        CHECK(std::abs(target.q[i] - plan[i]) < 5e-4);
    }

    CHECK_THROWS_AS(fair_shares(bench, -0.1), std::domain_error);
    CHECK_THROWS_AS(fair_shares(bench, 1.1), std::domain_error);
}

TEST_CASE("fit_benchmark round-trips a constraint-consistent quartic set") {
    const FairnessBenchmark truth = consistent_benchmark();
    const auto points = sample_benchmark(truth, kTable4Ginis);
    const auto [fitted, report] = fit_benchmark(points);

    for (int q = 1; q <= 5; ++q) {
        CHECK(std::abs(fitted.line(q).a4 - truth.line(q).a4) < 1e-9);
        CHECK(std::abs(fitted.line(q).a3 - truth.line(q).a3) < 1e-9);
        CHECK(std::abs(fitted.line(q).a2 - truth.line(q).a2) < 1e-9);
        CHECK(std::abs(fitted.line(q).a1 - truth.line(q).a1) < 1e-9);
        REQUIRE(fitted.line(q).r2.has_value());
        CHECK(*fitted.line(q).r2 == doctest::Approx(1.0).epsilon(1e-9));
    }

    // endpoint exactness and sum-to-one linearity of the fitted lines
    for (int q = 1; q <= 5; ++q) {
        CHECK(std::abs(fitted.line(q).value(0.0) - 0.2) < 1e-12);
        CHECK(std::abs(fitted.line(q).value(1.0) - fitted.line(q).endpoint()) < 1e-12);
    }
    for (int i = 0; i <= 1000; ++i) {
        const double g = i / 1000.0;
        double total = 0.0;
        for (int q = 1; q <= 5; ++q) total += fitted.line(q).value(g);
        CHECK(std::abs(total - 1.0) < 1e-9);
    }
}

TEST_CASE("fit_benchmark is invariant to input ordering") {
    const FairnessBenchmark truth = consistent_benchmark();
    auto points = sample_benchmark(truth, kTable4Ginis);
    const auto [a, ra] = fit_benchmark(points);
    std::reverse(points.begin(), points.end());
    const auto [b, rb] = fit_benchmark(points);
    for (int q = 1; q <= 5; ++q) {
        CHECK(a.line(q).a1 == doctest::Approx(b.line(q).a1).epsilon(1e-12));
        CHECK(a.line(q).a4 == doctest::Approx(b.line(q).a4).epsilon(1e-12));
    }
}

TEST_CASE("fit_benchmark rejects rank-deficient or out-of-range input") {
    const FairnessBenchmark truth = consistent_benchmark();
    const double three[] = {0.2, 0.4, 0.6};
    auto points = sample_benchmark(truth, three);
    CHECK_THROWS_AS(fit_benchmark(points), std::domain_error);

    // duplicated abscissas do not add rank
    auto dup = points;
    dup.push_back(points[0]);
    CHECK_THROWS_AS(fit_benchmark(dup), std::domain_error);

    const double bad[] = {0.2, 0.4, 0.6, 1.0};
    CHECK_THROWS_AS(fit_benchmark(sample_benchmark(truth, bad)), std::domain_error);
}

TEST_CASE("validate on the published benchmark mirrors the printed outcome") {
    const ConditionReport report = validate(published_benchmark());
    CHECK(report.passed[0]);
    CHECK(report.passed[1]);
    CHECK(report.passed[2]);
    CHECK_FALSE(report.passed[3]);
    CHECK(report.passed[4]);
    // exactly one condition-4 violation: quintile pair 3-4
    std::size_t cond4 = 0;
    for (const auto& v : report.violations) {
        if (v.condition == 4) {
            ++cond4;
            CHECK(v.quintile == 3);
            CHECK(v.magnitude == doctest::Approx(0.1597 - 0.1428).epsilon(1e-9));
        }
    }
    CHECK(cond4 == 1);
}

TEST_CASE("validate flags a broken intercept") {
    FairnessBenchmark bench = consistent_benchmark();
    bench.lines[0].intercept = 0.3;
    const ConditionReport report = validate(bench);
    CHECK_FALSE(report.passed[0]);
    CHECK_FALSE(report.all_passed());
    bool found = false;
    for (const auto& v : report.violations) {
        if (v.condition == 1 && v.quintile == 1) found = true;
    }
    CHECK(found);
}

TEST_CASE("validate passes a fully consistent benchmark") {
    const ConditionReport report = validate(consistent_benchmark());
    CHECK(report.all_passed());
    CHECK(report.violations.empty());
}

TEST_CASE("evaluation of a validated benchmark stays within [0,1] margins") {
    const FairnessBenchmark bench = consistent_benchmark();
    for (int i = 0; i <= 1000; ++i) {
        const QuintileShares s = fair_shares(bench, i / 1000.0);
        for (double q : s.q) {
            CHECK(q >= -1e-6);
            CHECK(q <= 1.0 + 1e-6);
        }
    }
}

TEST_CASE("benchmark serialization round-trips losslessly") {
    const FairnessBenchmark truth = consistent_benchmark();
    const auto points = sample_benchmark(truth, kTable4Ginis);
    const auto [fitted, report] = fit_benchmark(points);

    std::stringstream buf;
    write_benchmark(buf, fitted);
    const FairnessBenchmark back = read_benchmark(buf);
    CHECK(back.provenance == fitted.provenance);
    for (int q = 1; q <= 5; ++q) {
        CHECK(back.line(q).a4 == fitted.line(q).a4);
        CHECK(back.line(q).a3 == fitted.line(q).a3);
        CHECK(back.line(q).a2 == fitted.line(q).a2);
        CHECK(back.line(q).a1 == fitted.line(q).a1);
        CHECK(back.line(q).intercept == fitted.line(q).intercept);
    }
}

TEST_CASE("read_benchmark rejects incomplete files") {
    std::istringstream missing("1,0,0,0,-0.2,0.2\n2,0,0,0,-0.2,0.2\n");
    CHECK_THROWS_AS(read_benchmark(missing), ParseError);
    std::istringstream short_row("1,0,0,0,0.2\n");
    CHECK_THROWS_AS(read_benchmark(short_row), ParseError);
}
