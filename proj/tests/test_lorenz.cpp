#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "fairdist/lorenz.hpp"

using namespace fairdist;

TEST_CASE("lorenz_value endpoints are exact for any valid params") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> uk(0.0, 1.0);
    std::uniform_real_distribution<double> up(1.0, 30.0);
    for (int i = 0; i < 50; ++i) {
        const LorenzParams p{uk(rng), up(rng)};
        CHECK(lorenz_value(p, 0.0) == 0.0);
        CHECK(lorenz_value(p, 1.0) == 1.0);
    }
}

TEST_CASE("lorenz_value matches hand evaluation of Eq-style form") {
    // k=0.21, P=1.66 at x=0.8: (1-k)*0.8^1.66 + k*(1-0.2^(1/1.66))
    const LorenzParams p{0.21, 1.66};
    const double expected =
        0.79 * std::pow(0.8, 1.66) + 0.21 * (1.0 - std::pow(0.2, 1.0 / 1.66));
    CHECK(lorenz_value(p, 0.8) == doctest::Approx(expected).epsilon(1e-14));
    CHECK(lorenz_value(p, 0.8) == doctest::Approx(0.6758).epsilon(1e-3));
    // top-quintile share consistent with the published table under rounding
    CHECK(1.0 - lorenz_value(p, 0.8) == doctest::Approx(0.323).epsilon(5e-3));
}

TEST_CASE("lorenz_value rejects x outside [0,1] and bad params") {
    CHECK_THROWS_AS(lorenz_value({0.5, 2.0}, -0.01), std::domain_error);
    CHECK_THROWS_AS(lorenz_value({0.5, 2.0}, 1.01), std::domain_error);
    CHECK_THROWS_AS(lorenz_value({-0.1, 2.0}, 0.5), std::domain_error);
    CHECK_THROWS_AS(lorenz_value({0.5, 0.9}, 0.5), std::domain_error);
}

TEST_CASE("lorenz_slope trivial and hand cases") {
    CHECK(lorenz_slope({0.0, 1.0}, 0.3) == doctest::Approx(1.0));
    CHECK(lorenz_slope({0.7, 1.0}, 0.9) == doctest::Approx(1.0));
    // k=0, P=2 at x=0.5 -> 2*0.5 = 1
    CHECK(lorenz_slope({0.0, 2.0}, 0.5) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(lorenz_slope({0.5, 2.0}, 1.0), std::domain_error);
}

TEST_CASE("lorenz_slope matches central finite differences") {
    const LorenzParams p{0.37, 3.1};
    const double h = 1e-6;
    for (double x = 0.1; x < 0.95; x += 0.1) {
        const double fd = (lorenz_value(p, x + h) - lorenz_value(p, x - h)) / (2 * h);
        CHECK(lorenz_slope(p, x) == doctest::Approx(fd).epsilon(1e-6));
    }
}

TEST_CASE("area_under and gini_of closed forms") {
    CHECK(area_under({0.3, 1.0}) == doctest::Approx(0.5));
    CHECK(area_under({0.3, 3.0}) == doctest::Approx(0.25));
    CHECK(area_under({0.39, 2.62}) == doctest::Approx(1.0 / 3.62).epsilon(1e-14));
    CHECK(gini_of({0.5, 1.0}) == doctest::Approx(0.0));
    CHECK(gini_of({0.39, 2.62}) == doctest::Approx(0.4475).epsilon(1e-3));
    CHECK(gini_of({0.09, 14.39}) == doctest::Approx(0.8700).epsilon(1e-3));
}

TEST_CASE("quintile_shares identity curve and published rows") {
    const QuintileShares eq = quintile_shares({0.8, 1.0});
    for (double q : eq.q) CHECK(q == doctest::Approx(0.2).epsilon(1e-14));

    const QuintileShares wnba = quintile_shares({0.21, 1.66});
    const double expected[5] = {0.081, 0.148, 0.199, 0.248, 0.323};
    for (int i = 0; i < 5; ++i) {
        CHECK(std::abs(wnba.q[i] - expected[i]) < 0.002);
    }

    const QuintileShares atp = quintile_shares({0.09, 14.39});
    CHECK(std::abs(atp.q[4] - 0.954) < 0.002);
    CHECK(std::abs(atp.q[0] - 0.001) < 0.002);
}

TEST_CASE("quintile_shares sums to 1 and is nondecreasing for random params") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> uk(0.0, 1.0);
    std::uniform_real_distribution<double> up(1.0, 30.0);
    for (int i = 0; i < 100; ++i) {
        const QuintileShares s = quintile_shares({uk(rng), up(rng)});
        CHECK(std::abs(s.sum() - 1.0) < 1e-12);
        for (int j = 0; j < 4; ++j) CHECK(s.q[j] <= s.q[j + 1] + 1e-12);
    }
}

TEST_CASE("lorenz_value monotone and slope nondecreasing on grids") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> uk(0.0, 1.0);
    std::uniform_real_distribution<double> up(1.0, 30.0);
    for (int i = 0; i < 25; ++i) {
        const LorenzParams p{uk(rng), up(rng)};
        double prev_v = 0.0;
        for (int j = 1; j <= 1000; ++j) {
            const double v = lorenz_value(p, j / 1000.0);
            CHECK(v >= prev_v - 1e-15);
            prev_v = v;
        }
        double prev_s = lorenz_slope(p, 0.0);
        for (int j = 1; j <= 999; ++j) {
            const double x = j * (1.0 - 1e-6) / 999.0;
            const double s = lorenz_slope(p, x);
            CHECK(s >= prev_s - 1e-12);
            prev_s = s;
        }
    }
}

TEST_CASE("build_empirical_lorenz shapes") {
    SUBCASE("uniform values lie on the diagonal") {
        const std::vector<double> v(10, 1.0);
        const EmpiricalLorenz emp = build_empirical_lorenz(v);
        REQUIRE(emp.x.size() == 10);
        for (std::size_t j = 0; j < 10; ++j) {
            CHECK(emp.y[j] == doctest::Approx(emp.x[j]).epsilon(1e-14));
        }
        CHECK(emp.x.back() == 1.0);
        CHECK(emp.y.back() == 1.0);
    }
    SUBCASE("one holds all") {
        std::vector<double> v(10, 0.0);
        v[3] = 1.0;
        const EmpiricalLorenz emp = build_empirical_lorenz(v);
        for (std::size_t j = 0; j + 1 < 10; ++j) CHECK(emp.y[j] == 0.0);
        CHECK(emp.y[9] == 1.0);
    }
    SUBCASE("hand cumulative sums for 1..10") {
        const std::vector<double> v = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
        const EmpiricalLorenz emp = build_empirical_lorenz(v);
        CHECK(emp.x[4] == doctest::Approx(0.5));
        CHECK(emp.y[4] == doctest::Approx(15.0 / 55.0).epsilon(1e-14));
    }
    SUBCASE("validation errors") {
        CHECK_THROWS_AS(build_empirical_lorenz(std::vector<double>(9, 1.0)),
                        std::invalid_argument);
        CHECK_THROWS_AS(build_empirical_lorenz(std::vector<double>(10, 0.0)),
                        std::domain_error);
        std::vector<double> neg(10, 1.0);
        neg[2] = -1.0;
        CHECK_THROWS_AS(build_empirical_lorenz(neg), std::domain_error);
    }
}

TEST_CASE("build_empirical_lorenz is scale invariant") {
    std::vector<double> v = {3, 1, 4, 1, 5, 9, 2, 6, 5, 3, 5, 8};
    std::vector<double> scaled = v;
    for (double& s : scaled) s *= 17.5;
    const EmpiricalLorenz a = build_empirical_lorenz(v);
    const EmpiricalLorenz b = build_empirical_lorenz(scaled);
    for (std::size_t j = 0; j < a.x.size(); ++j) {
        CHECK(a.x[j] == b.x[j]);
        CHECK(a.y[j] == doctest::Approx(b.y[j]).epsilon(1e-14));
    }
}

static EmpiricalLorenz sample_curve(const LorenzParams& p, std::size_t n) {
    EmpiricalLorenz emp;
    emp.x.resize(n);
    emp.y.resize(n);
    for (std::size_t j = 1; j <= n; ++j) {
        const double x = static_cast<double>(j) / static_cast<double>(n);
        emp.x[j - 1] = x;
        emp.y[j - 1] = lorenz_value(p, x);
    }
    return emp;
}

TEST_CASE("fit_lorenz recovers generating parameters from noise-free points") {
    const LorenzParams truth{0.50, 2.76};
    const LorenzFit fit = fit_lorenz(sample_curve(truth, 1000));
    CHECK(std::abs(fit.params.k - truth.k) < 0.01);
    CHECK(std::abs(fit.params.P - truth.P) < 0.01);
    CHECK(fit.r2 >= 0.999999);
    CHECK_FALSE(fit.hit_upper_bound);
}

TEST_CASE("fit_lorenz on equal salaries finds the identity curve") {
    const std::vector<double> v(20, 3.5);
    const LorenzFit fit = fit_lorenz(build_empirical_lorenz(v));
    CHECK(fit.params.P <= 1.001);
    CHECK(gini_of(fit.params) <= 0.001);
}

TEST_CASE("fit_lorenz is deterministic") {
    const LorenzParams truth{0.31, 3.52};
    const EmpiricalLorenz emp = sample_curve(truth, 500);
    const LorenzFit a = fit_lorenz(emp);
    const LorenzFit b = fit_lorenz(emp);
    CHECK(a.params.k == b.params.k);
    CHECK(a.params.P == b.params.P);
    CHECK(a.sse == b.sse);
}

TEST_CASE("r_squared properties") {
    const LorenzParams p{0.4, 3.0};
    const EmpiricalLorenz emp = sample_curve(p, 200);
    CHECK(r_squared(emp, p) == doctest::Approx(1.0).epsilon(1e-9));

    // deliberately wrong params on near-diagonal data give a negative score
    const EmpiricalLorenz diag = sample_curve({0.0, 1.0}, 50);
    CHECK(r_squared(diag, {1.0, 20.0}) < 0.0);

    EmpiricalLorenz flat;
    flat.x = {0.5, 1.0};
    flat.y = {1.0, 1.0};
    CHECK_THROWS_AS(r_squared(flat, p), std::domain_error);
}
