#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace fairdist {

/// Parameters of the two-term Lorenz curve
///   y(x) = (1-k) * x^P + k * (1 - (1-x)^(1/P)),  k in [0,1], P >= 1.
struct LorenzParams {
    double k = 0.0;
    double P = 1.0;
};

/// Quintile shares, lowest 20% first.
struct QuintileShares {
    std::array<double, 5> q{};

    double sum() const { return q[0] + q[1] + q[2] + q[3] + q[4]; }
    double bottom40() const { return q[0] + q[1]; }
};

/// Cumulative Lorenz plot built from ranked, normalized observations.
/// x is strictly increasing with x.back() == 1; y is nondecreasing with
/// y.back() == 1 and y[j] <= x[j].
struct EmpiricalLorenz {
    std::vector<double> x;
    std::vector<double> y;
};

struct LorenzFit {
    LorenzParams params;
    double sse = 0.0;
    double r2 = 0.0;
    std::size_t n = 0;
    bool hit_upper_bound = false;  // optimum pinned at the P search bound
};

// Curve evaluation. Exactly 0 at x=0 and exactly 1 at x=1.
double lorenz_value(const LorenzParams& params, double x);

// Analytic derivative; diverges at x -> 1 when P > 1.
double lorenz_slope(const LorenzParams& params, double x);

// Closed forms: area = 1/(P+1), gini = (P-1)/(P+1).
double area_under(const LorenzParams& params);
double gini_of(const LorenzParams& params);

// q_i = y(i/5) - y((i-1)/5); sums to 1 exactly by telescoping.
QuintileShares quintile_shares(const LorenzParams& params);

// Sort ascending, x_j = j/n, y_j = cumsum_j / total. Requires n >= 10,
// nonnegative values, positive total.
EmpiricalLorenz build_empirical_lorenz(std::span<const double> values);

// SSE minimization over k in [0,1], P in [1,40]: coarse grid seed plus
// Nelder-Mead refinement. Deterministic.
LorenzFit fit_lorenz(const EmpiricalLorenz& emp);

// 1 - SSE/SST; may be negative. Requires at least two distinct y values.
double r_squared(const EmpiricalLorenz& emp, const LorenzParams& params);

}  // namespace fairdist
