#include "fairdist/lorenz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace fairdist {

namespace {

constexpr double kMinP = 1.0;
constexpr double kMaxP = 40.0;

void require_valid(const LorenzParams& p) {
    if (!(p.k >= 0.0 && p.k <= 1.0) || !(p.P >= 1.0) || !std::isfinite(p.P)) {
        throw std::domain_error("invalid Lorenz parameters: k must be in [0,1], P >= 1");
    }
}

}  // namespace

double lorenz_value(const LorenzParams& params, double x) {
    require_valid(params);
    if (!(x >= 0.0 && x <= 1.0)) {
        throw std::domain_error("lorenz_value: x outside [0,1]");
    }
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    const double power = std::pow(x, params.P);
    const double pareto = 1.0 - std::pow(1.0 - x, 1.0 / params.P);
    return (1.0 - params.k) * power + params.k * pareto;
}

double lorenz_slope(const LorenzParams& params, double x) {
    require_valid(params);
    if (!(x >= 0.0 && x < 1.0)) {
        if (x == 1.0 && params.P == 1.0) return 1.0;
        throw std::domain_error("lorenz_slope: x outside [0,1), unbounded at 1 for P > 1");
    }
    const double power = params.P * std::pow(x, params.P - 1.0);
    const double pareto = std::pow(1.0 - x, 1.0 / params.P - 1.0) / params.P;
    return (1.0 - params.k) * power + params.k * pareto;
}

double area_under(const LorenzParams& params) {
    require_valid(params);
    return 1.0 / (params.P + 1.0);
}

double gini_of(const LorenzParams& params) {
    require_valid(params);
    return (params.P - 1.0) / (params.P + 1.0);
}

QuintileShares quintile_shares(const LorenzParams& params) {
    QuintileShares shares;
    double prev = 0.0;
    for (int i = 1; i <= 5; ++i) {
        const double cur = lorenz_value(params, i / 5.0);
        shares.q[i - 1] = cur - prev;
        prev = cur;
    }
    return shares;
}

EmpiricalLorenz build_empirical_lorenz(std::span<const double> values) {
    if (values.size() < 10) {
        throw std::invalid_argument("build_empirical_lorenz: need at least 10 observations");
    }
    std::vector<double> sorted(values.begin(), values.end());
    for (double v : sorted) {
        if (!(v >= 0.0)) {
            throw std::domain_error("build_empirical_lorenz: negative value");
        }
    }
    std::sort(sorted.begin(), sorted.end());
    const double total = std::accumulate(sorted.begin(), sorted.end(), 0.0);
    if (!(total > 0.0)) {
        throw std::domain_error("build_empirical_lorenz: all-zero total");
    }

    const std::size_t n = sorted.size();
    EmpiricalLorenz emp;
    emp.x.resize(n);
    emp.y.resize(n);
    double running = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        running += sorted[j];
        emp.x[j] = static_cast<double>(j + 1) / static_cast<double>(n);
        emp.y[j] = running / total;
    }
    emp.x[n - 1] = 1.0;
    emp.y[n - 1] = 1.0;
    return emp;
}

namespace {

// SSE of the parametric curve against the empirical points. Logs of the
// abscissas are precomputed once per fit; each candidate costs two exp
// calls per point.
struct SseObjective {
    const EmpiricalLorenz& emp;
    std::vector<double> log_x;      // log(x_j)
    std::vector<double> log_1mx;    // log(1 - x_j), x_j < 1 only

    explicit SseObjective(const EmpiricalLorenz& e) : emp(e) {
        log_x.reserve(e.x.size());
        log_1mx.reserve(e.x.size());
        for (double xv : e.x) {
            log_x.push_back(std::log(xv));
            log_1mx.push_back(xv < 1.0 ? std::log1p(-xv) : 0.0);
        }
    }

    double operator()(double k, double P) const {
        k = std::clamp(k, 0.0, 1.0);
        P = std::clamp(P, kMinP, kMaxP);
        const double inv_p = 1.0 / P;
        double sse = 0.0;
        const std::size_t n = emp.x.size();
        for (std::size_t j = 0; j < n; ++j) {
            double model;
            if (emp.x[j] >= 1.0) {
                model = 1.0;
            } else {
                const double power = std::exp(P * log_x[j]);
                const double pareto = 1.0 - std::exp(inv_p * log_1mx[j]);
                model = (1.0 - k) * power + k * pareto;
            }
            const double r = model - emp.y[j];
            sse += r * r;
        }
        return sse;
    }
};

struct Candidate {
    double k, P, sse;
};

// Two-dimensional Nelder-Mead with parameters projected into bounds at
// every evaluation. Runs until the simplex collapses (diameter below
// 1e-10 and value spread below 1e-15) or 2000 iterations pass; stopping
// on stalls of the best vertex alone quits while the simplex is still
// wide and leaves parameters short of the optimum.
Candidate nelder_mead(const SseObjective& f, double k0, double P0) {
    struct Vertex {
        double k, P, val;
    };
    auto eval = [&](double k, double P) {
        k = std::clamp(k, 0.0, 1.0);
        P = std::clamp(P, kMinP, kMaxP);
        return Vertex{k, P, f(k, P)};
    };

    const double dk = 0.05;
    const double dp = std::max(0.05, 0.1 * P0);
    std::array<Vertex, 3> s = {eval(k0, P0), eval(k0 + dk, P0), eval(k0, P0 + dp)};

    for (int iter = 0; iter < 2000; ++iter) {
        std::sort(s.begin(), s.end(),
                  [](const Vertex& a, const Vertex& b) { return a.val < b.val; });
        double diameter = 0.0;
        for (int a = 0; a < 3; ++a) {
            for (int b = a + 1; b < 3; ++b) {
                diameter = std::max(diameter, std::abs(s[a].k - s[b].k) +
                                                  std::abs(s[a].P - s[b].P));
            }
        }
        if (diameter < 1e-10 && s[2].val - s[0].val < 1e-15) break;

        const double ck = (s[0].k + s[1].k) / 2.0;
        const double cp = (s[0].P + s[1].P) / 2.0;

        Vertex refl = eval(ck + (ck - s[2].k), cp + (cp - s[2].P));
        if (refl.val < s[0].val) {
            Vertex exp_v = eval(ck + 2.0 * (ck - s[2].k), cp + 2.0 * (cp - s[2].P));
            s[2] = exp_v.val < refl.val ? exp_v : refl;
        } else if (refl.val < s[1].val) {
            s[2] = refl;
        } else {
            Vertex contr = eval(ck + 0.5 * (s[2].k - ck), cp + 0.5 * (s[2].P - cp));
            if (contr.val < s[2].val) {
                s[2] = contr;
            } else {
                s[1] = eval(s[0].k + 0.5 * (s[1].k - s[0].k),
                            s[0].P + 0.5 * (s[1].P - s[0].P));
                s[2] = eval(s[0].k + 0.5 * (s[2].k - s[0].k),
                            s[0].P + 0.5 * (s[2].P - s[0].P));
            }
        }
    }
    std::sort(s.begin(), s.end(),
              [](const Vertex& a, const Vertex& b) { return a.val < b.val; });
    return {s[0].k, s[0].P, s[0].val};
}

}  // namespace

LorenzFit fit_lorenz(const EmpiricalLorenz& emp) {
    if (emp.x.size() < 10 || emp.x.size() != emp.y.size()) {
        throw std::invalid_argument("fit_lorenz: need at least 10 empirical points");
    }
    const SseObjective objective(emp);

    // Coarse grid: k in {0, 0.01, ..., 1}, P in 80 log-spaced values.
    Candidate best{0.0, 1.0, std::numeric_limits<double>::infinity()};
    const int n_p = 80;
    const double log_max = std::log(kMaxP);
    for (int pi = 0; pi < n_p; ++pi) {
        const double P = std::exp(log_max * pi / (n_p - 1));
        for (int ki = 0; ki <= 100; ++ki) {
            const double k = ki / 100.0;
            const double sse = objective(k, P);
            if (sse < best.sse) best = {k, P, sse};
        }
    }

    Candidate refined = nelder_mead(objective, best.k, best.P);
    if (refined.sse > best.sse) refined = best;

    LorenzFit fit;
    fit.params = {std::clamp(refined.k, 0.0, 1.0), std::clamp(refined.P, kMinP, kMaxP)};
    fit.sse = refined.sse;
    fit.n = emp.x.size();
    fit.hit_upper_bound = fit.params.P >= kMaxP - 1e-9;
    fit.r2 = r_squared(emp, fit.params);
    return fit;
}

double r_squared(const EmpiricalLorenz& emp, const LorenzParams& params) {
    if (emp.y.size() < 2) {
        throw std::invalid_argument("r_squared: need at least 2 points");
    }
    const double mean = std::accumulate(emp.y.begin(), emp.y.end(), 0.0) /
                        static_cast<double>(emp.y.size());
    double sst = 0.0, sse = 0.0;
    for (std::size_t j = 0; j < emp.y.size(); ++j) {
        const double dy = emp.y[j] - mean;
        sst += dy * dy;
        const double r = lorenz_value(params, emp.x[j]) - emp.y[j];
        sse += r * r;
    }
    if (!(sst > 0.0)) {
        throw std::domain_error("r_squared: all empirical y identical");
    }
    return 1.0 - sse / sst;
}

}  // namespace fairdist
