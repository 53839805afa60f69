#include "fairdist/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace fairdist::oracle {

double empirical_gini(std::span<const double> values) {
    if (values.size() < 2) {
        throw std::invalid_argument("empirical_gini: need at least 2 values");
    }
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const double total = std::accumulate(sorted.begin(), sorted.end(), 0.0);
    if (!(total > 0.0)) {
        throw std::domain_error("empirical_gini: zero total");
    }
    const auto n = static_cast<double>(sorted.size());
    double acc = 0.0;
    for (std::size_t j = 0; j < sorted.size(); ++j) {
        acc += (2.0 * static_cast<double>(j + 1) - n - 1.0) * sorted[j];
    }
    return acc / (n * total);
}

double numeric_lorenz_area(const LorenzParams& params, std::size_t panels) {
    if (panels < 100 || panels % 2 != 0) {
        throw std::invalid_argument("numeric_lorenz_area: panels must be even and >= 100");
    }
    // Uniform-mesh Simpson loses many digits here: the Pareto term behaves
    // like (1-x)^(1/P) near x = 1, so its slope is unbounded. Grading the
    // mesh as x = 1 - (1-t)^m with m = max(2, 2P) turns that factor into
    // the smooth (1-t)^2 and restores the expected convergence order.
    const double m = std::max(2.0, 2.0 * params.P);
    auto transformed = [&](double t) {
        const double u = 1.0 - t;
        const double x = 1.0 - std::pow(u, m);
        return lorenz_value(params, std::clamp(x, 0.0, 1.0)) * m * std::pow(u, m - 1.0);
    };

    const double h = 1.0 / static_cast<double>(panels);
    double sum = transformed(0.0) + transformed(1.0);
    for (std::size_t i = 1; i < panels; ++i) {
        sum += (i % 2 == 1 ? 4.0 : 2.0) * transformed(static_cast<double>(i) * h);
    }
    return sum * h / 3.0;
}

QuintileShares empirical_quintile_shares(std::span<const double> values) {
    if (values.size() < 5) {
        throw std::invalid_argument("empirical_quintile_shares: need at least 5 values");
    }
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const double total = std::accumulate(sorted.begin(), sorted.end(), 0.0);
    if (!(total > 0.0)) {
        throw std::domain_error("empirical_quintile_shares: zero total");
    }

    const double n = static_cast<double>(sorted.size());
    QuintileShares shares;
    for (int q = 0; q < 5; ++q) {
        const double lo = n * q / 5.0;
        const double hi = n * (q + 1) / 5.0;
        double sum = 0.0;
        // Whole observations inside (lo, hi), fractional ones at the edges.
        for (std::size_t j = static_cast<std::size_t>(std::floor(lo));
             j < static_cast<std::size_t>(std::ceil(hi)); ++j) {
            const double weight =
                std::min(hi, static_cast<double>(j + 1)) - std::max(lo, static_cast<double>(j));
            sum += weight * sorted[j];
        }
        shares.q[q] = sum / total;
    }
    return shares;
}

}  // namespace fairdist::oracle
