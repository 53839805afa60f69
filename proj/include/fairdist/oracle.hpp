#pragma once

#include <cstddef>
#include <span>

#include "fairdist/lorenz.hpp"

namespace fairdist::oracle {

// Discrete mean-difference Gini over the raw values:
//   sum_j (2j - n - 1) x_(j) / (n^2 * mean), ascending order.
double empirical_gini(std::span<const double> values);

// Composite Simpson integral of lorenz_value over [0,1]. The mesh is
// graded toward x = 1 (where the Pareto term has unbounded slope) so the
// stated panel count reaches closed-form agreement. Panels must be even
// and >= 100.
double numeric_lorenz_area(const LorenzParams& params, std::size_t panels);

// Sort ascending, sum each fifth; fractional boundary observations are
// split proportionally when n is not divisible by 5.
QuintileShares empirical_quintile_shares(std::span<const double> values);

}  // namespace fairdist::oracle
