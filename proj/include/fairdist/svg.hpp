#pragma once

#include <span>
#include <string>

#include "fairdist/assess.hpp"
#include "fairdist/benchmark.hpp"

namespace fairdist {

/// Five-panel SVG chart: one panel per quintile with the fairness line as
/// a polyline plus optional scatter markers for sports and country points.
/// Axes run 0..1 in both directions. Output is deterministic.
std::string render_fairness_svg(const FairnessBenchmark& benchmark,
                                std::span<const SharePoint> sports,
                                std::span<const CountryRecord> countries,
                                double step = 0.001);

}  // namespace fairdist
