#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "fairdist/benchmark.hpp"
#include "fairdist/ingest.hpp"

namespace fairdist {

enum class Direction { above, below, on };

struct QuintileAssessment {
    double actual = 0.0;
    double fair = 0.0;
    double pct_dev = 0.0;  // signed percent: (actual - fair) / fair * 100
    Direction direction = Direction::on;
};

struct CountryAssessment {
    std::string name;
    double gini = 0.0;
    std::array<QuintileAssessment, 5> quintiles;  // lowest to top
};

struct NamedValue {
    double value = 0.0;
    std::string country;
};

struct QuintileSummary {
    std::size_t above = 0, below = 0, on = 0;
    NamedValue min_dev, median_dev, max_dev;  // of |pct_dev|
    double mean_dev = 0.0;
};

struct CohortSummary {
    std::array<QuintileSummary, 5> quintiles;
    std::size_t cohort_size = 0;
};

struct EnvelopeReport {
    struct Violation {
        std::string country;
        double value = 0.0;
    };
    struct Indicator {
        std::string name;  // "gini", "q1".."q5"
        double reference_min = 0.0;
        double reference_max = 0.0;
        std::vector<Violation> violations;
    };
    std::array<Indicator, 6> indicators;

    bool clean() const;
    const Indicator& indicator(const std::string& name) const;
};

struct TargetPlan {
    double gini = 0.0;
    QuintileShares shares;
    double bottom40 = 0.0;
    double gap_ratio = 0.0;  // q5 / q1
};

CountryAssessment assess_country(const CountryRecord& record,
                                 const FairnessBenchmark& benchmark);

// Per-quintile counts and min/median/max/mean of |pct_dev|, each extreme
// with the owning country. Median of an even-sized list is the
// lower-middle element.
CohortSummary summarize(std::span<const CountryAssessment> assessments);

EnvelopeReport envelope_check(std::span<const CountryRecord> records,
                              std::span<const SharePoint> reference);

TargetPlan plan_targets(const FairnessBenchmark& benchmark, double gini);

// Smallest g with q1(g) + q2(g) == target, to 1e-9, found by a grid scan
// for a bracket followed by bisection.
double solve_gini_for_bottom40(const FairnessBenchmark& benchmark,
                               double target);

}  // namespace fairdist
