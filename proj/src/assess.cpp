#include "fairdist/assess.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fairdist {

bool EnvelopeReport::clean() const {
    return std::all_of(indicators.begin(), indicators.end(),
                       [](const Indicator& ind) { return ind.violations.empty(); });
}

const EnvelopeReport::Indicator& EnvelopeReport::indicator(
    const std::string& name) const {
    for (const auto& ind : indicators) {
        if (ind.name == name) return ind;
    }
    throw std::invalid_argument("unknown envelope indicator: " + name);
}

CountryAssessment assess_country(const CountryRecord& record,
                                 const FairnessBenchmark& benchmark) {
    const QuintileShares fair = fair_shares(benchmark, record.gini);
    CountryAssessment out;
    out.name = record.name;
    out.gini = record.gini;
    for (int i = 0; i < 5; ++i) {
        QuintileAssessment& qa = out.quintiles[i];
        qa.actual = record.shares.q[i];
        qa.fair = fair.q[i];
        if (qa.fair == 0.0) {
            throw std::domain_error("assess_country: fair share is zero for '" +
                                    record.name + "'");
        }
        qa.pct_dev = (qa.actual - qa.fair) / qa.fair * 100.0;
        if (std::abs(qa.pct_dev) < 1e-9) {
            qa.direction = Direction::on;
        } else {
            qa.direction = qa.pct_dev > 0.0 ? Direction::above : Direction::below;
        }
    }
    return out;
}

CohortSummary summarize(std::span<const CountryAssessment> assessments) {
    if (assessments.empty()) {
        throw std::invalid_argument("summarize: empty assessment list");
    }
    CohortSummary summary;
    summary.cohort_size = assessments.size();
    for (int q = 0; q < 5; ++q) {
        QuintileSummary& qs = summary.quintiles[q];
        std::vector<NamedValue> devs;
        devs.reserve(assessments.size());
        for (const auto& a : assessments) {
            const QuintileAssessment& qa = a.quintiles[q];
            switch (qa.direction) {
                case Direction::above: ++qs.above; break;
                case Direction::below: ++qs.below; break;
                case Direction::on: ++qs.on; break;
            }
            devs.push_back({std::abs(qa.pct_dev), a.name});
        }
        std::sort(devs.begin(), devs.end(), [](const NamedValue& a, const NamedValue& b) {
            return a.value != b.value ? a.value < b.value : a.country < b.country;
        });
        qs.min_dev = devs.front();
        qs.max_dev = devs.back();
        qs.median_dev = devs[(devs.size() - 1) / 2];  // lower-middle for even n
        double sum = 0.0;
        for (const auto& d : devs) sum += d.value;
        qs.mean_dev = sum / static_cast<double>(devs.size());
    }
    return summary;
}

EnvelopeReport envelope_check(std::span<const CountryRecord> records,
                              std::span<const SharePoint> reference) {
    if (reference.empty()) {
        throw std::invalid_argument("envelope_check: empty reference set");
    }
    EnvelopeReport report;
    static const std::array<std::string, 6> names = {"gini", "q1", "q2",
                                                     "q3",   "q4", "q5"};
    auto value_of = [](const auto& row, int idx) {
        return idx == 0 ? row.gini : row.shares.q[idx - 1];
    };

    constexpr double kSlack = 1e-12;
    for (int idx = 0; idx < 6; ++idx) {
        EnvelopeReport::Indicator& ind = report.indicators[idx];
        ind.name = names[idx];
        ind.reference_min = value_of(reference[0], idx);
        ind.reference_max = ind.reference_min;
        for (const auto& ref : reference) {
            ind.reference_min = std::min(ind.reference_min, value_of(ref, idx));
            ind.reference_max = std::max(ind.reference_max, value_of(ref, idx));
        }
        for (const auto& rec : records) {
            const double v = value_of(rec, idx);
            if (v < ind.reference_min - kSlack || v > ind.reference_max + kSlack) {
                ind.violations.push_back({rec.name, v});
            }
        }
    }
    return report;
}

TargetPlan plan_targets(const FairnessBenchmark& benchmark, double gini) {
    if (!(gini >= 0.0 && gini < 1.0)) {
        throw std::domain_error("plan_targets: gini must lie in [0,1)");
    }
    TargetPlan plan;
    plan.gini = gini;
    plan.shares = fair_shares(benchmark, gini);
    plan.bottom40 = plan.shares.bottom40();
    if (plan.shares.q[0] == 0.0) {
        throw std::domain_error("plan_targets: lowest-quintile fair share is zero");
    }
    plan.gap_ratio = plan.shares.q[4] / plan.shares.q[0];
    return plan;
}

double solve_gini_for_bottom40(const FairnessBenchmark& benchmark, double target) {
    auto bottom40_at = [&](double g) {
        return benchmark.line(1).value(g) + benchmark.line(2).value(g);
    };

    // Grid scan for the first bracketing interval (guards against
    // non-monotone stretches); bisection inside it.
    constexpr int kGrid = 1000;
    double lo = 0.0, hi = 0.0;
    bool bracketed = false;
    double prev_g = 0.0, prev_f = bottom40_at(0.0) - target;
    if (std::abs(prev_f) <= 1e-9) return 0.0;
    for (int i = 1; i <= kGrid; ++i) {
        const double g = static_cast<double>(i) / kGrid;
        const double f = bottom40_at(g) - target;
        if (prev_f == 0.0 || (prev_f < 0.0) != (f < 0.0) || f == 0.0) {
            lo = prev_g;
            hi = g;
            bracketed = true;
            break;
        }
        prev_g = g;
        prev_f = f;
    }
    if (!bracketed) {
        throw std::domain_error("solve_gini_for_bottom40: target outside attained range");
    }

    double f_lo = bottom40_at(lo) - target;
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = (lo + hi) / 2.0;
        const double f_mid = bottom40_at(mid) - target;
        if (std::abs(f_mid) <= 1e-12 || hi - lo < 1e-15) return mid;
        if ((f_lo < 0.0) != (f_mid < 0.0)) {
            hi = mid;
        } else {
            lo = mid;
            f_lo = f_mid;
        }
    }
    return (lo + hi) / 2.0;
}

}  // namespace fairdist
