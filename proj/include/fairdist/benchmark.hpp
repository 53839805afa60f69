#pragma once

#include <array>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fairdist/ingest.hpp"
#include "fairdist/lorenz.hpp"

namespace fairdist {

/// One fairness line: a quartic in the Gini index,
///   share(g) = a4 g^4 + a3 g^3 + a2 g^2 + a1 g + intercept,
/// with the intercept pinned at 0.2.
struct FairnessLine {
    int quintile = 0;  // 1 (lowest 20%) .. 5 (top 20%)
    double a4 = 0.0, a3 = 0.0, a2 = 0.0, a1 = 0.0;
    double intercept = 0.2;
    std::optional<double> r2;  // populated by fit_benchmark

    double value(double g) const {
        return (((a4 * g + a3) * g + a2) * g + a1) * g + intercept;
    }
    double coefficient_sum() const { return a4 + a3 + a2 + a1; }
    // Value required at g = 1: 1 for the top quintile, 0 otherwise.
    double endpoint() const { return quintile == 5 ? 1.0 : 0.0; }
};

struct FairnessBenchmark {
    std::array<FairnessLine, 5> lines;  // quintiles 1..5
    std::string provenance;             // "published" or a fit descriptor

    const FairnessLine& line(int quintile) const { return lines[quintile - 1]; }
};

struct ConditionViolation {
    int condition = 0;  // 1..5
    double g = 0.0;     // grid location (0 for the g-independent condition 4)
    int quintile = 0;   // lower quintile of the offending pair, or the line
    double magnitude = 0.0;
};

struct ConditionReport {
    std::array<bool, 5> passed{true, true, true, true, true};
    std::vector<ConditionViolation> violations;
    double worst = 0.0;

    bool all_passed() const {
        return passed[0] && passed[1] && passed[2] && passed[3] && passed[4];
    }
};

struct ValidationTolerances {
    double endpoint = 1e-6;  // conditions 1 and 2
    double ordering = 1e-6;  // condition 3
    double slope = 1e-12;    // condition 4
    double sum = 1e-6;       // condition 5

    // Printed coefficients carry 4-decimal rounding.
    static ValidationTolerances for_published();
    // Fitted lines honor the constraints to machine precision.
    static ValidationTolerances for_fitted();
    static ValidationTolerances for_provenance(const std::string& provenance);
};

// The printed coefficients, verbatim.
FairnessBenchmark published_benchmark();

// Evaluate every line at the given gini; no renormalization.
QuintileShares fair_shares(const FairnessBenchmark& benchmark, double gini);

// Per quintile, equality-constrained least squares on basis (g..g^4) with
// the intercept pinned at 0.2 and the coefficient sum pinned at the
// endpoint value; conditions 3-5 checked afterwards on the validation grid.
// Requires >= 4 distinct gini values strictly inside (0,1).
std::pair<FairnessBenchmark, ConditionReport> fit_benchmark(
    std::span<const SharePoint> points);

ConditionReport validate(const FairnessBenchmark& benchmark,
                         double grid_step = 0.001);
ConditionReport validate(const FairnessBenchmark& benchmark,
                         const ValidationTolerances& tol,
                         double grid_step = 0.001);

// `quintile,a4,a3,a2,a1,intercept` rows at 17 significant digits, preceded
// by a `# provenance:` comment; round-trips losslessly.
void write_benchmark(std::ostream& out, const FairnessBenchmark& benchmark);
FairnessBenchmark read_benchmark(std::istream& in);

}  // namespace fairdist
