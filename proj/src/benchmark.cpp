#include "fairdist/benchmark.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <set>
#include <sstream>
#include <stdexcept>

namespace fairdist {

ValidationTolerances ValidationTolerances::for_published() {
    // Printed coefficients are 4-decimal roundings; the worst residuals
    // they induce are just under 1e-4 on every condition.
    return {.endpoint = 2e-4, .ordering = 1e-4, .slope = 1e-12, .sum = 1e-4 + 1e-12};
}

ValidationTolerances ValidationTolerances::for_fitted() {
    return {.endpoint = 1e-12, .ordering = 1e-9, .slope = 1e-12, .sum = 1e-9};
}

ValidationTolerances ValidationTolerances::for_provenance(const std::string& provenance) {
    if (provenance == "published") return for_published();
    if (provenance.rfind("fitted", 0) == 0) return for_fitted();
    return {};
}

FairnessBenchmark published_benchmark() {
    FairnessBenchmark bench;
    bench.provenance = "published";
    bench.lines = {{
        {1, 0.1956, -0.6612, 0.9356, -0.6700, 0.2, std::nullopt},
        {2, -0.4914, 1.3968, -1.1195, 0.0141, 0.2, std::nullopt},
        {3, 0.2545, 0.0508, -0.6650, 0.1597, 0.2, std::nullopt},
        {4, 1.9481, -3.3533, 1.0625, 0.1428, 0.2, std::nullopt},
        {5, -1.9067, 2.5669, -0.2136, 0.3534, 0.2, std::nullopt},
    }};
    return bench;
}

QuintileShares fair_shares(const FairnessBenchmark& benchmark, double gini) {
    if (!(gini >= 0.0 && gini <= 1.0)) {
        throw std::domain_error("fair_shares: gini outside [0,1]");
    }
    QuintileShares shares;
    for (int q = 1; q <= 5; ++q) {
        shares.q[q - 1] = benchmark.line(q).value(gini);
    }
    return shares;
}

namespace {

// Solve A x = b for a 3x3 system by Gaussian elimination with partial
// pivoting. The reduced normal equations are tiny and well-conditioned
// over [0,1].
std::array<double, 3> solve3(std::array<std::array<double, 3>, 3> a,
                             std::array<double, 3> b) {
    for (int col = 0; col < 3; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 3; ++r) {
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        }
        if (a[pivot][col] == 0.0) {
            throw std::domain_error("fit_benchmark: rank-deficient design");
        }
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        for (int r = 0; r < 3; ++r) {
            if (r == col) continue;
            const double f = a[r][col] / a[col][col];
            for (int c = col; c < 3; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    return {b[0] / a[0][0], b[1] / a[1][1], b[2] / a[2][2]};
}

FairnessLine fit_line(std::span<const SharePoint> points, int quintile) {
    // Substitute a4 = S - a1 - a2 - a3 with S the pinned coefficient sum,
    // leaving a 3-parameter ordinary least squares problem:
    //   y - 0.2 - S g^4 = a1 (g - g^4) + a2 (g^2 - g^4) + a3 (g^3 - g^4).
    const double endpoint_sum = (quintile == 5 ? 1.0 : 0.0) - 0.2;
    std::array<std::array<double, 3>, 3> ata{};
    std::array<double, 3> atb{};
    for (const auto& pt : points) {
        const double g = pt.gini;
        const double g2 = g * g, g3 = g2 * g, g4 = g2 * g2;
        const std::array<double, 3> phi = {g - g4, g2 - g4, g3 - g4};
        const double resid = pt.shares.q[quintile - 1] - 0.2 - endpoint_sum * g4;
        for (int i = 0; i < 3; ++i) {
            atb[i] += phi[i] * resid;
            for (int j = 0; j < 3; ++j) ata[i][j] += phi[i] * phi[j];
        }
    }
    const auto [a1, a2, a3] = solve3(ata, atb);

    FairnessLine line;
    line.quintile = quintile;
    line.a1 = a1;
    line.a2 = a2;
    line.a3 = a3;
    line.a4 = endpoint_sum - a1 - a2 - a3;
    line.intercept = 0.2;

    // R^2 over the input points plus the two anchor coordinates the line
    // is constrained through (whose residuals are zero by construction).
    double mean = 0.2 + (0.2 + endpoint_sum);
    for (const auto& pt : points) mean += pt.shares.q[quintile - 1];
    mean /= static_cast<double>(points.size() + 2);
    double sse = 0.0;
    double sst = (0.2 - mean) * (0.2 - mean) +
                 (0.2 + endpoint_sum - mean) * (0.2 + endpoint_sum - mean);
    for (const auto& pt : points) {
        const double y = pt.shares.q[quintile - 1];
        const double r = line.value(pt.gini) - y;
        sse += r * r;
        sst += (y - mean) * (y - mean);
    }
    if (sst > 0.0) line.r2 = 1.0 - sse / sst;
    return line;
}

}  // namespace

std::pair<FairnessBenchmark, ConditionReport> fit_benchmark(
    std::span<const SharePoint> points) {
    std::set<double> distinct;
    for (const auto& pt : points) {
        if (!(pt.gini > 0.0 && pt.gini < 1.0)) {
            throw std::domain_error("fit_benchmark: gini values must lie strictly inside (0,1)");
        }
        distinct.insert(pt.gini);
    }
    if (distinct.size() < 4) {
        throw std::domain_error("fit_benchmark: rank-deficient design, need >= 4 distinct gini values");
    }

    FairnessBenchmark bench;
    std::ostringstream prov;
    prov << "fitted(n=" << points.size() << ")";
    bench.provenance = prov.str();
    for (int q = 1; q <= 5; ++q) {
        bench.lines[q - 1] = fit_line(points, q);
    }
    return {bench, validate(bench)};
}

ConditionReport validate(const FairnessBenchmark& benchmark, double grid_step) {
    return validate(benchmark,
                    ValidationTolerances::for_provenance(benchmark.provenance),
                    grid_step);
}

ConditionReport validate(const FairnessBenchmark& benchmark,
                         const ValidationTolerances& tol, double grid_step) {
    ConditionReport report;
    auto flag = [&report](int condition, double g, int quintile, double magnitude) {
        report.passed[condition - 1] = false;
        report.violations.push_back({condition, g, quintile, magnitude});
        report.worst = std::max(report.worst, magnitude);
    };

    // Conditions 1 and 2: endpoints at g = 0 and g = 1.
    for (int q = 1; q <= 5; ++q) {
        const FairnessLine& line = benchmark.line(q);
        const double at0 = std::abs(line.value(0.0) - 0.2);
        if (at0 > tol.endpoint) flag(1, 0.0, q, at0);
        const double at1 = std::abs(line.value(1.0) - line.endpoint());
        if (at1 > tol.endpoint) flag(2, 1.0, q, at1);
    }

    // Condition 4: slopes at g = 0 nondecreasing across quintiles.
    for (int q = 1; q <= 4; ++q) {
        const double gap = benchmark.line(q).a1 - benchmark.line(q + 1).a1;
        if (gap > tol.slope) flag(4, 0.0, q, gap);
    }

    // Conditions 3 and 5 on the grid.
    const auto steps = static_cast<std::size_t>(std::llround(1.0 / grid_step));
    bool cond3_open = false;
    bool cond5_open = false;
    for (std::size_t i = 0; i <= steps; ++i) {
        const double g = (i == steps) ? 1.0 : static_cast<double>(i) * grid_step;
        std::array<double, 5> vals;
        for (int q = 1; q <= 5; ++q) vals[q - 1] = benchmark.line(q).value(g);

        double worst3 = std::max(-vals[0], vals[4] - 1.0);
        int worst_pair = 0;
        for (int q = 0; q < 4; ++q) {
            if (vals[q] - vals[q + 1] > worst3) {
                worst3 = vals[q] - vals[q + 1];
                worst_pair = q + 1;
            }
        }
        if (worst3 > tol.ordering) {
            if (!cond3_open) flag(3, g, worst_pair, worst3);  // first grid entry of a run
            cond3_open = true;
        } else {
            cond3_open = false;
        }

        const double sum_dev =
            std::abs(vals[0] + vals[1] + vals[2] + vals[3] + vals[4] - 1.0);
        if (sum_dev > tol.sum) {
            if (!cond5_open) flag(5, g, 0, sum_dev);
            cond5_open = true;
        } else {
            cond5_open = false;
        }
    }
    return report;
}

void write_benchmark(std::ostream& out, const FairnessBenchmark& benchmark) {
    out << "# provenance: " << benchmark.provenance << "\n";
    out << std::setprecision(17);
    for (const auto& line : benchmark.lines) {
        out << line.quintile << ',' << line.a4 << ',' << line.a3 << ','
            << line.a2 << ',' << line.a1 << ',' << line.intercept << "\n";
    }
}

FairnessBenchmark read_benchmark(std::istream& in) {
    FairnessBenchmark bench;
    bench.provenance = "file";
    std::array<bool, 5> seen{};
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line.front() == '#') {
            const std::string key = "# provenance: ";
            if (line.rfind(key, 0) == 0) bench.provenance = line.substr(key.size());
            continue;
        }
        const auto fields = split_csv_row(line);
        if (fields.size() != 6) {
            throw ParseError(ParseErrorKind::MalformedRow,
                             "benchmark row needs 6 fields 'quintile,a4,a3,a2,a1,intercept'");
        }
        FairnessLine fl;
        fl.quintile = std::stoi(fields[0]);
        if (fl.quintile < 1 || fl.quintile > 5) {
            throw ParseError(ParseErrorKind::MalformedRow, "quintile must be 1..5");
        }
        fl.a4 = std::stod(fields[1]);
        fl.a3 = std::stod(fields[2]);
        fl.a2 = std::stod(fields[3]);
        fl.a1 = std::stod(fields[4]);
        fl.intercept = std::stod(fields[5]);
        bench.lines[fl.quintile - 1] = fl;
        seen[fl.quintile - 1] = true;
    }
    if (!(seen[0] && seen[1] && seen[2] && seen[3] && seen[4])) {
        throw ParseError(ParseErrorKind::EmptyFile,
                         "benchmark file must define all five quintile lines");
    }
    return bench;
}

}  // namespace fairdist
