#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fairdist/lorenz.hpp"

namespace fairdist {

enum class ParseErrorKind {
    EmptyFile,
    BadHeader,
    MalformedRow,
    NegativeSalary,
    TooFewRows,
    GiniOutOfRange,
    ShareSumOutOfRange,
    NonMonotoneShares,
    ShareOutOfRange,
};

class ParseError : public std::runtime_error {
public:
    ParseError(ParseErrorKind kind, std::string message, std::size_t row = 0)
        : std::runtime_error(std::move(message)), kind_(kind), row_(row) {}

    ParseErrorKind kind() const { return kind_; }
    std::size_t row() const { return row_; }  // 1-based data row, 0 if n/a

private:
    ParseErrorKind kind_;
    std::size_t row_;
};

/// Salaries grouped per sport, in first-appearance order; values kept in
/// the order they were read.
struct SalaryTable {
    struct Sport {
        std::string name;
        std::vector<double> salaries;
    };
    std::vector<Sport> sports;

    const Sport* find(const std::string& name) const;
};

/// One country's Gini index and actual income shares (lowest to top).
struct CountryRecord {
    std::string name;
    double gini = 0.0;
    QuintileShares shares;
};

/// A (gini, shares) point; fit input and envelope reference rows.
struct SharePoint {
    double gini = 0.0;
    QuintileShares shares;
};

struct DescriptiveStats {
    double mean = 0.0;
    double median = 0.0;
    std::optional<double> mode;  // absent when no value repeats
    double minimum = 0.0;
    double maximum = 0.0;
    double stddev = 0.0;  // sample (n-1); 0 for a single observation
    std::size_t count = 0;
};

// Header `sport,player,salary`. Salaries must be nonnegative; each sport
// needs at least 10 rows and a positive total.
SalaryTable parse_salary_table(std::istream& source);

// Header `country,gini,q1,q2,q3,q4,q5`, shares lowest to top. Enforces
// gini in [0,1], shares in [0,1] summing to 1 +- 0.005, and monotone shares.
std::vector<CountryRecord> parse_country_table(std::istream& source);

// Header `gini,q1,q2,q3,q4,q5`; no sum or monotonicity requirements.
std::vector<SharePoint> parse_share_points(std::istream& source);

DescriptiveStats describe(std::span<const double> values);

// RFC-4180-style field splitting (double quotes, embedded commas).
std::vector<std::string> split_csv_row(const std::string& line);

}  // namespace fairdist
