#include "fairdist/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

namespace fairdist {

namespace {

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

bool parse_double(const std::string& field, double& out) {
    const char* begin = field.data();
    const char* end = begin + field.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && ptr == end;
}

[[noreturn]] void malformed(std::size_t row, const std::string& what) {
    std::ostringstream msg;
    msg << "row " << row << ": " << what;
    throw ParseError(ParseErrorKind::MalformedRow, msg.str(), row);
}

}  // namespace

std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

const SalaryTable::Sport* SalaryTable::find(const std::string& name) const {
    for (const auto& sport : sports) {
        if (sport.name == name) return &sport;
    }
    return nullptr;
}

SalaryTable parse_salary_table(std::istream& source) {
    std::string line;
    if (!std::getline(source, line)) {
        throw ParseError(ParseErrorKind::EmptyFile, "empty salary file");
    }
    if (strip_cr(line) != "sport,player,salary") {
        throw ParseError(ParseErrorKind::BadHeader,
                         "expected header 'sport,player,salary'");
    }

    SalaryTable table;
    std::map<std::string, std::size_t> index;
    std::size_t row = 0;
    while (std::getline(source, line)) {
        ++row;
        line = strip_cr(line);
        if (line.empty()) continue;
        const auto fields = split_csv_row(line);
        if (fields.size() != 3 || fields[0].empty()) {
            malformed(row, "expected 3 fields 'sport,player,salary'");
        }
        double salary = 0.0;
        if (!parse_double(fields[2], salary) || !std::isfinite(salary)) {
            malformed(row, "salary does not parse as a decimal");
        }
        if (salary < 0.0) {
            std::ostringstream msg;
            msg << "row " << row << ": negative salary " << fields[2];
            throw ParseError(ParseErrorKind::NegativeSalary, msg.str(), row);
        }
        auto [it, inserted] = index.try_emplace(fields[0], table.sports.size());
        if (inserted) table.sports.push_back({fields[0], {}});
        table.sports[it->second].salaries.push_back(salary);
    }

    if (table.sports.empty()) {
        throw ParseError(ParseErrorKind::EmptyFile, "salary file has no data rows");
    }
    for (const auto& sport : table.sports) {
        if (sport.salaries.size() < 10) {
            throw ParseError(ParseErrorKind::TooFewRows,
                             "sport '" + sport.name + "' has fewer than 10 rows");
        }
        if (std::all_of(sport.salaries.begin(), sport.salaries.end(),
                        [](double v) { return v == 0.0; })) {
            throw ParseError(ParseErrorKind::MalformedRow,
                             "sport '" + sport.name + "' has no positive salary");
        }
    }
    return table;
}

std::vector<CountryRecord> parse_country_table(std::istream& source) {
    std::string line;
    if (!std::getline(source, line)) {
        throw ParseError(ParseErrorKind::EmptyFile, "empty country file");
    }
    if (strip_cr(line) != "country,gini,q1,q2,q3,q4,q5") {
        throw ParseError(ParseErrorKind::BadHeader,
                         "expected header 'country,gini,q1,q2,q3,q4,q5'");
    }

    std::vector<CountryRecord> records;
    std::size_t row = 0;
    while (std::getline(source, line)) {
        ++row;
        line = strip_cr(line);
        if (line.empty()) continue;
        const auto fields = split_csv_row(line);
        if (fields.size() != 7 || fields[0].empty()) {
            malformed(row, "expected 7 fields 'country,gini,q1,q2,q3,q4,q5'");
        }
        CountryRecord rec;
        rec.name = fields[0];
        std::array<double, 6> nums{};
        for (std::size_t i = 0; i < 6; ++i) {
            if (!parse_double(fields[i + 1], nums[i]) || !std::isfinite(nums[i])) {
                malformed(row, "field '" + fields[i + 1] + "' does not parse");
            }
        }
        rec.gini = nums[0];
        for (int i = 0; i < 5; ++i) rec.shares.q[i] = nums[i + 1];

        if (rec.gini < 0.0 || rec.gini > 1.0) {
            std::ostringstream msg;
            msg << "row " << row << " (" << rec.name << "): gini outside [0,1]";
            throw ParseError(ParseErrorKind::GiniOutOfRange, msg.str(), row);
        }
        for (double s : rec.shares.q) {
            if (s < 0.0 || s > 1.0) {
                std::ostringstream msg;
                msg << "row " << row << " (" << rec.name << "): share outside [0,1]";
                throw ParseError(ParseErrorKind::ShareOutOfRange, msg.str(), row);
            }
        }
        const double sum = rec.shares.sum();
        if (sum < 0.995 || sum > 1.005) {
            std::ostringstream msg;
            msg << "row " << row << " (" << rec.name << "): shares sum to " << sum
                << ", outside [0.995, 1.005]";
            throw ParseError(ParseErrorKind::ShareSumOutOfRange, msg.str(), row);
        }
        for (int i = 0; i < 4; ++i) {
            if (rec.shares.q[i] > rec.shares.q[i + 1]) {
                std::ostringstream msg;
                msg << "row " << row << " (" << rec.name << "): q" << (i + 1)
                    << " > q" << (i + 2);
                throw ParseError(ParseErrorKind::NonMonotoneShares, msg.str(), row);
            }
        }
        records.push_back(std::move(rec));
    }
    if (records.empty()) {
        throw ParseError(ParseErrorKind::EmptyFile, "country file has no data rows");
    }
    return records;
}

std::vector<SharePoint> parse_share_points(std::istream& source) {
    std::string line;
    if (!std::getline(source, line)) {
        throw ParseError(ParseErrorKind::EmptyFile, "empty points file");
    }
    if (strip_cr(line) != "gini,q1,q2,q3,q4,q5") {
        throw ParseError(ParseErrorKind::BadHeader,
                         "expected header 'gini,q1,q2,q3,q4,q5'");
    }
    std::vector<SharePoint> points;
    std::size_t row = 0;
    while (std::getline(source, line)) {
        ++row;
        line = strip_cr(line);
        if (line.empty()) continue;
        const auto fields = split_csv_row(line);
        if (fields.size() != 6) {
            malformed(row, "expected 6 fields 'gini,q1,q2,q3,q4,q5'");
        }
        SharePoint pt;
        if (!parse_double(fields[0], pt.gini)) malformed(row, "gini does not parse");
        for (int i = 0; i < 5; ++i) {
            if (!parse_double(fields[i + 1], pt.shares.q[i])) {
                malformed(row, "share does not parse");
            }
        }
        points.push_back(pt);
    }
    if (points.empty()) {
        throw ParseError(ParseErrorKind::EmptyFile, "points file has no data rows");
    }
    return points;
}

DescriptiveStats describe(std::span<const double> values) {
    if (values.empty()) {
        throw std::invalid_argument("describe: empty list");
    }
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());

    const std::size_t n = sorted.size();
    DescriptiveStats stats;
    stats.count = n;
    stats.minimum = sorted.front();
    stats.maximum = sorted.back();

    double sum = 0.0;
    for (double v : sorted) sum += v;
    stats.mean = sum / static_cast<double>(n);

    stats.median = (n % 2 == 1)
                       ? sorted[n / 2]
                       : (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0;

    double ss = 0.0;
    for (double v : sorted) {
        const double d = v - stats.mean;
        ss += d * d;
    }
    stats.stddev = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;

    // Mode: most frequent exact value with count >= 2, smallest on ties.
    std::size_t best_count = 1;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && sorted[j] == sorted[i]) ++j;
        if (j - i > best_count) {
            best_count = j - i;
            stats.mode = sorted[i];
        }
        i = j;
    }
    return stats;
}

}  // namespace fairdist
