#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fairdist/assess.hpp"
#include "fairdist/benchmark.hpp"
#include "fairdist/ingest.hpp"
#include "fairdist/lorenz.hpp"
#include "fairdist/svg.hpp"

namespace {

using namespace fairdist;

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;  // validation / domain errors
constexpr int kExitIo = 2;      // IO and parse failures

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open input file '" + path + "'");
    return in;
}

// Output sink: --out PATH or stdout.
class Sink {
public:
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw IoError("cannot open output file '" + path + "'");
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

FairnessBenchmark load_benchmark(const std::string& source) {
    if (source == "published") return published_benchmark();
    auto in = open_input(source);
    return read_benchmark(in);
}

const char* direction_name(Direction d) {
    switch (d) {
        case Direction::above: return "above";
        case Direction::below: return "below";
        default: return "on";
    }
}

void print_condition_report(std::ostream& out, const ConditionReport& report,
                            const std::string& prefix) {
    for (int c = 1; c <= 5; ++c) {
        out << prefix << "condition " << c << ": "
            << (report.passed[c - 1] ? "pass" : "FAIL") << "\n";
    }
    for (const auto& v : report.violations) {
        out << prefix << "  violation: condition " << v.condition << " at g="
            << std::fixed << std::setprecision(4) << v.g;
        if (v.quintile > 0) out << " quintile " << v.quintile;
        out << " magnitude " << std::setprecision(6) << v.magnitude
            << std::defaultfloat << "\n";
    }
}

int cmd_fit(const std::string& input, const std::string& out_path,
            const std::string& format) {
    auto in = open_input(input);
    const SalaryTable table = parse_salary_table(in);
    Sink sink(out_path);
    std::ostream& out = sink.stream();

    const bool csv = format == "csv";
    if (csv) {
        out << "sport,k,P,gini,r2,q1,q2,q3,q4,q5\n";
        out << std::setprecision(15);
    } else {
        out << std::left << std::setw(12) << "sport" << std::right
            << std::setw(8) << "k" << std::setw(8) << "P" << std::setw(9)
            << "gini" << std::setw(9) << "r2" << std::setw(9) << "q1"
            << std::setw(9) << "q2" << std::setw(9) << "q3" << std::setw(9)
            << "q4" << std::setw(9) << "q5" << "\n";
    }
    for (const auto& sport : table.sports) {
        const EmpiricalLorenz emp = build_empirical_lorenz(sport.salaries);
        const LorenzFit fit = fit_lorenz(emp);
        const QuintileShares shares = quintile_shares(fit.params);
        const double gini = gini_of(fit.params);
        if (fit.hit_upper_bound) {
            std::cerr << "warning: fit for '" << sport.name
                      << "' reached the P search bound\n";
        }
        if (csv) {
            out << sport.name << ',' << fit.params.k << ',' << fit.params.P
                << ',' << gini << ',' << fit.r2;
            for (double q : shares.q) out << ',' << q;
            out << "\n";
        } else {
            out << std::left << std::setw(12) << sport.name << std::right
                << std::fixed << std::setprecision(4) << std::setw(8)
                << fit.params.k << std::setw(8) << fit.params.P << std::setw(9)
                << gini << std::setw(9) << fit.r2;
            for (double q : shares.q) out << std::setw(9) << q;
            out << std::defaultfloat << "\n";
        }
    }
    return kExitOk;
}

int cmd_benchmark(bool published, const std::string& input,
                  const std::string& out_path, double grid_step) {
    FairnessBenchmark bench;
    ConditionReport report;
    if (published) {
        bench = published_benchmark();
        report = validate(bench, grid_step);
    } else {
        auto in = open_input(input);
        const auto points = parse_share_points(in);
        std::tie(bench, report) = fit_benchmark(points);
    }
    Sink sink(out_path);
    write_benchmark(sink.stream(), bench);

    std::ostream& report_out = out_path.empty() ? std::cout : sink.stream();
    const std::string prefix = out_path.empty() ? "# " : "# ";
    print_condition_report(report_out, report, prefix);
    return kExitOk;
}

int cmd_assess(const std::string& input, const std::string& benchmark_source,
               const std::string& out_path, const std::string& format) {
    auto in = open_input(input);
    const auto records = parse_country_table(in);
    const FairnessBenchmark bench = load_benchmark(benchmark_source);

    std::vector<CountryAssessment> assessments;
    assessments.reserve(records.size());
    for (const auto& rec : records) {
        assessments.push_back(assess_country(rec, bench));
    }
    const CohortSummary summary = summarize(assessments);

    Sink sink(out_path);
    std::ostream& out = sink.stream();
    const bool csv = format == "csv";

    out << "country,gini,quintile,actual,fair,pct_dev,direction\n";
    for (const auto& a : assessments) {
        for (int q = 1; q <= 5; ++q) {
            const QuintileAssessment& qa = a.quintiles[q - 1];
            const bool quote = a.name.find(',') != std::string::npos;
            if (quote) out << '"' << a.name << '"';
            else out << a.name;
            if (csv) {
                out << ',' << std::setprecision(15) << a.gini << ',' << q << ','
                    << qa.actual << ',' << qa.fair << ',' << qa.pct_dev;
            } else {
                out << ',' << std::fixed << std::setprecision(4) << a.gini << ','
                    << q << ',' << qa.actual << ',' << qa.fair << ','
                    << std::setprecision(2) << qa.pct_dev << std::defaultfloat;
            }
            out << ',' << direction_name(qa.direction) << "\n";
        }
    }

    out << "\n# cohort summary (" << summary.cohort_size << " countries)\n";
    for (int q = 1; q <= 5; ++q) {
        const QuintileSummary& qs = summary.quintiles[q - 1];
        out << "# q" << q << ": above " << qs.above << ", below " << qs.below
            << ", on " << qs.on << "; |pct_dev| min " << std::fixed
            << std::setprecision(2) << qs.min_dev.value << " ("
            << qs.min_dev.country << "), median " << qs.median_dev.value << " ("
            << qs.median_dev.country << "), max " << qs.max_dev.value << " ("
            << qs.max_dev.country << "), mean " << qs.mean_dev
            << std::defaultfloat << "\n";
    }
    return kExitOk;
}

int cmd_plan(const std::string& benchmark_source, double gini, double bottom40,
             bool have_gini, bool have_bottom40) {
    const FairnessBenchmark bench = load_benchmark(benchmark_source);
    double g = gini;
    if (have_bottom40) {
        g = solve_gini_for_bottom40(bench, bottom40);
        (void)have_gini;
    }
    const TargetPlan plan = plan_targets(bench, g);
    std::cout << std::fixed << std::setprecision(4);
    std::cout << "gini      " << plan.gini << "\n";
    for (int q = 1; q <= 5; ++q) {
        std::cout << "q" << q << "        " << plan.shares.q[q - 1] << "\n";
    }
    std::cout << "bottom40  " << plan.bottom40 << "\n";
    std::cout << "gap_ratio " << std::setprecision(2) << plan.gap_ratio << "\n";
    return kExitOk;
}

int cmd_plot(const std::string& benchmark_source, const std::string& sports_path,
             const std::string& countries_path, const std::string& out_path,
             double grid_step) {
    const FairnessBenchmark bench = load_benchmark(benchmark_source);
    std::vector<SharePoint> sports;
    if (!sports_path.empty()) {
        auto in = open_input(sports_path);
        sports = parse_share_points(in);
    }
    std::vector<CountryRecord> countries;
    if (!countries_path.empty()) {
        auto in = open_input(countries_path);
        countries = parse_country_table(in);
    }
    const std::string svg = render_fairness_svg(bench, sports, countries, grid_step);
    Sink sink(out_path);
    sink.stream() << svg;
    return kExitOk;
}

int cmd_describe(const std::string& input, const std::string& out_path,
                 const std::string& format) {
    auto in = open_input(input);
    const SalaryTable table = parse_salary_table(in);
    Sink sink(out_path);
    std::ostream& out = sink.stream();
    const bool csv = format == "csv";

    if (csv) {
        out << "sport,mean,median,mode,minimum,maximum,stddev,count\n"
            << std::setprecision(15);
    } else {
        out << std::left << std::setw(12) << "sport" << std::right
            << std::setw(14) << "mean" << std::setw(14) << "median"
            << std::setw(14) << "mode" << std::setw(14) << "minimum"
            << std::setw(14) << "maximum" << std::setw(14) << "stddev"
            << std::setw(8) << "count" << "\n";
    }
    for (const auto& sport : table.sports) {
        const DescriptiveStats stats = describe(sport.salaries);
        if (csv) {
            out << sport.name << ',' << stats.mean << ',' << stats.median << ',';
            if (stats.mode) out << *stats.mode;
            out << ',' << stats.minimum << ',' << stats.maximum << ','
                << stats.stddev << ',' << stats.count << "\n";
        } else {
            out << std::left << std::setw(12) << sport.name << std::right
                << std::fixed << std::setprecision(2) << std::setw(14)
                << stats.mean << std::setw(14) << stats.median;
            if (stats.mode) {
                out << std::setw(14) << *stats.mode;
            } else {
                out << std::setw(14) << "-";
            }
            out << std::setw(14) << stats.minimum << std::setw(14)
                << stats.maximum << std::setw(14) << stats.stddev
                << std::setw(8) << stats.count << std::defaultfloat << "\n";
        }
    }
    return kExitOk;
}

int cmd_envelope(const std::string& input, const std::string& reference_path,
                 const std::string& out_path) {
    auto in = open_input(input);
    const auto records = parse_country_table(in);
    auto ref_in = open_input(reference_path);
    const auto reference = parse_share_points(ref_in);

    const EnvelopeReport report = envelope_check(records, reference);
    Sink sink(out_path);
    std::ostream& out = sink.stream();
    out << std::fixed << std::setprecision(4);
    for (const auto& ind : report.indicators) {
        out << ind.name << ": reference [" << ind.reference_min << ", "
            << ind.reference_max << "], " << ind.violations.size()
            << " violation(s)\n";
        for (const auto& v : ind.violations) {
            out << "  " << v.country << " = " << v.value << "\n";
        }
    }
    if (report.clean()) out << "no violations\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lorenz-curve fitting and fair income distribution benchmarking"};
    app.require_subcommand(1);

    std::string input, out_path, reference_path, sports_path, countries_path;
    std::string format = "text";
    std::string benchmark_source = "published";
    double grid_step = 0.001;
    double gini = 0.0, bottom40 = 0.0;
    bool published = false;

    auto* fit = app.add_subcommand("fit", "Fit Lorenz curves to a salary table");
    fit->add_option("--input", input, "salary csv (sport,player,salary)")->required();
    fit->add_option("--out", out_path, "output path (default stdout)");
    fit->add_option("--format", format, "text|csv")
        ->check(CLI::IsMember({"text", "csv"}));

    auto* bench = app.add_subcommand("benchmark", "Build or emit a fairness benchmark");
    bench->add_flag("--published", published, "emit the published coefficients");
    bench->add_option("--input", input, "points csv (gini,q1..q5) to fit");
    bench->add_option("--out", out_path, "output path (default stdout)");
    bench->add_option("--grid-step", grid_step, "validation grid step");

    auto* assess = app.add_subcommand("assess", "Assess countries against a benchmark");
    assess->add_option("--input", input, "country csv")->required();
    assess->add_option("--benchmark", benchmark_source, "published | benchmark file");
    assess->add_option("--out", out_path, "output path (default stdout)");
    assess->add_option("--format", format, "text|csv")
        ->check(CLI::IsMember({"text", "csv"}));

    auto* plan = app.add_subcommand("plan", "Plan fair shares for a Gini target");
    plan->add_option("--benchmark", benchmark_source, "published | benchmark file");
    auto* gini_opt = plan->add_option("--gini", gini, "target Gini index");
    auto* b40_opt = plan->add_option("--bottom40", bottom40, "target bottom-40% share");
    gini_opt->excludes(b40_opt);

    auto* plot = app.add_subcommand("plot", "Render fairness lines as SVG");
    plot->add_option("--benchmark", benchmark_source, "published | benchmark file");
    plot->add_option("--sports", sports_path, "points csv scatter overlay");
    plot->add_option("--countries", countries_path, "country csv scatter overlay");
    plot->add_option("--out", out_path, "output path (default stdout)");
    plot->add_option("--grid-step", grid_step, "curve sampling step");

    auto* describe = app.add_subcommand("describe", "Descriptive statistics per sport");
    describe->add_option("--input", input, "salary csv")->required();
    describe->add_option("--out", out_path, "output path (default stdout)");
    describe->add_option("--format", format, "text|csv")
        ->check(CLI::IsMember({"text", "csv"}));

    auto* envelope = app.add_subcommand("envelope", "Min/max envelope check");
    envelope->add_option("--input", input, "country csv")->required();
    envelope->add_option("--reference", reference_path, "reference points csv")
        ->required();
    envelope->add_option("--out", out_path, "output path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (fit->parsed()) return cmd_fit(input, out_path, format);
        if (bench->parsed()) {
            if (published == !input.empty()) {
                std::cerr << "error: pass exactly one of --published or --input\n";
                return kExitDomain;
            }
            return cmd_benchmark(published, input, out_path, grid_step);
        }
        if (assess->parsed()) {
            return cmd_assess(input, benchmark_source, out_path, format);
        }
        if (plan->parsed()) {
            if (gini_opt->count() + b40_opt->count() != 1) {
                std::cerr << "error: pass exactly one of --gini or --bottom40\n";
                return kExitDomain;
            }
            return cmd_plan(benchmark_source, gini, bottom40, gini_opt->count() > 0,
                            b40_opt->count() > 0);
        }
        if (plot->parsed()) {
            return cmd_plot(benchmark_source, sports_path, countries_path,
                            out_path, grid_step);
        }
        if (describe->parsed()) return cmd_describe(input, out_path, format);
        if (envelope->parsed()) return cmd_envelope(input, reference_path, out_path);
    } catch (const IoError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitIo;
    } catch (const fairdist::ParseError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitIo;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitDomain;
    }
    return kExitOk;
}
