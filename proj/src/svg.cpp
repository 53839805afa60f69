#include "fairdist/svg.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace fairdist {

namespace {

constexpr double kPanelSize = 220.0;
constexpr double kMargin = 40.0;
constexpr double kGap = 20.0;

struct Panel {
    double x0, y0;  // top-left of the plotting area

    double px(double g) const { return x0 + g * kPanelSize; }
    double py(double share) const { return y0 + (1.0 - share) * kPanelSize; }
};

std::string fmt(double v) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(2) << v;
    return os.str();
}

const char* quintile_label(int q) {
    switch (q) {
        case 1: return "lowest 20%";
        case 2: return "second 20%";
        case 3: return "third 20%";
        case 4: return "fourth 20%";
        default: return "top 20%";
    }
}

}  // namespace

std::string render_fairness_svg(const FairnessBenchmark& benchmark,
                                std::span<const SharePoint> sports,
                                std::span<const CountryRecord> countries,
                                double step) {
    const double width = 5 * kPanelSize + 4 * kGap + 2 * kMargin;
    const double height = kPanelSize + 2 * kMargin;

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
        << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' '
        << height << "\">\n";
    svg << "<style>text{font:11px sans-serif;}"
           ".axis{stroke:#333;fill:none;}"
           ".line{stroke:#c22;fill:none;stroke-width:1.5;}"
           ".sports{fill:#126;}"
           ".country{fill:none;stroke:#282;}</style>\n";

    const auto samples = static_cast<std::size_t>(std::llround(1.0 / step));
    for (int q = 1; q <= 5; ++q) {
        const Panel panel{kMargin + (q - 1) * (kPanelSize + kGap), kMargin};
        svg << "<g>\n";
        svg << "<rect class=\"axis\" x=\"" << fmt(panel.x0) << "\" y=\""
            << fmt(panel.y0) << "\" width=\"" << kPanelSize << "\" height=\""
            << kPanelSize << "\"/>\n";
        svg << "<text x=\"" << fmt(panel.x0 + kPanelSize / 2) << "\" y=\""
            << fmt(panel.y0 - 8) << "\" text-anchor=\"middle\">Q" << q << " ("
            << quintile_label(q) << ")</text>\n";
        // Axis extent labels, 0..1 in both directions.
        svg << "<text x=\"" << fmt(panel.px(0.0)) << "\" y=\""
            << fmt(panel.py(0.0) + 14) << "\">0</text>\n";
        svg << "<text x=\"" << fmt(panel.px(1.0) - 8) << "\" y=\""
            << fmt(panel.py(0.0) + 14) << "\">1</text>\n";
        svg << "<text x=\"" << fmt(panel.px(0.0) - 12) << "\" y=\""
            << fmt(panel.py(1.0) + 4) << "\">1</text>\n";
        svg << "<text x=\"" << fmt(panel.px(0.5) - 18) << "\" y=\""
            << fmt(panel.py(0.0) + 28) << "\">Gini</text>\n";

        svg << "<polyline class=\"line\" points=\"";
        for (std::size_t i = 0; i <= samples; ++i) {
            const double g = (i == samples) ? 1.0 : static_cast<double>(i) * step;
            svg << fmt(panel.px(g)) << ',' << fmt(panel.py(benchmark.line(q).value(g)));
            if (i != samples) svg << ' ';
        }
        svg << "\"/>\n";

        for (const auto& pt : sports) {
            svg << "<circle class=\"sports\" cx=\"" << fmt(panel.px(pt.gini))
                << "\" cy=\"" << fmt(panel.py(pt.shares.q[q - 1]))
                << "\" r=\"3\"/>\n";
        }
        for (const auto& rec : countries) {
            svg << "<circle class=\"country\" cx=\"" << fmt(panel.px(rec.gini))
                << "\" cy=\"" << fmt(panel.py(rec.shares.q[q - 1]))
                << "\" r=\"2.5\"/>\n";
        }
        svg << "</g>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace fairdist
