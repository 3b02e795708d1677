#include "rescon/svg_chart.hpp"

#include "rescon/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace rescon {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 180.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

constexpr std::array<const char*, 10> kPalette{"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                               "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

// Tick step of 1, 2 or 5 times a power of ten giving about `target` ticks.
double nice_step(double span, int target) {
    const double raw = span / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double r = raw / mag;
    return (r < 1.5 ? 1.0 : r < 3.5 ? 2.0 : r < 7.5 ? 5.0 : 10.0) * mag;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void add(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    bool empty() const { return lo > hi; }
    void pad() {
        if (hi - lo < 1e-12 * std::max(1.0, std::abs(hi))) {
            lo -= 0.5;
            hi += 0.5;
        } else {
            const double m = 0.05 * (hi - lo);
            lo -= m;
            hi += m;
        }
    }
};

}  // namespace

std::string render_svg(const Chart& chart) {
    Range xr;
    Range yr;
    for (const Series& s : chart.series)
        for (std::size_t k = 0; k < std::min(s.x.size(), s.y.size()); ++k)
            if (std::isfinite(s.x[k]) && std::isfinite(s.y[k])) {
                xr.add(s.x[k]);
                yr.add(s.y[k]);
            }
    if (xr.empty()) throw EmptySelection("chart '" + chart.title + "' has no finite points");
    for (const Guide& g : chart.guides) yr.add(g.y);
    yr.pad();
    if (xr.hi == xr.lo) xr.pad();

    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
    auto py = [&](double y) { return kTop + (yr.hi - y) / (yr.hi - yr.lo) * ph; };

    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << escape(chart.title)
      << "</text>\n";

    o << "<g stroke=\"#ddd\" stroke-width=\"1\">\n";
    const double xs = nice_step(xr.hi - xr.lo, 8);
    const double ys = nice_step(yr.hi - yr.lo, 6);
    std::ostringstream labels;
    for (double x = std::ceil(xr.lo / xs) * xs; x <= xr.hi + 1e-9 * xs; x += xs) {
        o << "<line x1=\"" << px(x) << "\" y1=\"" << kTop << "\" x2=\"" << px(x) << "\" y2=\"" << kTop + ph
          << "\"/>\n";
        labels << "<text x=\"" << px(x) << "\" y=\"" << kTop + ph + 18 << "\" text-anchor=\"middle\">"
               << fmt(std::abs(x) < 1e-12 * xs ? 0.0 : x) << "</text>\n";
    }
    for (double y = std::ceil(yr.lo / ys) * ys; y <= yr.hi + 1e-9 * ys; y += ys) {
        o << "<line x1=\"" << kLeft << "\" y1=\"" << py(y) << "\" x2=\"" << kLeft + pw << "\" y2=\"" << py(y)
          << "\"/>\n";
        labels << "<text x=\"" << kLeft - 6 << "\" y=\"" << py(y) + 4 << "\" text-anchor=\"end\">"
               << fmt(std::abs(y) < 1e-12 * ys ? 0.0 : y) << "</text>\n";
    }
    o << "</g>\n" << labels.str();
    o << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"black\"/>\n";
    o << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 16 << "\" text-anchor=\"middle\">"
      << escape(chart.x_label) << "</text>\n";
    o << "<text transform=\"translate(20 " << kTop + ph / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
      << escape(chart.y_label) << "</text>\n";

    for (const Guide& g : chart.guides) {
        o << "<line class=\"guide\" x1=\"" << kLeft << "\" y1=\"" << py(g.y) << "\" x2=\"" << kLeft + pw
          << "\" y2=\"" << py(g.y) << "\" stroke=\"black\" stroke-dasharray=\"6 4\"/>\n";
        o << "<text x=\"" << kLeft + pw - 4 << "\" y=\"" << py(g.y) - 4 << "\" text-anchor=\"end\">"
          << escape(g.label) << "</text>\n";
    }

    for (std::size_t k = 0; k < chart.series.size(); ++k) {
        const Series& s = chart.series[k];
        const char* color = kPalette[k % kPalette.size()];
        o << "<polyline class=\"series\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i)
            if (std::isfinite(s.x[i]) && std::isfinite(s.y[i])) o << fmt(px(s.x[i])) << ',' << fmt(py(s.y[i])) << ' ';
        o << "\"/>\n";
        const double ly = kTop + 10 + 18.0 * static_cast<double>(k);
        o << "<line x1=\"" << kLeft + pw + 12 << "\" y1=\"" << ly << "\" x2=\"" << kLeft + pw + 36 << "\" y2=\"" << ly
          << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        o << "<text class=\"legend\" x=\"" << kLeft + pw + 42 << "\" y=\"" << ly + 4 << "\">" << escape(s.label)
          << "</text>\n";
    }
    o << "</svg>\n";
    return o.str();
}

PlotSelection parse_plot_selection(std::string_view name) {
    if (name == "outputs") return PlotSelection::outputs;
    if (name == "gains") return PlotSelection::gains;
    if (name == "errors") return PlotSelection::errors;
    if (name == "E") return PlotSelection::error_sum;
    if (name == "sweep") return PlotSelection::sweep;
    throw EmptySelection("unknown selection '" + std::string(name) + "'");
}

namespace {

std::vector<int> family(const CsvTable& t, const std::string& prefix) {
    std::vector<int> cols;
    for (int i = 1;; ++i) {
        const int c = t.column(prefix + "_" + std::to_string(i));
        if (c < 0) break;
        cols.push_back(c);
    }
    return cols;
}

}  // namespace

Chart make_chart(const CsvTable& table, PlotSelection selection, std::optional<double> omega) {
    Chart chart;
    if (table.rows.empty()) throw EmptySelection("table has no rows");

    if (selection == PlotSelection::sweep) {
        const int xc = table.column("value");
        const int yc = table.column("E_final");
        if (xc < 0 || yc < 0) throw EmptySelection("sweep chart needs 'value' and 'E_final' columns");
        chart.title = "Steady-state error sum per swept value";
        chart.x_label = "swept value";
        chart.y_label = "E_final";
        chart.series.push_back({"E_final", table.values(xc), table.values(yc)});
        return chart;
    }

    const int tc = table.column("t");
    if (tc < 0) throw EmptySelection("trace chart needs a 't' column");
    const std::vector<double> t = table.values(tc);
    chart.x_label = "t (s)";

    switch (selection) {
        case PlotSelection::outputs:
            chart.title = "Outputs";
            chart.y_label = "y";
            for (int c : family(table, "y")) chart.series.push_back({table.header[c], t, table.values(c)});
            break;
        case PlotSelection::gains:
            chart.title = "Adaptive and Nussbaum gains";
            chart.y_label = "gain";
            for (const char* f : {"L", "F1", "F2"})
                for (int c : family(table, f)) chart.series.push_back({table.header[c], t, table.values(c)});
            break;
        case PlotSelection::errors: {
            chart.title = "Output consensus errors";
            chart.y_label = "y_1 - y_j";
            const auto ys = family(table, "y");
            if (ys.size() >= 2) {
                const auto y1 = table.values(ys[0]);
                for (std::size_t j = 1; j < ys.size(); ++j) {
                    auto yj = table.values(ys[j]);
                    for (std::size_t k = 0; k < yj.size(); ++k) yj[k] = y1[k] - yj[k];
                    chart.series.push_back({"y_1 - y_" + std::to_string(j + 1), t, yj});
                }
            }
            if (omega) {
                chart.guides.push_back({*omega, "+Omega"});
                chart.guides.push_back({-*omega, "-Omega"});
            }
            break;
        }
        case PlotSelection::error_sum: {
            chart.title = "Sum of squared output errors";
            chart.y_label = "E";
            const int ec = table.column("E");
            if (ec >= 0) chart.series.push_back({"E", t, table.values(ec)});
            break;
        }
        case PlotSelection::sweep: break;
    }
    if (chart.series.empty()) throw EmptySelection("selection matched no columns");
    return chart;
}

}  // namespace rescon
