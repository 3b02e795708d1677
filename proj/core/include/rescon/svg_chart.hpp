#pragma once

#include "rescon/report.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rescon {

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct Guide {
    double y = 0.0;
    std::string label;
};

struct Chart {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<Series> series;
    std::vector<Guide> guides;  // horizontal dashed lines
};

/// Standalone SVG line chart with axes, ticks and a legend. Throws
/// EmptySelection when no series has a finite point.
std::string render_svg(const Chart& chart);

enum class PlotSelection { outputs, gains, errors, error_sum, sweep };

PlotSelection parse_plot_selection(std::string_view name);

/// Builds a chart from a trace CSV (outputs, gains, errors, E) or a sweep CSV
/// (sweep). `omega` adds +/- residual-set guides to the errors chart.
Chart make_chart(const CsvTable& table, PlotSelection selection, std::optional<double> omega = std::nullopt);

}  // namespace rescon
