#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace eppm {

/// One plotted curve or point set.
struct PlotSeries {
    std::string label;
    std::vector<std::pair<double, double>> xy;
    bool line = true;    // polyline through the points
    bool markers = true; // circle at each point
};

struct PlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_y = false; // decade-scaled y with 10^n tick labels
    std::vector<PlotSeries> series;
};

/// Self-contained static SVG chart; no external renderer involved.
/// With log_y set, points with y <= 0 are dropped (off-scale by definition).
void write_plot_svg(std::ostream& out, const PlotSpec& spec);

} // namespace eppm
