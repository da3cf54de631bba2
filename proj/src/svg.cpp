#include "eppm/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

namespace eppm {

namespace {

constexpr double canvas_w = 780.0;
constexpr double canvas_h = 520.0;
constexpr double margin_l = 72.0;
constexpr double margin_r = 180.0;
constexpr double margin_t = 46.0;
constexpr double margin_b = 58.0;

const char* const palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                               "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (const char ch : s) {
        switch (ch) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        default: out += ch;
        }
    }
    return out;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// Tick spacing of the form {1,2,5}*10^n covering roughly `want` intervals.
double nice_step(double range, int want) {
    const double raw = range / std::max(1, want);
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (const double mult : {1.0, 2.0, 5.0, 10.0})
        if (mult * mag >= raw) return mult * mag;
    return 10.0 * mag;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    void add(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    bool empty() const { return !(lo <= hi); }
};

} // namespace

void write_plot_svg(std::ostream& out, const PlotSpec& spec) {
    Range xr, yr;
    for (const auto& s : spec.series)
        for (const auto& [x, y] : s.xy) {
            if (spec.log_y && !(y > 0.0)) continue;
            xr.add(x);
            yr.add(spec.log_y ? std::log10(y) : y);
        }

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << canvas_w << "\" height=\""
        << canvas_h << "\" viewBox=\"0 0 " << canvas_w << ' ' << canvas_h << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << canvas_w / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << escape(spec.title) << "</text>\n";

    if (xr.empty() || yr.empty()) {
        out << "<text x=\"" << canvas_w / 2 << "\" y=\"" << canvas_h / 2
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
            << "no plottable points</text>\n</svg>\n";
        return;
    }

    if (xr.hi == xr.lo) {
        xr.lo -= 1.0;
        xr.hi += 1.0;
    }
    if (spec.log_y) {
        yr.lo = std::floor(yr.lo);
        yr.hi = std::ceil(yr.hi);
        if (yr.hi == yr.lo) yr.hi += 1.0;
    } else if (yr.hi == yr.lo) {
        yr.lo -= 1.0;
        yr.hi += 1.0;
    }

    const double pw = canvas_w - margin_l - margin_r;
    const double ph = canvas_h - margin_t - margin_b;
    const auto sx = [&](double x) { return margin_l + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
    const auto sy = [&](double v) { return margin_t + (1.0 - (v - yr.lo) / (yr.hi - yr.lo)) * ph; };

    // Gridlines and tick labels.
    out << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
    const double xstep = nice_step(xr.hi - xr.lo, 8);
    for (double x = std::ceil(xr.lo / xstep) * xstep; x <= xr.hi + 1e-9; x += xstep) {
        const double px = sx(x);
        out << "<line x1=\"" << px << "\" y1=\"" << margin_t << "\" x2=\"" << px << "\" y2=\""
            << margin_t + ph << "\" stroke=\"#ddd\"/>\n"
            << "<text x=\"" << px << "\" y=\"" << margin_t + ph + 16
            << "\" text-anchor=\"middle\">" << num(x) << "</text>\n";
    }
    const double ystep =
        spec.log_y ? std::max(1.0, std::ceil((yr.hi - yr.lo) / 10.0)) : nice_step(yr.hi - yr.lo, 8);
    for (double v = std::ceil(yr.lo / ystep) * ystep; v <= yr.hi + 1e-9; v += ystep) {
        const double py = sy(v);
        out << "<line x1=\"" << margin_l << "\" y1=\"" << py << "\" x2=\"" << margin_l + pw
            << "\" y2=\"" << py << "\" stroke=\"#ddd\"/>\n"
            << "<text x=\"" << margin_l - 6 << "\" y=\"" << py + 4 << "\" text-anchor=\"end\">";
        if (spec.log_y)
            out << "1e" << static_cast<long long>(v);
        else
            out << num(v);
        out << "</text>\n";
    }
    out << "</g>\n";

    // Axes and labels.
    out << "<rect x=\"" << margin_l << "\" y=\"" << margin_t << "\" width=\"" << pw
        << "\" height=\"" << ph << "\" fill=\"none\" stroke=\"#333\"/>\n"
        << "<text x=\"" << margin_l + pw / 2 << "\" y=\"" << canvas_h - 14
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
        << escape(spec.x_label) << "</text>\n"
        << "<text x=\"18\" y=\"" << margin_t + ph / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
        << "transform=\"rotate(-90 18 " << margin_t + ph / 2 << ")\">" << escape(spec.y_label)
        << "</text>\n";

    for (std::size_t i = 0; i < spec.series.size(); ++i) {
        const auto& s = spec.series[i];
        const char* color = palette[i % (sizeof palette / sizeof palette[0])];
        std::string points;
        for (const auto& [x, y] : s.xy) {
            if (spec.log_y && !(y > 0.0)) continue;
            const double px = sx(x);
            const double py = sy(spec.log_y ? std::log10(y) : y);
            points += num(px) + "," + num(py) + " ";
            if (s.markers)
                out << "<circle cx=\"" << px << "\" cy=\"" << py << "\" r=\"3\" fill=\"" << color
                    << "\"/>\n";
        }
        if (s.line && !points.empty())
            out << "<polyline points=\"" << points << "\" fill=\"none\" stroke=\"" << color
                << "\" stroke-width=\"1.5\"/>\n";

        const double ly = margin_t + 14 + 20.0 * static_cast<double>(i);
        const double lx = margin_l + pw + 14;
        out << "<line x1=\"" << lx << "\" y1=\"" << ly << "\" x2=\"" << lx + 24 << "\" y2=\"" << ly
            << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
            << "<text x=\"" << lx + 30 << "\" y=\"" << ly + 4
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape(s.label)
            << "</text>\n";
    }
    out << "</svg>\n";
}

} // namespace eppm
