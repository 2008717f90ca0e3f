#include "emtime/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "emtime/csv.hpp"

namespace emtime {

namespace {

constexpr std::array<const char*, 6> kPalette{"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += ch;
        }
    }
    return out;
}

std::string px(double v) {
    // Two decimals are plenty for screen coordinates and keep files small.
    return format_number(std::round(v * 100.0) / 100.0);
}

double nice_step(double span, int target_ticks) {
    const double raw = span / target_ticks;
    const double magnitude = std::pow(10.0, std::floor(std::log10(raw)));
    const double fraction = raw / magnitude;
    const double nice = fraction < 1.5 ? 1.0 : fraction < 3.0 ? 2.0 : fraction < 7.0 ? 5.0 : 10.0;
    return nice * magnitude;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void include(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }

    void settle() {
        if (!(lo <= hi)) {
            lo = 0.0;
            hi = 1.0;
        }
        if (hi - lo < 1e-12 * std::max(1.0, std::abs(hi))) {
            const double pad = std::max(0.5, std::abs(hi) * 0.1);
            lo -= pad;
            hi += pad;
        }
    }
};

std::string tick_label(double v, double step) {
    if (std::abs(v) < step * 1e-9) v = 0.0;
    return format_number(std::round(v / step) * step);
}

} // namespace

std::string render_svg(const LinePlot& plot, int width, int height) {
    const double left = 80, right = 30, top = 50, bottom = 60;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;

    Range xr, yr;
    for (const auto& s : plot.series) {
        for (double v : s.x) xr.include(v);
        for (double v : s.y) yr.include(v);
    }
    xr.settle();
    yr.settle();

    auto sx = [&](double x) { return left + (x - xr.lo) / (xr.hi - xr.lo) * plot_w; };
    auto sy = [&](double y) { return top + plot_h - (y - yr.lo) / (yr.hi - yr.lo) * plot_h; };

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + std::to_string(width) +
           "\" height=\"" + std::to_string(height) + "\" viewBox=\"0 0 " + std::to_string(width) + " " +
           std::to_string(height) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(width) + "\" height=\"" + std::to_string(height) +
           "\" fill=\"white\"/>\n";
    out += "<text x=\"" + px(width / 2.0) + "\" y=\"28\" text-anchor=\"middle\" font-size=\"16\">" +
           xml_escape(plot.title) + "</text>\n";

    // Ticks and grid.
    const double xstep = nice_step(xr.hi - xr.lo, 6);
    for (double v = std::ceil(xr.lo / xstep) * xstep; v <= xr.hi + 1e-9 * xstep; v += xstep) {
        const std::string x = px(sx(v));
        out += "<line x1=\"" + x + "\" y1=\"" + px(top) + "\" x2=\"" + x + "\" y2=\"" + px(top + plot_h) +
               "\" stroke=\"#e0e0e0\"/>\n";
        out += "<text x=\"" + x + "\" y=\"" + px(top + plot_h + 18) + "\" text-anchor=\"middle\">" +
               tick_label(v, xstep) + "</text>\n";
    }
    const double ystep = nice_step(yr.hi - yr.lo, 6);
    for (double v = std::ceil(yr.lo / ystep) * ystep; v <= yr.hi + 1e-9 * ystep; v += ystep) {
        const std::string y = px(sy(v));
        out += "<line x1=\"" + px(left) + "\" y1=\"" + y + "\" x2=\"" + px(left + plot_w) + "\" y2=\"" + y +
               "\" stroke=\"#e0e0e0\"/>\n";
        out += "<text x=\"" + px(left - 8) + "\" y=\"" + px(sy(v) + 4) + "\" text-anchor=\"end\">" +
               tick_label(v, ystep) + "</text>\n";
    }
    out += "<rect x=\"" + px(left) + "\" y=\"" + px(top) + "\" width=\"" + px(plot_w) + "\" height=\"" + px(plot_h) +
           "\" fill=\"none\" stroke=\"black\"/>\n";
    out += "<text x=\"" + px(left + plot_w / 2) + "\" y=\"" + px(height - 15.0) + "\" text-anchor=\"middle\">" +
           xml_escape(plot.x_label) + "</text>\n";
    out += "<text x=\"20\" y=\"" + px(top + plot_h / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 20 " +
           px(top + plot_h / 2) + ")\">" + xml_escape(plot.y_label) + "</text>\n";

    for (std::size_t i = 0; i < plot.series.size(); ++i) {
        const PlotSeries& s = plot.series[i];
        const std::string color = kPalette[i % kPalette.size()];
        const std::size_t n = std::min(s.x.size(), s.y.size());
        if (s.markers_only) {
            for (std::size_t j = 0; j < n; ++j) {
                if (!std::isfinite(s.x[j]) || !std::isfinite(s.y[j])) continue;
                out += "<circle cx=\"" + px(sx(s.x[j])) + "\" cy=\"" + px(sy(s.y[j])) + "\" r=\"4\" fill=\"" + color +
                       "\"/>\n";
            }
        } else {
            out += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"2\"";
            if (s.dashed) out += " stroke-dasharray=\"6 4\"";
            out += " points=\"";
            for (std::size_t j = 0; j < n; ++j) {
                if (!std::isfinite(s.x[j]) || !std::isfinite(s.y[j])) continue;
                out += px(sx(s.x[j])) + "," + px(sy(s.y[j])) + (j + 1 < n ? " " : "");
            }
            out += "\"/>\n";
        }
        const double ly = top + 16 + 18.0 * static_cast<double>(i);
        const double lx = left + plot_w - 170;
        out += "<line x1=\"" + px(lx) + "\" y1=\"" + px(ly - 4) + "\" x2=\"" + px(lx + 24) + "\" y2=\"" + px(ly - 4) +
               "\" stroke=\"" + color + "\" stroke-width=\"2\"" + (s.dashed ? " stroke-dasharray=\"6 4\"" : "") +
               "/>\n";
        out += "<text x=\"" + px(lx + 30) + "\" y=\"" + px(ly) + "\">" + xml_escape(s.label) + "</text>\n";
    }
    out += "</svg>\n";
    return out;
}

} // namespace emtime
