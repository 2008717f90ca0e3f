#pragma once

#include <string>
#include <vector>

namespace emtime {

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    bool markers_only = false;
    bool dashed = false;
};

struct LinePlot {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<PlotSeries> series;
};

/// Standalone SVG 1.1 document: framed axes with tick labels, one polyline
/// (or marker set) per series and a legend.
std::string render_svg(const LinePlot& plot, int width = 720, int height = 480);

} // namespace emtime
