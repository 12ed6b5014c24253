#pragma once

#include <string>
#include <vector>

namespace stretchmetrics::svg {

struct Series {
    std::vector<double> x;
    std::vector<double> y;
    std::string color = "#1f77b4";
    double width = 1.5;
    bool dashed = false;
};

/// Shaded y-band around a center line (lower = center - half, upper =
/// center + half), drawn behind the series.
struct Band {
    std::vector<double> x;
    std::vector<double> lower;
    std::vector<double> upper;
    std::string color = "#bbbbbb";
};

struct Chart {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<Band> bands;
    std::vector<Series> series;
    std::vector<std::string> legend;  // one entry per series, optional
    int width_px = 720;
    int height_px = 480;
};

/// Renders a deterministic standalone SVG document.
std::string render(const Chart& chart);

}  // namespace stretchmetrics::svg
