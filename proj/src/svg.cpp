#include "stretchmetrics/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace stretchmetrics::svg {

namespace {

constexpr int kMarginLeft = 64;
constexpr int kMarginRight = 16;
constexpr int kMarginTop = 32;
constexpr int kMarginBottom = 48;

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void add(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void pad() {
        if (lo > hi) {
            lo = 0.0;
            hi = 1.0;
        }
        if (hi == lo) {
            lo -= 0.5;
            hi += 0.5;
        }
        const double m = 0.04 * (hi - lo);
        lo -= m;
        hi += m;
    }
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

}  // namespace

std::string render(const Chart& chart) {
    Range rx, ry;
    for (const auto& s : chart.series) {
        for (double v : s.x) rx.add(v);
        for (double v : s.y) ry.add(v);
    }
    for (const auto& b : chart.bands) {
        for (double v : b.x) rx.add(v);
        for (double v : b.lower) ry.add(v);
        for (double v : b.upper) ry.add(v);
    }
    rx.pad();
    ry.pad();

    const double plot_w = chart.width_px - kMarginLeft - kMarginRight;
    const double plot_h = chart.height_px - kMarginTop - kMarginBottom;
    const auto px = [&](double v) {
        return kMarginLeft + (v - rx.lo) / (rx.hi - rx.lo) * plot_w;
    };
    const auto py = [&](double v) {
        return kMarginTop + (ry.hi - v) / (ry.hi - ry.lo) * plot_h;
    };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
           std::to_string(chart.width_px) + "\" height=\"" +
           std::to_string(chart.height_px) + "\" font-family=\"sans-serif\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    for (const auto& b : chart.bands) {
        if (b.x.size() < 2) continue;
        std::string pts;
        for (std::size_t i = 0; i < b.x.size(); ++i) {
            pts += num(px(b.x[i])) + "," + num(py(b.upper[i])) + " ";
        }
        for (std::size_t i = b.x.size(); i-- > 0;) {
            pts += num(px(b.x[i])) + "," + num(py(b.lower[i])) + " ";
        }
        out += "<polygon points=\"" + pts + "\" fill=\"" + b.color +
               "\" fill-opacity=\"0.5\" stroke=\"none\"/>\n";
    }

    // axes with 5 ticks per side
    out += "<rect x=\"" + std::to_string(kMarginLeft) + "\" y=\"" +
           std::to_string(kMarginTop) + "\" width=\"" + num(plot_w) +
           "\" height=\"" + num(plot_h) +
           "\" fill=\"none\" stroke=\"#333333\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double fx = rx.lo + (rx.hi - rx.lo) * i / 4.0;
        const double fy = ry.lo + (ry.hi - ry.lo) * i / 4.0;
        out += "<line x1=\"" + num(px(fx)) + "\" y1=\"" +
               num(kMarginTop + plot_h) + "\" x2=\"" + num(px(fx)) +
               "\" y2=\"" + num(kMarginTop + plot_h + 5) +
               "\" stroke=\"#333333\"/>\n";
        out += "<text x=\"" + num(px(fx)) + "\" y=\"" +
               num(kMarginTop + plot_h + 20) +
               "\" font-size=\"11\" text-anchor=\"middle\">" + tick_label(fx) +
               "</text>\n";
        out += "<line x1=\"" + std::to_string(kMarginLeft - 5) + "\" y1=\"" +
               num(py(fy)) + "\" x2=\"" + std::to_string(kMarginLeft) +
               "\" y2=\"" + num(py(fy)) + "\" stroke=\"#333333\"/>\n";
        out += "<text x=\"" + std::to_string(kMarginLeft - 8) + "\" y=\"" +
               num(py(fy) + 4) +
               "\" font-size=\"11\" text-anchor=\"end\">" + tick_label(fy) +
               "</text>\n";
    }

    for (const auto& s : chart.series) {
        if (s.x.size() < 2) continue;
        std::string pts;
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.y[i])) continue;
            pts += num(px(s.x[i])) + "," + num(py(s.y[i])) + " ";
        }
        out += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" +
               s.color + "\" stroke-width=\"" + num(s.width) + "\"" +
               (s.dashed ? " stroke-dasharray=\"6,4\"" : "") + "/>\n";
    }

    out += "<text x=\"" + std::to_string(chart.width_px / 2) + "\" y=\"20\" " +
           "font-size=\"14\" text-anchor=\"middle\">" + chart.title +
           "</text>\n";
    out += "<text x=\"" + std::to_string(chart.width_px / 2) + "\" y=\"" +
           std::to_string(chart.height_px - 10) +
           "\" font-size=\"12\" text-anchor=\"middle\">" + chart.x_label +
           "</text>\n";
    out += "<text x=\"16\" y=\"" + std::to_string(chart.height_px / 2) +
           "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 "
           "16 " +
           std::to_string(chart.height_px / 2) + ")\">" + chart.y_label +
           "</text>\n";

    for (std::size_t i = 0; i < chart.legend.size() && i < chart.series.size();
         ++i) {
        const double y = kMarginTop + 16.0 + 16.0 * static_cast<double>(i);
        out += "<line x1=\"" + std::to_string(kMarginLeft + 8) + "\" y1=\"" +
               num(y - 4) + "\" x2=\"" + std::to_string(kMarginLeft + 28) +
               "\" y2=\"" + num(y - 4) + "\" stroke=\"" +
               chart.series[i].color + "\" stroke-width=\"2\"/>\n";
        out += "<text x=\"" + std::to_string(kMarginLeft + 34) + "\" y=\"" +
               num(y) + "\" font-size=\"11\">" + chart.legend[i] + "</text>\n";
    }

    out += "</svg>\n";
    return out;
}

}  // namespace stretchmetrics::svg
