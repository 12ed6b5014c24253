#include "stretchmetrics/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "stretchmetrics/types.hpp"

namespace stretchmetrics {

LinearFit linear_fit(std::span<const double> x, std::span<const double> y,
                     bool through_origin) {
    if (x.size() != y.size() || x.size() < 2) {
        fail("DegeneratePoints", "linear fit needs at least 2 paired samples");
    }
    const double n = static_cast<double>(x.size());

    LinearFit fit;
    if (through_origin) {
        double sxx = 0.0, sxy = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            sxx += x[i] * x[i];
            sxy += x[i] * y[i];
        }
        if (sxx == 0.0) fail("DegenerateGrid", "zero variance in x");
        fit.slope = sxy / sxx;
        fit.intercept = 0.0;
    } else {
        double mx = 0.0, my = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            mx += x[i];
            my += y[i];
        }
        mx /= n;
        my /= n;
        double sxx = 0.0, sxy = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            sxx += (x[i] - mx) * (x[i] - mx);
            sxy += (x[i] - mx) * (y[i] - my);
        }
        if (sxx == 0.0) fail("DegenerateGrid", "zero variance in x");
        fit.slope = sxy / sxx;
        fit.intercept = my - fit.slope * mx;
    }

    double my = 0.0;
    for (double v : y) my += v;
    my /= n;
    double ss_res = 0.0, ss_tot = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (fit.slope * x[i] + fit.intercept);
        ss_res += r * r;
        ss_tot += (y[i] - my) * (y[i] - my);
    }
    if (ss_tot > 0.0) {
        fit.r2 = 1.0 - ss_res / ss_tot;
        fit.r2 = std::clamp(fit.r2, 0.0, 1.0);
    } else {
        // Constant y: a free-intercept fit reproduces it exactly; the
        // origin-forced fit generally cannot.
        fit.r2 = (ss_res == 0.0) ? 1.0 : 0.0;
    }
    return fit;
}

double trapezoid(std::span<const double> x, std::span<const double> y) {
    double area = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) {
        area += 0.5 * (y[i] + y[i - 1]) * (x[i] - x[i - 1]);
    }
    return area;
}

double median(std::vector<double> values) {
    if (values.empty()) fail("DegeneratePoints", "median of empty set");
    const std::size_t mid = values.size() / 2;
    std::nth_element(values.begin(), values.begin() + mid, values.end());
    double hi = values[mid];
    if (values.size() % 2 == 1) return hi;
    double lo = *std::max_element(values.begin(), values.begin() + mid);
    return 0.5 * (lo + hi);
}

double interp_clamped(std::span<const double> xs, std::span<const double> ys,
                      double x) {
    if (xs.empty()) fail("DegeneratePoints", "interpolation over empty knots");
    if (x <= xs.front()) return ys.front();
    if (x >= xs.back()) return ys.back();
    const auto it = std::lower_bound(xs.begin(), xs.end(), x);
    const std::size_t hi = static_cast<std::size_t>(it - xs.begin());
    const std::size_t lo = hi - 1;
    const double w = (x - xs[lo]) / (xs[hi] - xs[lo]);
    return ys[lo] + w * (ys[hi] - ys[lo]);
}

}  // namespace stretchmetrics
