#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace stretchmetrics {

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

/// Ordinary least squares of y against x. With `through_origin` the
/// intercept is forced to zero and R^2 of a zero-variance y is defined
/// as 0; the default free-intercept fit reports R^2 = 1 for data it
/// reproduces exactly (including a constant y).
LinearFit linear_fit(std::span<const double> x, std::span<const double> y,
                     bool through_origin = false);

/// Trapezoidal integral of y over x (x need not be uniform).
double trapezoid(std::span<const double> x, std::span<const double> y);

/// Median; copies and partially sorts its input. Even count averages the
/// two middle values.
double median(std::vector<double> values);

/// Piecewise-linear interpolation of (xs, ys) at x. xs must be strictly
/// increasing; x outside the knots clamps to the boundary value.
double interp_clamped(std::span<const double> xs, std::span<const double> ys,
                      double x);

}  // namespace stretchmetrics
