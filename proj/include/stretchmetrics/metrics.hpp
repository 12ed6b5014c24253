#pragma once

#include <vector>

#include "stretchmetrics/types.hpp"

namespace stretchmetrics {

struct GaugeFit {
    double gauge_factor = 0.0;
    double r2 = 0.0;
};

struct DriftRates {
    double baseline_pct_per_cycle = 0.0;
    double peak_pct_per_cycle = 0.0;
};

struct FailureParams {
    double force_drop_frac = 0.5;  // fractional drop below the running max
    double force_floor_n = 0.5;    // running max must exceed this first
    double open_ratio = 100.0;     // dR/R beyond this counts as open circuit
    double r2_floor = 0.9999;      // linearity floor for the range detector
    double linear_range_start = 0.10;
    double linear_range_step = 0.01;
};

/// Sensitivity and linearity from the averaged midpoint curve: OLS of
/// mean_mid against the strain grid (free intercept by default).
GaugeFit gauge_factor_and_linearity(const MidpointCurve& mc,
                                    bool through_origin = false);

/// Mean over cycles of 100 * |A_load - A_unload| / A_load, with branch
/// areas from trapezoidal integration of dR/R over strain.
double hysteresis_percent(const SyncedTrace& trace,
                          const std::vector<Cycle>& cycles);

/// OLS trend of the per-cycle extrema series against cycle index,
/// normalized by the fitted intercept: 100 * b1 / b0 in %/cycle.
DriftRates drift_rates(const std::vector<CycleExtrema>& extrema);

/// Stretch-to-failure analysis on a monotonic-strain trace with force:
/// failure event (force collapse vs open circuit), linear range grown
/// greedily while the window fit keeps R^2 at or above the floor, and
/// the largest force seen inside that range.
FailureReport failure_analysis(const SyncedTrace& trace,
                               const FailureParams& params = {});

MetricsReport build_report(const MidpointCurve& mc, const SyncedTrace& trace,
                           const std::vector<Cycle>& cycles,
                           const std::vector<CycleExtrema>& extrema);

/// Plain-text two-column table of the cyclic metrics.
std::string render_table(const MetricsReport& report);

}  // namespace stretchmetrics
