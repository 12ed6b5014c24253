#include "stretchmetrics/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "stretchmetrics/cycles.hpp"
#include "stretchmetrics/numeric.hpp"

namespace stretchmetrics {

std::string to_string(FailureMode mode) {
    switch (mode) {
        case FailureMode::mechanical: return "mechanical";
        case FailureMode::electrical: return "electrical";
        case FailureMode::none: return "none";
    }
    return "none";
}

GaugeFit gauge_factor_and_linearity(const MidpointCurve& mc,
                                    bool through_origin) {
    if (mc.strain_grid.size() < 3) {
        fail("DegenerateGrid", "need at least 3 grid points");
    }
    const auto [lo, hi] =
        std::minmax_element(mc.strain_grid.begin(), mc.strain_grid.end());
    if (*hi - *lo <= 0.0) {
        fail("DegenerateGrid", "strain grid has zero spread");
    }
    const LinearFit fit = linear_fit(mc.strain_grid, mc.mean_mid, through_origin);
    return {fit.slope, fit.r2};
}

double hysteresis_percent(const SyncedTrace& trace,
                          const std::vector<Cycle>& cycles) {
    if (cycles.empty()) fail("NoCyclesFound", "hysteresis needs cycles");
    double sum = 0.0;
    for (const auto& c : cycles) {
        const Branches b = split_branches(trace, c);
        const double a_load = trapezoid(b.loading.strain, b.loading.d_r_over_r);
        const double a_unload =
            trapezoid(b.unloading.strain, b.unloading.d_r_over_r);
        if (a_load <= 0.0) {
            fail("ZeroLoadingArea", "loading branch area must be positive");
        }
        sum += 100.0 * std::abs(a_load - a_unload) / a_load;
    }
    return sum / static_cast<double>(cycles.size());
}

DriftRates drift_rates(const std::vector<CycleExtrema>& extrema) {
    if (extrema.size() < 3) {
        fail("TooFewCycles", "drift fit needs at least 3 cycles, got " +
                                 std::to_string(extrema.size()));
    }
    std::vector<double> k(extrema.size()), base(extrema.size()),
        peak(extrema.size());
    for (std::size_t i = 0; i < extrema.size(); ++i) {
        k[i] = static_cast<double>(i);
        base[i] = extrema[i].baseline_r;
        peak[i] = extrema[i].peak_r;
    }
    const LinearFit bf = linear_fit(k, base);
    const LinearFit pf = linear_fit(k, peak);
    if (bf.intercept <= 0.0 || pf.intercept <= 0.0) {
        fail("NonPositiveIntercept", "drift normalization needs positive R");
    }
    return {100.0 * bf.slope / bf.intercept, 100.0 * pf.slope / pf.intercept};
}

namespace {

// Largest strain (grown from `start` in `step` increments) for which the
// OLS fit over [0, eps] keeps R^2 at or above the floor. Flagged samples
// and anything at or past `stop_idx` are excluded from the windows.
double grow_linear_range(const SyncedTrace& trace, std::size_t stop_idx,
                         const FailureParams& p, double max_strain) {
    std::vector<double> xs, ys;
    xs.reserve(stop_idx);
    ys.reserve(stop_idx);
    for (std::size_t i = 0; i < stop_idx; ++i) {
        const auto& s = trace.samples[i];
        if (s.open_circuit || !std::isfinite(s.d_r_over_r)) continue;
        xs.push_back(s.strain);
        ys.push_back(s.d_r_over_r);
    }

    double accepted = p.linear_range_start;
    double candidate = p.linear_range_start;
    const double tol = 1e-12;
    while (candidate <= max_strain + p.linear_range_step) {
        std::size_t n = 0;
        while (n < xs.size() && xs[n] <= candidate + tol) ++n;
        if (n >= 3 && xs[n - 1] - xs[0] > 0.0) {
            const LinearFit fit = linear_fit(std::span(xs).first(n),
                                             std::span(ys).first(n));
            if (fit.r2 < p.r2_floor) break;
            accepted = std::min(candidate, max_strain);
        }
        if (candidate > max_strain) break;
        candidate += p.linear_range_step;
    }
    return accepted;
}

}  // namespace

FailureReport failure_analysis(const SyncedTrace& trace,
                               const FailureParams& params) {
    if (!trace.has_force) {
        fail("MissingForce", "failure analysis needs the force channel");
    }
    const auto& samples = trace.samples;
    if (samples.size() < 3) fail("TooFewSamples", "trace too short");
    for (std::size_t i = 1; i < samples.size(); ++i) {
        if (samples[i].strain < samples[i - 1].strain) {
            fail("NonMonotonicStrain",
                 "strain decreases at sample " + std::to_string(i));
        }
    }

    const std::size_t npos = std::numeric_limits<std::size_t>::max();
    std::size_t mech_idx = npos;
    double running_max = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (running_max > params.force_floor_n &&
            samples[i].force_n <
                (1.0 - params.force_drop_frac) * running_max) {
            mech_idx = i;
            break;
        }
        running_max = std::max(running_max, samples[i].force_n);
    }

    std::size_t elec_idx = npos;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (samples[i].open_circuit ||
            samples[i].d_r_over_r > params.open_ratio) {
            elec_idx = i;
            break;
        }
    }

    FailureReport report;
    std::size_t fail_idx = samples.size();
    if (elec_idx == npos && mech_idx == npos) {
        report.failure_mode = FailureMode::none;
        report.failure_strain = samples.back().strain;
    } else if (elec_idx <= mech_idx) {
        report.failure_mode = FailureMode::electrical;
        report.failure_strain = samples[elec_idx].strain;
        fail_idx = elec_idx;
    } else {
        report.failure_mode = FailureMode::mechanical;
        report.failure_strain = samples[mech_idx].strain;
        fail_idx = mech_idx;
    }

    report.linear_range_end =
        grow_linear_range(trace, fail_idx, params, report.failure_strain);

    double max_force = -std::numeric_limits<double>::infinity();
    for (const auto& s : samples) {
        if (s.strain <= report.linear_range_end + 1e-12) {
            max_force = std::max(max_force, s.force_n);
        }
    }
    report.max_force_in_linear_range = max_force;
    return report;
}

MetricsReport build_report(const MidpointCurve& mc, const SyncedTrace& trace,
                           const std::vector<Cycle>& cycles,
                           const std::vector<CycleExtrema>& extrema) {
    const GaugeFit gauge = gauge_factor_and_linearity(mc);
    const double h = hysteresis_percent(trace, cycles);
    const DriftRates drift = drift_rates(extrema);

    MetricsReport report;
    report.gauge_factor = gauge.gauge_factor;
    report.linearity_r2 = gauge.r2;
    report.hysteresis_pct = h;
    report.baseline_drift_pct_per_cycle = drift.baseline_pct_per_cycle;
    report.peak_drift_pct_per_cycle = drift.peak_pct_per_cycle;
    report.n_cycles = cycles.size();
    return report;
}

std::string render_table(const MetricsReport& report) {
    const auto row = [](const char* name, double value) {
        char buf[80];
        std::snprintf(buf, sizeof(buf), "%-32s %10.3f\n", name, value);
        return std::string(buf);
    };
    std::string out;
    out += "Metric                                Value\n";
    out += "-------------------------------------------\n";
    out += row("Linearity R^2", report.linearity_r2);
    out += row("Sensitivity (GF)", report.gauge_factor);
    out += row("Hysteresis [%]", report.hysteresis_pct);
    out += row("Rel. Baseline Drift/Cycle [%]",
               report.baseline_drift_pct_per_cycle);
    out += row("Rel. Peak Drift/Cycle [%]", report.peak_drift_pct_per_cycle);
    out += row("Cycles", static_cast<double>(report.n_cycles));
    return out;
}

}  // namespace stretchmetrics
