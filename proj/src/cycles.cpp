#include "stretchmetrics/cycles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "stretchmetrics/csv.hpp"
#include "stretchmetrics/numeric.hpp"

namespace stretchmetrics {

namespace {

std::vector<double> strain_of(const SyncedTrace& trace) {
    std::vector<double> s;
    s.reserve(trace.samples.size());
    for (const auto& m : trace.samples) s.push_back(m.strain);
    return s;
}

// Local maxima; a flat-topped plateau reports its first sample.
std::vector<std::size_t> local_maxima(const std::vector<double>& x) {
    std::vector<std::size_t> peaks;
    const std::size_t n = x.size();
    std::size_t i = 1;
    while (i + 1 < n) {
        if (x[i] > x[i - 1]) {
            std::size_t j = i;
            while (j + 1 < n && x[j + 1] == x[j]) ++j;
            if (j + 1 < n && x[j + 1] < x[j]) {
                peaks.push_back(i);
                i = j + 1;
                continue;
            }
            i = j + 1;
            continue;
        }
        ++i;
    }
    return peaks;
}

// Prominence of a peak: height above the higher of the two lowest valleys
// reached before meeting a strictly taller sample on each side.
double prominence(const std::vector<double>& x, std::size_t p) {
    double left_min = x[p];
    for (std::size_t i = p; i-- > 0;) {
        if (x[i] > x[p]) break;
        left_min = std::min(left_min, x[i]);
    }
    double right_min = x[p];
    for (std::size_t i = p + 1; i < x.size(); ++i) {
        if (x[i] > x[p]) break;
        right_min = std::min(right_min, x[i]);
    }
    return x[p] - std::max(left_min, right_min);
}

std::size_t last_argmin(const std::vector<double>& x, std::size_t lo,
                        std::size_t hi) {
    std::size_t best = lo;
    for (std::size_t i = lo; i < hi; ++i) {
        if (x[i] <= x[best]) best = i;
    }
    return best;
}

std::size_t first_argmin(const std::vector<double>& x, std::size_t lo,
                         std::size_t hi) {
    std::size_t best = lo;
    for (std::size_t i = lo; i < hi; ++i) {
        if (x[i] < x[best]) best = i;
    }
    return best;
}

}  // namespace

std::vector<Cycle> segment_cycles(const SyncedTrace& trace,
                                  const SegmentationParams& params) {
    const auto strain = strain_of(trace);
    if (strain.size() < 3) fail("NoCyclesFound", "trace too short");

    const auto [min_it, max_it] = std::minmax_element(strain.begin(), strain.end());
    const double global_min = *min_it;
    const double range = *max_it - global_min;
    if (range <= 0.0) fail("NoCyclesFound", "strain signal is constant");

    std::vector<std::size_t> candidates;
    for (std::size_t p : local_maxima(strain)) {
        if (prominence(strain, p) >= params.prominence_frac * range) {
            candidates.push_back(p);
        }
    }
    if (candidates.empty()) fail("NoCyclesFound", "no strain reversals found");

    // Enforce a minimum peak separation of a fraction of the median period,
    // keeping taller peaks first (ties resolve to the earlier index).
    if (candidates.size() > 1) {
        std::vector<double> periods;
        for (std::size_t i = 1; i < candidates.size(); ++i) {
            periods.push_back(trace.samples[candidates[i]].t_s -
                              trace.samples[candidates[i - 1]].t_s);
        }
        const double min_sep = params.min_separation_frac * median(periods);

        std::vector<std::size_t> order(candidates.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) {
                             return strain[candidates[a]] > strain[candidates[b]];
                         });
        std::vector<std::size_t> kept;
        for (std::size_t oi : order) {
            const double t = trace.samples[candidates[oi]].t_s;
            const bool clear = std::none_of(
                kept.begin(), kept.end(), [&](std::size_t k) {
                    return std::abs(trace.samples[candidates[k]].t_s - t) <
                           min_sep;
                });
            if (clear) kept.push_back(oi);
        }
        std::sort(kept.begin(), kept.end());
        std::vector<std::size_t> filtered;
        for (std::size_t oi : kept) filtered.push_back(candidates[oi]);
        candidates = std::move(filtered);
    }

    const double valley_ceiling = global_min + params.valley_tol_frac * range;
    std::vector<Cycle> cycles;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const std::size_t p = candidates[i];
        const std::size_t lo = (i == 0) ? 0 : candidates[i - 1];
        const std::size_t hi =
            (i + 1 < candidates.size()) ? candidates[i + 1] : strain.size();
        Cycle c;
        c.peak_idx = p;
        c.start_idx = last_argmin(strain, lo, p);
        c.end_idx = first_argmin(strain, p + 1, hi);
        if (strain[c.start_idx] > valley_ceiling ||
            strain[c.end_idx] > valley_ceiling) {
            continue;  // open-ended cycle (e.g. trace stops mid-unloading)
        }
        cycles.push_back(c);
    }
    if (cycles.empty()) fail("NoCyclesFound", "no closed cycles found");
    return cycles;
}

Branches split_branches(const SyncedTrace& trace, const Cycle& c) {
    if (!(c.start_idx < c.peak_idx && c.peak_idx < c.end_idx) ||
        c.end_idx >= trace.samples.size()) {
        fail("NoCyclesFound", "invalid cycle indices");
    }
    const auto append = [&](Branch& b, std::size_t idx) {
        const auto& s = trace.samples[idx];
        if (s.open_circuit) return;
        if (!b.strain.empty() && s.strain <= b.strain.back()) return;
        b.strain.push_back(s.strain);
        b.d_r_over_r.push_back(s.d_r_over_r);
    };

    Branches out;
    for (std::size_t i = c.start_idx; i <= c.peak_idx; ++i) {
        append(out.loading, i);
    }
    for (std::size_t i = c.end_idx + 1; i-- > c.peak_idx;) {
        append(out.unloading, i);
    }
    return out;
}

MidpointCurve midpoint_curve(const SyncedTrace& trace,
                             const std::vector<Cycle>& cycles,
                             std::size_t n_bins) {
    if (cycles.empty()) fail("NoCyclesFound", "midpoint curve needs cycles");
    if (n_bins < 2) {
        fail("InvalidParams", "n_bins must be >= 2", ErrorKind::config);
    }

    double grid_top = std::numeric_limits<double>::infinity();
    std::vector<Branches> branches;
    branches.reserve(cycles.size());
    for (const auto& c : cycles) {
        branches.push_back(split_branches(trace, c));
        grid_top = std::min(grid_top, trace.samples[c.peak_idx].strain);
    }

    MidpointCurve mc;
    mc.n_cycles = cycles.size();
    mc.strain_grid.resize(n_bins);
    for (std::size_t g = 0; g < n_bins; ++g) {
        mc.strain_grid[g] =
            grid_top * static_cast<double>(g) / static_cast<double>(n_bins - 1);
    }

    mc.mean_mid.assign(n_bins, 0.0);
    mc.std_mid.assign(n_bins, 0.0);
    std::vector<std::vector<double>> mids(cycles.size(),
                                          std::vector<double>(n_bins));
    for (std::size_t k = 0; k < branches.size(); ++k) {
        const auto& b = branches[k];
        for (std::size_t g = 0; g < n_bins; ++g) {
            const double x = mc.strain_grid[g];
            const double l = interp_clamped(b.loading.strain,
                                            b.loading.d_r_over_r, x);
            const double u = interp_clamped(b.unloading.strain,
                                            b.unloading.d_r_over_r, x);
            mids[k][g] = 0.5 * (l + u);
        }
    }
    for (std::size_t g = 0; g < n_bins; ++g) {
        double mean = 0.0;
        for (std::size_t k = 0; k < mids.size(); ++k) mean += mids[k][g];
        mean /= static_cast<double>(mids.size());
        double var = 0.0;
        for (std::size_t k = 0; k < mids.size(); ++k) {
            var += (mids[k][g] - mean) * (mids[k][g] - mean);
        }
        var /= static_cast<double>(mids.size());  // population variance
        mc.mean_mid[g] = mean;
        mc.std_mid[g] = std::sqrt(var);
    }
    return mc;
}

std::vector<CycleExtrema> per_cycle_extrema(const SyncedTrace& trace,
                                            const std::vector<Cycle>& cycles) {
    if (cycles.empty()) fail("NoCyclesFound", "extrema need cycles");
    std::vector<CycleExtrema> out;
    out.reserve(cycles.size());
    for (const auto& c : cycles) {
        CycleExtrema e;
        e.baseline_r = trace.r0_ohm * (1.0 + trace.samples[c.end_idx].d_r_over_r);
        double peak = -std::numeric_limits<double>::infinity();
        for (std::size_t i = c.start_idx; i <= c.end_idx; ++i) {
            if (trace.samples[i].open_circuit) continue;
            peak = std::max(peak,
                            trace.r0_ohm * (1.0 + trace.samples[i].d_r_over_r));
        }
        e.peak_r = peak;
        out.push_back(e);
    }
    return out;
}

std::string midpoint_csv(const MidpointCurve& mc) {
    std::string out = "strain,mean_mid,std_mid\n";
    for (std::size_t g = 0; g < mc.strain_grid.size(); ++g) {
        out += csv::format_double(mc.strain_grid[g]);
        out += ',';
        out += csv::format_double(mc.mean_mid[g]);
        out += ',';
        out += csv::format_double(mc.std_mid[g]);
        out += '\n';
    }
    return out;
}

void write_midpoint_csv(const MidpointCurve& mc,
                        const std::filesystem::path& path) {
    csv::write_text_file(path, midpoint_csv(mc));
}

std::string extrema_csv(const std::vector<CycleExtrema>& extrema) {
    std::string out = "cycle,baseline_R_ohm,peak_R_ohm\n";
    for (std::size_t k = 0; k < extrema.size(); ++k) {
        out += std::to_string(k);
        out += ',';
        out += csv::format_double(extrema[k].baseline_r);
        out += ',';
        out += csv::format_double(extrema[k].peak_r);
        out += '\n';
    }
    return out;
}

}  // namespace stretchmetrics
