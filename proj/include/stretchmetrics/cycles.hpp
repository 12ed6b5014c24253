#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "stretchmetrics/types.hpp"

namespace stretchmetrics {

struct SegmentationParams {
    /// Peaks must rise above this fraction of the global strain range.
    double prominence_frac = 0.5;
    /// Minimum peak separation as a fraction of the median peak period.
    double min_separation_frac = 0.25;
    /// Cycle start/end strain must sit within this fraction of the global
    /// strain range above the trace minimum.
    double valley_tol_frac = 0.05;
};

/// Splits the strain signal into valley-peak-valley cycles. Every strain
/// peak whose prominence clears the threshold starts a cycle; consecutive
/// cycles share their boundary valley sample when the valley is a single
/// sample, and exclude dwell samples when it is a plateau.
std::vector<Cycle> segment_cycles(const SyncedTrace& trace,
                                  const SegmentationParams& params = {});

struct Branch {
    std::vector<double> strain;
    std::vector<double> d_r_over_r;
};

struct Branches {
    Branch loading;
    Branch unloading;  // reversed to ascending strain
};

/// Loading = samples [start, peak], unloading = samples [peak, end]
/// reversed. Both are made strictly increasing in strain: repeated
/// strains keep the first sample, backslides are dropped, open-circuit
/// samples are excluded.
Branches split_branches(const SyncedTrace& trace, const Cycle& c);

/// Averaged loading/unloading midpoint on a common strain grid running
/// from 0 to the smallest per-cycle peak strain (no extrapolation).
MidpointCurve midpoint_curve(const SyncedTrace& trace,
                             const std::vector<Cycle>& cycles,
                             std::size_t n_bins = 100);

/// Per-cycle (trailing-valley resistance, maximum resistance) pairs; the
/// series the drift rates are fitted on.
std::vector<CycleExtrema> per_cycle_extrema(const SyncedTrace& trace,
                                            const std::vector<Cycle>& cycles);

std::string midpoint_csv(const MidpointCurve& mc);
void write_midpoint_csv(const MidpointCurve& mc,
                        const std::filesystem::path& path);
std::string extrema_csv(const std::vector<CycleExtrema>& extrema);

}  // namespace stretchmetrics
