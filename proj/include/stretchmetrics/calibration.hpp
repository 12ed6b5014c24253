#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "stretchmetrics/types.hpp"

namespace stretchmetrics {

/// OLS of angle against dR/R over the calibration points.
AngleModel fit_angle_model(
    const std::vector<std::pair<double, double>>& points);

/// Per-sample angle = slope * dR/R + intercept, clamped to [0, 180] with
/// the clamp recorded on the sample. Open-circuit samples clamp to 180.
AngleTrace estimate_angles(const AngleModel& model, const SyncedTrace& trace);

/// Mean absolute percentage error over the overlap, with the truth
/// interpolated onto the estimate timebase. Samples whose true angle is
/// below min_angle_deg are excluded (MAPE diverges near zero).
MapeScore mape(const AngleTrace& estimated, const AngleTrace& truth,
               double min_angle_deg = 5.0);

/// Calibration points CSV: header `dR_over_R,angle_deg`.
std::vector<std::pair<double, double>> parse_calibration_points(
    const std::filesystem::path& path);

/// Angle trace CSV: header `t_s,angle_deg`, angles in [0, 180].
AngleTrace parse_angle_trace(const std::filesystem::path& path);

std::string angle_csv(const AngleTrace& trace);
void write_angle_csv(const AngleTrace& trace,
                     const std::filesystem::path& path);

}  // namespace stretchmetrics
