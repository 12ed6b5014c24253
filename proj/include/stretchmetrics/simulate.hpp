#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "stretchmetrics/types.hpp"

namespace stretchmetrics {

/// Half-width coefficient that makes the closed-form lens-loop hysteresis
/// equal h_pct for a linear midline of slope gf cycled to peak_strain.
constexpr double delta_max_for_hysteresis(double h_pct, double gf,
                                          double peak_strain) {
    const double h = h_pct / 100.0;
    return 3.0 * h * gf * peak_strain / (8.0 - 4.0 * h);
}

/// Closed-form hysteresis of the simulated loop (valid while the midline
/// stays linear up to peak_strain).
constexpr double closed_form_hysteresis_pct(double gf, double delta_max,
                                            double peak_strain) {
    const double diff = (4.0 / 3.0) * delta_max * peak_strain;
    const double load = gf * peak_strain * peak_strain / 2.0 +
                        (2.0 / 3.0) * delta_max * peak_strain;
    return 100.0 * diff / load;
}

/// Ground-truth sensor model: piecewise-linear midline with saturation,
/// lens-shaped hysteresis loop, affine per-cycle drift laws, additive
/// Gaussian meter noise.
struct SensorParams {
    double r0_ohm = 2.5e6;
    double gf = 31.42;
    double delta_max = delta_max_for_hysteresis(22.9, 31.42, 0.5);
    double baseline_drift = 0.00135;  // fraction of R0 per cycle
    double peak_drift = 0.00236;      // fraction of the peak per cycle
    double eps_linear_end = 0.60;
    double gf_saturated = -2.0;       // midline slope beyond the knee
    double eps_fail = 1.20;
    FailureMode fail_mode = FailureMode::mechanical;
    double noise_sigma = 0.0;         // resistance noise as a fraction of R0
    std::uint64_t seed = 42;
};

/// Crosshead protocol for the two bench tests.
struct ProtocolParams {
    double peak_strain = 0.5;
    std::size_t n_cycles = 80;
    double crosshead_rate_mm_per_min = 60.0;
    double gauge_length_mm = 100.0;
    double sample_rate_hz = 10.0;
    double settle_s = 2.0;  // relaxed dwell before the crosshead moves
};

struct SimOutput {
    ResistanceTrace resistance;
    TensileTrace tensile;
};

void validate_params(const SensorParams& sensor, const ProtocolParams& proto,
                     bool cyclic);

/// Sensor midline response at a given strain (no hysteresis, no drift).
double midline(const SensorParams& params, double strain);

/// Smooth monotone crosshead load law; reaches 15 N at the linear-range
/// knee, safely below the 20 N bound the bench test assumes.
double force_law(const SensorParams& params, double strain);

/// Triangular strain wave with per-cycle loading/unloading branches
/// midline(e) +/- delta(e). Baselines follow R0*(1 + baseline_drift*k)
/// exactly; per-cycle peaks follow an affine law with relative slope
/// peak_drift whose center is chosen so the across-cycle mean amplitude
/// equals the drift-free amplitude (the analyzed gauge factor then
/// matches the programmed one instead of absorbing the drift).
SimOutput simulate_cyclic(const SensorParams& params,
                          const ProtocolParams& proto);

/// Monotonic ramp to 1.05 * eps_fail. Mechanical mode collapses the
/// force to 5% of its running max at eps_fail; electrical mode emits the
/// open-circuit sentinel from eps_fail onward.
SimOutput simulate_failure(const SensorParams& params,
                           const ProtocolParams& proto);

/// Resistance trace for a joint-motion profile: per sample the strain
/// implied by the inverse linear calibration, pushed through the
/// midline/branch response with noise.
ResistanceTrace simulate_motion(const SensorParams& params,
                                const AngleTrace& motion,
                                const AngleModel& model);

/// Ground-truth sidecar consumed by test harnesses.
std::string truth_json(const SensorParams& sensor, const ProtocolParams& proto,
                       const std::string& kind);
void write_truth_json(const SensorParams& sensor, const ProtocolParams& proto,
                      const std::string& kind,
                      const std::filesystem::path& path);

/// Params-file (de)serialization for the CLI.
void params_from_json_file(const std::filesystem::path& path,
                           SensorParams& sensor, ProtocolParams& proto,
                           std::string* motion_csv, AngleModel* motion_model);

}  // namespace stretchmetrics
