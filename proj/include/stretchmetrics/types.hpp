#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace stretchmetrics {

/// Whether an error is a data/analysis problem (CLI exit 1) or a bad
/// configuration/parameter (CLI exit 2).
enum class ErrorKind { analysis, config };

/// All toolkit errors carry a stable short name (e.g. "NonMonotonicTime")
/// so callers and harnesses can match on it without parsing messages.
class ToolkitError : public std::runtime_error {
public:
    ToolkitError(std::string name, const std::string& message,
                 ErrorKind kind = ErrorKind::analysis)
        : std::runtime_error(name + ": " + message),
          name_(std::move(name)),
          kind_(kind) {}

    const std::string& name() const noexcept { return name_; }
    ErrorKind kind() const noexcept { return kind_; }

private:
    std::string name_;
    ErrorKind kind_;
};

[[noreturn]] inline void fail(std::string name, const std::string& message,
                              ErrorKind kind = ErrorKind::analysis) {
    throw ToolkitError(std::move(name), message, kind);
}

/// One LCR-meter sample. `open_circuit` marks the meter's over-range
/// sentinel; such samples are preserved, never dropped.
struct ResistanceSample {
    double t_s = 0.0;
    double r_ohm = 0.0;
    bool open_circuit = false;
};

struct ResistanceTrace {
    std::vector<ResistanceSample> samples;
};

struct TensileSample {
    double t_s = 0.0;
    double disp_mm = 0.0;
    double force_n = 0.0;
};

struct TensileTrace {
    std::vector<TensileSample> samples;
};

/// Test-setup description shared by ingestion and synchronization.
struct TestConfig {
    double gauge_length_mm = 100.0;
    double baseline_window_s = 2.0;
    double sample_rate_hint_hz = 10.0;
    double time_offset_s = 0.0;  // added to tensile timestamps before merging
};

/// Common-timebase sample. `force_n` is NaN when the trace has no force
/// channel; `d_r_over_r` is +inf at open-circuit samples.
struct SyncedSample {
    double t_s = 0.0;
    double strain = 0.0;
    double d_r_over_r = 0.0;
    double force_n = 0.0;
    bool open_circuit = false;
};

struct SyncedTrace {
    std::vector<SyncedSample> samples;
    double r0_ohm = 0.0;
    double gauge_length_mm = 0.0;
    bool has_force = false;
};

/// One loading-unloading cycle as index ranges into a SyncedTrace:
/// valley at start_idx, strain maximum at peak_idx, valley at end_idx.
struct Cycle {
    std::size_t start_idx = 0;
    std::size_t peak_idx = 0;
    std::size_t end_idx = 0;
};

struct MidpointCurve {
    std::vector<double> strain_grid;
    std::vector<double> mean_mid;
    std::vector<double> std_mid;
    std::size_t n_cycles = 0;
};

struct CycleExtrema {
    double baseline_r = 0.0;  // resistance at the cycle's trailing valley
    double peak_r = 0.0;      // maximum resistance within the cycle
};

struct MetricsReport {
    double gauge_factor = 0.0;
    double linearity_r2 = 0.0;
    double hysteresis_pct = 0.0;
    double baseline_drift_pct_per_cycle = 0.0;
    double peak_drift_pct_per_cycle = 0.0;
    std::size_t n_cycles = 0;
};

enum class FailureMode { mechanical, electrical, none };

std::string to_string(FailureMode mode);

struct FailureReport {
    double failure_strain = 0.0;
    FailureMode failure_mode = FailureMode::none;
    double linear_range_end = 0.0;
    double max_force_in_linear_range = 0.0;
};

struct AngleModel {
    double slope = 0.0;      // degrees per unit dR/R
    double intercept = 0.0;  // degrees
    double fit_r2 = 0.0;
};

struct AngleSample {
    double t_s = 0.0;
    double angle_deg = 0.0;
    bool clamped = false;
};

struct AngleTrace {
    std::vector<AngleSample> samples;
};

struct MapeScore {
    double mape_pct = 0.0;
    std::size_t n_scored = 0;
    double min_angle_deg = 0.0;
};

}  // namespace stretchmetrics
