#pragma once

#include <filesystem>
#include <string>

#include "stretchmetrics/types.hpp"

namespace stretchmetrics {

/// Meter over-range token accepted in the R_ohm column.
inline constexpr const char* kOpenCircuitToken = "OVER";

inline constexpr const char* kResistanceHeader = "t_s,R_ohm";
inline constexpr const char* kTensileHeader = "t_s,disp_mm,force_N";

/// Parses an LCR-meter log (header exactly `t_s,R_ohm`). Strict: the
/// first malformed row aborts the parse; nothing is skipped.
ResistanceTrace parse_resistance_log(const std::filesystem::path& path);

/// Parses a tensile-tester log (header exactly `t_s,disp_mm,force_N`).
TensileTrace parse_tensile_log(const std::filesystem::path& path);

/// Relaxed baseline R0: median resistance over the leading window
/// (t within cfg.baseline_window_s of the first sample). Open-circuit
/// samples inside the window are rejected.
double baseline_resistance(const ResistanceTrace& trace, const TestConfig& cfg);

/// Invariant checks shared by the parsers and the simulator outputs.
void validate(const ResistanceTrace& trace);
void validate(const TensileTrace& trace);

std::string resistance_csv(const ResistanceTrace& trace);
std::string tensile_csv(const TensileTrace& trace);

void write_resistance_csv(const ResistanceTrace& trace,
                          const std::filesystem::path& path);
void write_tensile_csv(const TensileTrace& trace,
                       const std::filesystem::path& path);

}  // namespace stretchmetrics
