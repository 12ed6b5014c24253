#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "stretchmetrics/cycles.hpp"
#include "stretchmetrics/metrics.hpp"
#include "stretchmetrics/types.hpp"

namespace stretchmetrics {

/// Every analysis threshold in one place; echoed verbatim into reports.
struct RunConfig {
    TestConfig test;
    SegmentationParams segmentation;
    FailureParams failure;
    std::size_t n_bins = 100;
    double min_angle_deg = 5.0;
};

/// Loads a config JSON (missing keys keep their defaults).
RunConfig load_config(const std::filesystem::path& path);

/// Applies one `key=value` override (keys as in the config JSON, e.g.
/// `r2_floor=0.99` or `gauge_length_mm=80`).
void apply_override(RunConfig& cfg, const std::string& key_value);

std::string config_json(const RunConfig& cfg);

}  // namespace stretchmetrics
