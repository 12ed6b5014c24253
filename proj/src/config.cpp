#include "stretchmetrics/config.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "stretchmetrics/csv.hpp"

namespace stretchmetrics {

namespace {

nlohmann::json to_json(const RunConfig& c) {
    return {
        {"gauge_length_mm", c.test.gauge_length_mm},
        {"baseline_window_s", c.test.baseline_window_s},
        {"sample_rate_hint_hz", c.test.sample_rate_hint_hz},
        {"time_offset_s", c.test.time_offset_s},
        {"prominence_frac", c.segmentation.prominence_frac},
        {"min_separation_frac", c.segmentation.min_separation_frac},
        {"valley_tol_frac", c.segmentation.valley_tol_frac},
        {"force_drop_frac", c.failure.force_drop_frac},
        {"force_floor_n", c.failure.force_floor_n},
        {"open_ratio", c.failure.open_ratio},
        {"r2_floor", c.failure.r2_floor},
        {"linear_range_start", c.failure.linear_range_start},
        {"linear_range_step", c.failure.linear_range_step},
        {"n_bins", c.n_bins},
        {"min_angle_deg", c.min_angle_deg},
    };
}

void from_json(const nlohmann::json& j, RunConfig& c) {
    c.test.gauge_length_mm = j.value("gauge_length_mm", c.test.gauge_length_mm);
    c.test.baseline_window_s =
        j.value("baseline_window_s", c.test.baseline_window_s);
    c.test.sample_rate_hint_hz =
        j.value("sample_rate_hint_hz", c.test.sample_rate_hint_hz);
    c.test.time_offset_s = j.value("time_offset_s", c.test.time_offset_s);
    c.segmentation.prominence_frac =
        j.value("prominence_frac", c.segmentation.prominence_frac);
    c.segmentation.min_separation_frac =
        j.value("min_separation_frac", c.segmentation.min_separation_frac);
    c.segmentation.valley_tol_frac =
        j.value("valley_tol_frac", c.segmentation.valley_tol_frac);
    c.failure.force_drop_frac =
        j.value("force_drop_frac", c.failure.force_drop_frac);
    c.failure.force_floor_n = j.value("force_floor_n", c.failure.force_floor_n);
    c.failure.open_ratio = j.value("open_ratio", c.failure.open_ratio);
    c.failure.r2_floor = j.value("r2_floor", c.failure.r2_floor);
    c.failure.linear_range_start =
        j.value("linear_range_start", c.failure.linear_range_start);
    c.failure.linear_range_step =
        j.value("linear_range_step", c.failure.linear_range_step);
    c.n_bins = j.value("n_bins", c.n_bins);
    c.min_angle_deg = j.value("min_angle_deg", c.min_angle_deg);
}

void check_ranges(const RunConfig& c) {
    const auto bad = [](const char* field) {
        fail("InvalidParams", std::string("config field out of range: ") + field,
             ErrorKind::config);
    };
    if (c.test.gauge_length_mm <= 0.0) bad("gauge_length_mm");
    if (c.test.baseline_window_s <= 0.0) bad("baseline_window_s");
    if (c.segmentation.prominence_frac <= 0.0 ||
        c.segmentation.prominence_frac > 1.0) {
        bad("prominence_frac");
    }
    if (c.segmentation.valley_tol_frac < 0.0 ||
        c.segmentation.valley_tol_frac >= 1.0) {
        bad("valley_tol_frac");
    }
    if (c.failure.force_drop_frac <= 0.0 || c.failure.force_drop_frac >= 1.0) {
        bad("force_drop_frac");
    }
    if (c.failure.open_ratio <= 0.0) bad("open_ratio");
    if (c.failure.r2_floor <= 0.0 || c.failure.r2_floor > 1.0) bad("r2_floor");
    if (c.failure.linear_range_step <= 0.0) bad("linear_range_step");
    if (c.n_bins < 2) bad("n_bins");
    if (c.min_angle_deg < 0.0) bad("min_angle_deg");
}

}  // namespace

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail("FileMissing", "cannot open " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        fail("InvalidParams", "bad config JSON: " + std::string(e.what()),
             ErrorKind::config);
    }
    RunConfig cfg;
    try {
        from_json(j, cfg);
    } catch (const nlohmann::json::exception& e) {
        fail("InvalidParams", "bad config JSON: " + std::string(e.what()),
             ErrorKind::config);
    }
    check_ranges(cfg);
    return cfg;
}

void apply_override(RunConfig& cfg, const std::string& key_value) {
    const auto eq = key_value.find('=');
    if (eq == std::string::npos || eq == 0) {
        fail("InvalidParams", "--set expects key=value, got '" + key_value + "'",
             ErrorKind::config);
    }
    const std::string key = key_value.substr(0, eq);
    const std::string value = key_value.substr(eq + 1);
    double num = 0.0;
    if (!csv::parse_double(value, num)) {
        fail("InvalidParams", "--set value for '" + key + "' is not a number",
             ErrorKind::config);
    }
    nlohmann::json j = to_json(cfg);
    if (!j.contains(key)) {
        fail("InvalidParams", "unknown config key '" + key + "'",
             ErrorKind::config);
    }
    if (key == "n_bins") {
        j[key] = static_cast<std::size_t>(num);
    } else {
        j[key] = num;
    }
    from_json(j, cfg);
    check_ranges(cfg);
}

std::string config_json(const RunConfig& cfg) {
    return to_json(cfg).dump(2);
}

}  // namespace stretchmetrics
