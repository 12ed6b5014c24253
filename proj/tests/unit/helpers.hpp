#pragma once

#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include "stretchmetrics/csv.hpp"
#include "stretchmetrics/types.hpp"

namespace testutil {

/// Runs fn and returns the ToolkitError name it throws, or "" if none.
template <typename Fn>
std::string error_name(Fn&& fn) {
    try {
        fn();
    } catch (const stretchmetrics::ToolkitError& e) {
        return e.name();
    }
    return "";
}

inline std::filesystem::path temp_dir(const std::string& tag) {
    const auto dir =
        std::filesystem::temp_directory_path() / ("stretchmetrics_" + tag);
    std::filesystem::create_directories(dir);
    return dir;
}

inline std::filesystem::path write_file(const std::string& tag,
                                        const std::string& name,
                                        const std::string& content) {
    const auto path = temp_dir(tag) / name;
    stretchmetrics::csv::write_text_file(path, content);
    return path;
}

/// Synthetic synced trace from explicit strain/value arrays (uniform 10 Hz
/// timebase, r0 = 1 so dR/R doubles as resistance shape).
inline stretchmetrics::SyncedTrace make_synced(
    const std::vector<double>& strain, const std::vector<double>& d,
    double r0 = 2.5e6) {
    stretchmetrics::SyncedTrace trace;
    trace.r0_ohm = r0;
    trace.gauge_length_mm = 100.0;
    trace.has_force = false;
    for (std::size_t i = 0; i < strain.size(); ++i) {
        stretchmetrics::SyncedSample s;
        s.t_s = 0.1 * static_cast<double>(i);
        s.strain = strain[i];
        s.d_r_over_r = d[i];
        s.force_n = std::nan("");
        trace.samples.push_back(s);
    }
    return trace;
}

}  // namespace testutil
