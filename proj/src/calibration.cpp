#include "stretchmetrics/calibration.hpp"

#include <algorithm>
#include <cmath>

#include "stretchmetrics/csv.hpp"
#include "stretchmetrics/numeric.hpp"

namespace stretchmetrics {

AngleModel fit_angle_model(
    const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 2) {
        fail("DegeneratePoints", "need at least 2 calibration points");
    }
    std::vector<double> x, y;
    x.reserve(points.size());
    y.reserve(points.size());
    for (const auto& [dr, angle] : points) {
        x.push_back(dr);
        y.push_back(angle);
    }
    const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
    if (*hi - *lo <= 0.0) {
        fail("DegeneratePoints", "all calibration points share one dR/R");
    }
    const LinearFit fit = linear_fit(x, y);
    if (fit.slope == 0.0 || !std::isfinite(fit.slope)) {
        fail("DegeneratePoints", "calibration slope is zero");
    }
    return {fit.slope, fit.intercept, fit.r2};
}

AngleTrace estimate_angles(const AngleModel& model, const SyncedTrace& trace) {
    if (model.slope == 0.0 || !std::isfinite(model.slope)) {
        fail("DegeneratePoints", "angle model has no usable slope");
    }
    AngleTrace out;
    out.samples.reserve(trace.samples.size());
    for (const auto& s : trace.samples) {
        AngleSample a;
        a.t_s = s.t_s;
        const double raw = s.open_circuit
                               ? (model.slope > 0.0 ? 181.0 : -1.0)
                               : model.slope * s.d_r_over_r + model.intercept;
        a.angle_deg = std::clamp(raw, 0.0, 180.0);
        a.clamped = raw != a.angle_deg;
        out.samples.push_back(a);
    }
    return out;
}

MapeScore mape(const AngleTrace& estimated, const AngleTrace& truth,
               double min_angle_deg) {
    if (estimated.samples.size() < 1 || truth.samples.size() < 2) {
        fail("NoOverlap", "need an estimate and at least 2 truth samples");
    }
    std::vector<double> tt, ta;
    tt.reserve(truth.samples.size());
    ta.reserve(truth.samples.size());
    for (const auto& s : truth.samples) {
        tt.push_back(s.t_s);
        ta.push_back(s.angle_deg);
    }

    double sum = 0.0;
    std::size_t n = 0;
    bool any_overlap = false;
    for (const auto& e : estimated.samples) {
        if (e.t_s < tt.front() || e.t_s > tt.back()) continue;
        any_overlap = true;
        const double truth_angle = interp_clamped(tt, ta, e.t_s);
        if (truth_angle < min_angle_deg) continue;
        sum += std::abs(e.angle_deg - truth_angle) / truth_angle;
        ++n;
    }
    if (!any_overlap) fail("NoOverlap", "traces do not overlap in time");
    if (n == 0) {
        fail("AllSamplesBelowThreshold",
             "no truth sample reaches min_angle_deg = " +
                 csv::format_double(min_angle_deg));
    }
    return {100.0 * sum / static_cast<double>(n), n, min_angle_deg};
}

std::vector<std::pair<double, double>> parse_calibration_points(
    const std::filesystem::path& path) {
    const auto lines = csv::read_lines(path);
    if (lines.empty() || lines.front() != "dR_over_R,angle_deg") {
        fail("SchemaMismatch",
             "expected header 'dR_over_R,angle_deg' in " + path.string());
    }
    std::vector<std::pair<double, double>> points;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto fields = csv::split_fields(lines[i]);
        double dr = 0.0, angle = 0.0;
        if (fields.size() != 2 || !csv::parse_double(fields[0], dr) ||
            !csv::parse_double(fields[1], angle)) {
            fail("SchemaMismatch", "bad row " + std::to_string(i + 1));
        }
        points.emplace_back(dr, angle);
    }
    if (points.size() < 2) {
        fail("TooFewSamples", "need at least 2 calibration points");
    }
    return points;
}

AngleTrace parse_angle_trace(const std::filesystem::path& path) {
    const auto lines = csv::read_lines(path);
    if (lines.empty() || lines.front() != "t_s,angle_deg") {
        fail("SchemaMismatch",
             "expected header 't_s,angle_deg' in " + path.string());
    }
    AngleTrace trace;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto fields = csv::split_fields(lines[i]);
        AngleSample s;
        if (fields.size() != 2 || !csv::parse_double(fields[0], s.t_s) ||
            !csv::parse_double(fields[1], s.angle_deg)) {
            fail("SchemaMismatch", "bad row " + std::to_string(i + 1));
        }
        if (s.angle_deg < 0.0 || s.angle_deg > 180.0) {
            fail("AngleOutOfRange", "angle outside [0, 180] at row " +
                                        std::to_string(i + 1));
        }
        if (!trace.samples.empty() && s.t_s <= trace.samples.back().t_s) {
            fail("NonMonotonicTime", "row " + std::to_string(i + 1));
        }
        trace.samples.push_back(s);
    }
    if (trace.samples.size() < 2) {
        fail("TooFewSamples", "need at least 2 angle samples");
    }
    return trace;
}

std::string angle_csv(const AngleTrace& trace) {
    std::string out = "t_s,angle_deg\n";
    for (const auto& s : trace.samples) {
        out += csv::format_double(s.t_s);
        out += ',';
        out += csv::format_double(s.angle_deg);
        out += '\n';
    }
    return out;
}

void write_angle_csv(const AngleTrace& trace,
                     const std::filesystem::path& path) {
    csv::write_text_file(path, angle_csv(trace));
}

}  // namespace stretchmetrics
