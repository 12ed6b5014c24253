#include "stretchmetrics/sync.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "stretchmetrics/csv.hpp"
#include "stretchmetrics/ingest.hpp"
#include "stretchmetrics/numeric.hpp"

namespace stretchmetrics {

namespace {

constexpr double kMinOverlapSeconds = 1.0;
constexpr double kUniformRelTol = 1e-9;

void check_gauge(const TestConfig& cfg) {
    if (cfg.gauge_length_mm <= 0.0) {
        fail("InvalidParams", "gauge_length_mm must be > 0", ErrorKind::config);
    }
}

void check_uniform(const std::vector<SyncedSample>& samples) {
    if (samples.size() < 2) return;
    const double dt0 = samples[1].t_s - samples[0].t_s;
    for (std::size_t i = 2; i < samples.size(); ++i) {
        const double dt = samples[i].t_s - samples[i - 1].t_s;
        if (std::abs(dt - dt0) > kUniformRelTol * std::abs(dt0)) {
            fail("NonUniformTimebase",
                 "resistance timebase is not uniformly spaced near sample " +
                     std::to_string(i));
        }
    }
}

void check_tensile_span(const TensileTrace& ten) {
    if (ten.samples.size() < 2 ||
        ten.samples.back().t_s - ten.samples.front().t_s <= 0.0) {
        fail("DegenerateTensileTrace", "tensile trace spans zero time");
    }
}

}  // namespace

SyncedTrace synchronize(const ResistanceTrace& r, const TensileTrace& ten,
                        const TestConfig& cfg) {
    check_tensile_span(ten);
    validate(r);
    validate(ten);
    check_gauge(cfg);

    std::vector<double> tt, disp, force;
    tt.reserve(ten.samples.size());
    disp.reserve(ten.samples.size());
    force.reserve(ten.samples.size());
    for (const auto& s : ten.samples) {
        tt.push_back(s.t_s + cfg.time_offset_s);
        disp.push_back(s.disp_mm);
        force.push_back(s.force_n);
    }

    const double lo = std::max(r.samples.front().t_s, tt.front());
    const double hi = std::min(r.samples.back().t_s, tt.back());
    if (hi - lo < kMinOverlapSeconds) {
        fail("NoOverlap", "traces overlap " + csv::format_double(hi - lo) +
                              " s; need at least 1 s");
    }

    const double r0 = baseline_resistance(r, cfg);

    SyncedTrace out;
    out.r0_ohm = r0;
    out.gauge_length_mm = cfg.gauge_length_mm;
    out.has_force = true;
    out.samples.reserve(r.samples.size());
    for (const auto& s : r.samples) {
        if (s.t_s < lo || s.t_s > hi) continue;
        SyncedSample m;
        m.t_s = s.t_s;
        m.strain = interp_clamped(tt, disp, s.t_s) / cfg.gauge_length_mm;
        m.force_n = interp_clamped(tt, force, s.t_s);
        m.open_circuit = s.open_circuit;
        m.d_r_over_r = s.open_circuit
                           ? std::numeric_limits<double>::infinity()
                           : (s.r_ohm - r0) / r0;
        out.samples.push_back(m);
    }
    if (out.samples.size() < 2) {
        fail("NoOverlap", "fewer than 2 resistance samples inside the overlap");
    }
    check_uniform(out.samples);
    return out;
}

std::vector<StrainSample> strain_only(const TensileTrace& ten,
                                      const TestConfig& cfg) {
    check_tensile_span(ten);
    validate(ten);
    check_gauge(cfg);
    std::vector<StrainSample> out;
    out.reserve(ten.samples.size());
    for (const auto& s : ten.samples) {
        out.push_back({s.t_s, s.disp_mm / cfg.gauge_length_mm});
    }
    return out;
}

SyncedTrace resistance_only(const ResistanceTrace& r, const TestConfig& cfg) {
    validate(r);
    const double r0 = baseline_resistance(r, cfg);
    SyncedTrace out;
    out.r0_ohm = r0;
    out.gauge_length_mm = cfg.gauge_length_mm;
    out.has_force = false;
    out.samples.reserve(r.samples.size());
    for (const auto& s : r.samples) {
        SyncedSample m;
        m.t_s = s.t_s;
        m.strain = 0.0;
        m.force_n = std::numeric_limits<double>::quiet_NaN();
        m.open_circuit = s.open_circuit;
        m.d_r_over_r = s.open_circuit
                           ? std::numeric_limits<double>::infinity()
                           : (s.r_ohm - r0) / r0;
        out.samples.push_back(m);
    }
    check_uniform(out.samples);
    return out;
}

std::string synced_csv(const SyncedTrace& trace) {
    std::string out = "t_s,strain,dR_over_R,force_N\n";
    for (const auto& s : trace.samples) {
        out += csv::format_double(s.t_s);
        out += ',';
        out += csv::format_double(s.strain);
        out += ',';
        out += csv::format_double(s.d_r_over_r);
        out += ',';
        if (trace.has_force && std::isfinite(s.force_n)) {
            out += csv::format_double(s.force_n);
        }
        out += '\n';
    }
    return out;
}

void write_synced_csv(const SyncedTrace& trace,
                      const std::filesystem::path& path) {
    csv::write_text_file(path, synced_csv(trace));
}

}  // namespace stretchmetrics
