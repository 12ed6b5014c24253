#include "stretchmetrics/ingest.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "stretchmetrics/csv.hpp"
#include "stretchmetrics/numeric.hpp"

namespace stretchmetrics {

namespace {

// Data rows are numbered from 1; the header line is not counted.
std::string row_tag(std::size_t line_idx) {
    return "row " + std::to_string(line_idx);
}

void check_header(const std::vector<std::string>& lines, const char* expected,
                  const std::filesystem::path& path) {
    if (lines.empty() || lines.front() != expected) {
        fail("SchemaMismatch", "expected header '" + std::string(expected) +
                                   "' in " + path.string());
    }
}

void check_time(double t, double prev_t, bool first, std::size_t line_idx) {
    if (!first && t <= prev_t) {
        fail("NonMonotonicTime", "timestamps must strictly increase (" +
                                     row_tag(line_idx) + ")");
    }
}

}  // namespace

ResistanceTrace parse_resistance_log(const std::filesystem::path& path) {
    const auto lines = csv::read_lines(path);
    check_header(lines, kResistanceHeader, path);

    ResistanceTrace trace;
    trace.samples.reserve(lines.size() > 0 ? lines.size() - 1 : 0);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto fields = csv::split_fields(lines[i]);
        if (fields.size() != 2) {
            fail("SchemaMismatch", "expected 2 fields (" + row_tag(i) + ")");
        }
        ResistanceSample s;
        if (!csv::parse_double(fields[0], s.t_s)) {
            fail("SchemaMismatch", "bad timestamp (" + row_tag(i) + ")");
        }
        if (fields[1] == kOpenCircuitToken) {
            s.open_circuit = true;
            s.r_ohm = std::numeric_limits<double>::infinity();
        } else if (!csv::parse_double(fields[1], s.r_ohm)) {
            fail("SchemaMismatch", "bad resistance (" + row_tag(i) + ")");
        } else if (s.r_ohm <= 0.0) {
            fail("NonPositiveResistance",
                 "resistance must be > 0 (" + row_tag(i) + ")");
        }
        check_time(s.t_s, trace.samples.empty() ? 0.0 : trace.samples.back().t_s,
                   trace.samples.empty(), i);
        trace.samples.push_back(s);
    }
    if (trace.samples.size() < 2) {
        fail("TooFewSamples", "need at least 2 samples in " + path.string());
    }
    return trace;
}

TensileTrace parse_tensile_log(const std::filesystem::path& path) {
    const auto lines = csv::read_lines(path);
    check_header(lines, kTensileHeader, path);

    TensileTrace trace;
    trace.samples.reserve(lines.size() > 0 ? lines.size() - 1 : 0);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto fields = csv::split_fields(lines[i]);
        if (fields.size() != 3) {
            fail("SchemaMismatch", "expected 3 fields (" + row_tag(i) + ")");
        }
        TensileSample s;
        if (!csv::parse_double(fields[0], s.t_s)) {
            fail("SchemaMismatch", "bad timestamp (" + row_tag(i) + ")");
        }
        if (!csv::parse_double(fields[1], s.disp_mm)) {
            fail("SchemaMismatch", "bad displacement (" + row_tag(i) + ")");
        }
        if (s.disp_mm < 0.0) {
            fail("NegativeDisplacement",
                 "displacement must be >= 0 (" + row_tag(i) + ")");
        }
        if (!csv::parse_double(fields[2], s.force_n)) {
            fail("NonFiniteForce", "bad force (" + row_tag(i) + ")");
        }
        check_time(s.t_s, trace.samples.empty() ? 0.0 : trace.samples.back().t_s,
                   trace.samples.empty(), i);
        trace.samples.push_back(s);
    }
    if (trace.samples.size() < 2) {
        fail("TooFewSamples", "need at least 2 samples in " + path.string());
    }
    return trace;
}

double baseline_resistance(const ResistanceTrace& trace, const TestConfig& cfg) {
    validate(trace);
    if (cfg.baseline_window_s <= 0.0) {
        fail("InvalidParams", "baseline_window_s must be > 0",
             ErrorKind::config);
    }
    const double t0 = trace.samples.front().t_s;
    const double span = trace.samples.back().t_s - t0;
    if (span < cfg.baseline_window_s) {
        fail("WindowTooShort", "trace spans " + csv::format_double(span) +
                                   " s, baseline window needs " +
                                   csv::format_double(cfg.baseline_window_s));
    }
    std::vector<double> window;
    for (const auto& s : trace.samples) {
        if (s.t_s - t0 >= cfg.baseline_window_s) break;
        if (s.open_circuit) continue;  // flagged samples carry no baseline
        window.push_back(s.r_ohm);
    }
    if (window.empty()) {
        fail("WindowTooShort", "no usable samples in the baseline window");
    }
    return median(std::move(window));
}

void validate(const ResistanceTrace& trace) {
    if (trace.samples.size() < 2) {
        fail("TooFewSamples", "resistance trace needs at least 2 samples");
    }
    for (std::size_t i = 0; i < trace.samples.size(); ++i) {
        const auto& s = trace.samples[i];
        if (i > 0 && s.t_s <= trace.samples[i - 1].t_s) {
            fail("NonMonotonicTime", "sample " + std::to_string(i));
        }
        if (!s.open_circuit && (!std::isfinite(s.r_ohm) || s.r_ohm <= 0.0)) {
            fail("NonPositiveResistance", "sample " + std::to_string(i));
        }
    }
}

void validate(const TensileTrace& trace) {
    if (trace.samples.size() < 2) {
        fail("TooFewSamples", "tensile trace needs at least 2 samples");
    }
    for (std::size_t i = 0; i < trace.samples.size(); ++i) {
        const auto& s = trace.samples[i];
        if (i > 0 && s.t_s <= trace.samples[i - 1].t_s) {
            fail("NonMonotonicTime", "sample " + std::to_string(i));
        }
        if (s.disp_mm < 0.0) {
            fail("NegativeDisplacement", "sample " + std::to_string(i));
        }
        if (!std::isfinite(s.force_n)) {
            fail("NonFiniteForce", "sample " + std::to_string(i));
        }
    }
}

std::string resistance_csv(const ResistanceTrace& trace) {
    std::string out(kResistanceHeader);
    out += '\n';
    for (const auto& s : trace.samples) {
        out += csv::format_double(s.t_s);
        out += ',';
        out += s.open_circuit ? kOpenCircuitToken : csv::format_double(s.r_ohm);
        out += '\n';
    }
    return out;
}

std::string tensile_csv(const TensileTrace& trace) {
    std::string out(kTensileHeader);
    out += '\n';
    for (const auto& s : trace.samples) {
        out += csv::format_double(s.t_s);
        out += ',';
        out += csv::format_double(s.disp_mm);
        out += ',';
        out += csv::format_double(s.force_n);
        out += '\n';
    }
    return out;
}

void write_resistance_csv(const ResistanceTrace& trace,
                          const std::filesystem::path& path) {
    csv::write_text_file(path, resistance_csv(trace));
}

void write_tensile_csv(const TensileTrace& trace,
                       const std::filesystem::path& path) {
    csv::write_text_file(path, tensile_csv(trace));
}

}  // namespace stretchmetrics
