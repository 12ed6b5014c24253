#include "stretchmetrics/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>

#include <nlohmann/json.hpp>

#include "stretchmetrics/csv.hpp"

namespace stretchmetrics {

namespace {

constexpr double kForceAtLinearEnd = 15.0;  // N, below the 20 N bound
constexpr double kPostFailForceFrac = 0.05;
constexpr double kFailRampOvershoot = 1.05;

void require(bool ok, const char* field) {
    if (!ok) {
        fail("InvalidParams", std::string("invalid field: ") + field,
             ErrorKind::config);
    }
}

struct Wave {
    std::size_t settle_n = 0;
    std::size_t total = 0;       // sample count
    double samples_per_cycle = 0.0;
    std::size_t spc_int = 0;     // 0 when not integral
    double period_s = 0.0;
};

Wave plan_wave(const SensorParams&, const ProtocolParams& proto) {
    Wave w;
    const double rate_mm_s = proto.crosshead_rate_mm_per_min / 60.0;
    w.period_s = 2.0 * proto.peak_strain * proto.gauge_length_mm / rate_mm_s;
    w.samples_per_cycle = w.period_s * proto.sample_rate_hz;
    const double rounded = std::round(w.samples_per_cycle);
    if (std::abs(w.samples_per_cycle - rounded) < 1e-6 && rounded >= 4.0) {
        w.spc_int = static_cast<std::size_t>(rounded);
    }
    w.settle_n = static_cast<std::size_t>(
        std::ceil(proto.settle_s * proto.sample_rate_hz - 1e-9));
    const double n_wave =
        static_cast<double>(proto.n_cycles) * w.samples_per_cycle;
    w.total = w.settle_n + static_cast<std::size_t>(std::llround(n_wave)) + 1;
    return w;
}

// Cycle index and phase fraction for wave sample j (0-based from the end
// of the dwell). A sample landing exactly on a cycle boundary closes the
// previous cycle, so the trailing valley of cycle k carries cycle k's
// baseline law.
void cycle_phase(std::size_t j, const Wave& w, std::size_t n_cycles,
                 std::size_t& k, double& frac) {
    if (w.spc_int != 0) {
        k = j / w.spc_int;
        std::size_t r = j % w.spc_int;
        if (r == 0 && k > 0) {
            k -= 1;
            r = w.spc_int;
        }
        frac = static_cast<double>(r) / static_cast<double>(w.spc_int);
    } else {
        const double p = static_cast<double>(j) / w.samples_per_cycle;
        double fk = std::floor(p);
        frac = p - fk;
        if (frac == 0.0 && fk > 0.0) {
            fk -= 1.0;
            frac = 1.0;
        }
        k = static_cast<std::size_t>(fk);
    }
    k = std::min(k, n_cycles - 1);
}

}  // namespace

void validate_params(const SensorParams& sensor, const ProtocolParams& proto,
                     bool cyclic) {
    require(sensor.r0_ohm > 0.0, "r0_ohm");
    require(std::isfinite(sensor.gf), "gf");
    require(sensor.delta_max >= 0.0, "delta_max");
    require(std::isfinite(sensor.baseline_drift), "baseline_drift");
    require(std::isfinite(sensor.peak_drift), "peak_drift");
    require(sensor.eps_linear_end > 0.0, "eps_linear_end");
    require(sensor.eps_fail >= sensor.eps_linear_end, "eps_fail");
    require(std::isfinite(sensor.gf_saturated), "gf_saturated");
    require(sensor.noise_sigma >= 0.0, "noise_sigma");
    require(sensor.fail_mode != FailureMode::none, "fail_mode");

    require(proto.peak_strain > 0.0, "peak_strain");
    require(proto.n_cycles >= 1, "n_cycles");
    require(proto.crosshead_rate_mm_per_min > 0.0, "crosshead_rate_mm_per_min");
    require(proto.gauge_length_mm > 0.0, "gauge_length_mm");
    require(proto.sample_rate_hz > 0.0, "sample_rate_hz");
    require(proto.settle_s >= 0.0, "settle_s");
    if (cyclic) {
        require(proto.peak_strain <= sensor.eps_fail, "peak_strain");
    }
}

double midline(const SensorParams& params, double strain) {
    if (strain < 0.0) {
        fail("InvalidParams", "midline needs strain >= 0", ErrorKind::config);
    }
    if (strain <= params.eps_linear_end) return params.gf * strain;
    return params.gf * params.eps_linear_end +
           params.gf_saturated * (strain - params.eps_linear_end);
}

double force_law(const SensorParams& params, double strain) {
    const double x = strain / params.eps_linear_end;
    return kForceAtLinearEnd * (0.5 * x + 0.5 * x * x * x);
}

SimOutput simulate_cyclic(const SensorParams& params,
                          const ProtocolParams& proto) {
    validate_params(params, proto, true);
    const Wave w = plan_wave(params, proto);

    const double m_pk = midline(params, proto.peak_strain);
    const double k_mean = 0.5 * static_cast<double>(proto.n_cycles - 1);
    // Peak-law center chosen so mean_k(A_k) == r0; see header.
    const double peak_center =
        params.r0_ohm * (1.0 + m_pk + params.baseline_drift * k_mean) /
        (1.0 + params.peak_drift * k_mean);

    std::mt19937_64 rng(params.seed);
    std::normal_distribution<double> noise(0.0, 1.0);
    const double sigma = params.noise_sigma * params.r0_ohm;

    SimOutput out;
    out.resistance.samples.reserve(w.total);
    out.tensile.samples.reserve(w.total);
    for (std::size_t i = 0; i < w.total; ++i) {
        const double t = static_cast<double>(i) / proto.sample_rate_hz;
        double strain = 0.0;
        double value = 0.0;  // branch dR/R before drift scaling
        std::size_t k = 0;
        if (i > w.settle_n) {
            double frac = 0.0;
            cycle_phase(i - w.settle_n, w, proto.n_cycles, k, frac);
            double sign;
            if (frac <= 0.5) {
                strain = 2.0 * frac * proto.peak_strain;
                sign = 1.0;
            } else {
                strain = 2.0 * (1.0 - frac) * proto.peak_strain;
                sign = -1.0;
            }
            const double u = strain / proto.peak_strain;
            const double delta = 4.0 * params.delta_max * u * (1.0 - u);
            value = midline(params, strain) + sign * delta;
        }
        const double baseline_k =
            params.r0_ohm * (1.0 + params.baseline_drift * static_cast<double>(k));
        const double peak_k =
            peak_center * (1.0 + params.peak_drift * static_cast<double>(k));
        const double amp_k =
            (m_pk > 0.0) ? (peak_k - baseline_k) / m_pk : params.r0_ohm;
        double r = baseline_k + amp_k * value;
        if (sigma > 0.0) r += sigma * noise(rng);
        r = std::max(r, 1e-9);

        out.resistance.samples.push_back({t, r, false});
        out.tensile.samples.push_back(
            {t, strain * proto.gauge_length_mm, force_law(params, strain)});
    }
    return out;
}

SimOutput simulate_failure(const SensorParams& params,
                           const ProtocolParams& proto) {
    validate_params(params, proto, false);
    const double strain_rate =
        (proto.crosshead_rate_mm_per_min / 60.0) / proto.gauge_length_mm;
    const double eps_end = kFailRampOvershoot * params.eps_fail;
    const std::size_t settle_n = static_cast<std::size_t>(
        std::ceil(proto.settle_s * proto.sample_rate_hz - 1e-9));
    const std::size_t n_ramp = static_cast<std::size_t>(
        std::ceil(eps_end / strain_rate * proto.sample_rate_hz));

    std::mt19937_64 rng(params.seed);
    std::normal_distribution<double> noise(0.0, 1.0);
    const double sigma = params.noise_sigma * params.r0_ohm;

    SimOutput out;
    double force_max = 0.0;
    bool failed = false;
    double held_force = 0.0;
    for (std::size_t i = 0; i <= settle_n + n_ramp; ++i) {
        const double t = static_cast<double>(i) / proto.sample_rate_hz;
        const double strain =
            (i <= settle_n)
                ? 0.0
                : static_cast<double>(i - settle_n) / proto.sample_rate_hz *
                      strain_rate;

        ResistanceSample rs{t, 0.0, false};
        if (params.fail_mode == FailureMode::electrical &&
            strain >= params.eps_fail) {
            rs.open_circuit = true;
            rs.r_ohm = std::numeric_limits<double>::infinity();
        } else {
            rs.r_ohm = params.r0_ohm * (1.0 + midline(params, strain));
            if (sigma > 0.0) rs.r_ohm += sigma * noise(rng);
            rs.r_ohm = std::max(rs.r_ohm, 1e-9);
        }

        double force = force_law(params, strain);
        if (params.fail_mode == FailureMode::mechanical) {
            if (!failed && strain >= params.eps_fail) {
                failed = true;
                held_force = kPostFailForceFrac * force_max;
            }
            if (failed) force = held_force;
        }
        force_max = std::max(force_max, force);

        out.resistance.samples.push_back(rs);
        out.tensile.samples.push_back(
            {t, strain * proto.gauge_length_mm, force});
    }
    return out;
}

ResistanceTrace simulate_motion(const SensorParams& params,
                                const AngleTrace& motion,
                                const AngleModel& model) {
    ProtocolParams defaults;
    validate_params(params, defaults, false);
    require(params.gf != 0.0, "gf");
    require(model.slope != 0.0 && std::isfinite(model.slope), "model.slope");
    if (motion.samples.size() < 2) {
        fail("TooFewSamples", "motion trace needs at least 2 samples");
    }

    std::vector<double> strain(motion.samples.size());
    double eps_ref = 0.0;
    for (std::size_t i = 0; i < motion.samples.size(); ++i) {
        const double x = (motion.samples[i].angle_deg - model.intercept) /
                         model.slope;
        strain[i] = std::max(0.0, x / params.gf);
        eps_ref = std::max(eps_ref, strain[i]);
    }

    std::mt19937_64 rng(params.seed);
    std::normal_distribution<double> noise(0.0, 1.0);
    const double sigma = params.noise_sigma * params.r0_ohm;

    ResistanceTrace out;
    out.samples.reserve(motion.samples.size());
    double sign = 1.0;
    for (std::size_t i = 0; i < motion.samples.size(); ++i) {
        if (i > 0 && strain[i] != strain[i - 1]) {
            sign = (strain[i] > strain[i - 1]) ? 1.0 : -1.0;
        }
        double delta = 0.0;
        if (eps_ref > 0.0 && params.delta_max > 0.0) {
            const double u = std::min(strain[i] / eps_ref, 1.0);
            delta = 4.0 * params.delta_max * u * (1.0 - u);
        }
        double r = params.r0_ohm *
                   (1.0 + midline(params, strain[i]) + sign * delta);
        if (sigma > 0.0) r += sigma * noise(rng);
        out.samples.push_back({motion.samples[i].t_s, std::max(r, 1e-9), false});
    }
    return out;
}

namespace {

nlohmann::json sensor_json(const SensorParams& s) {
    return {
        {"r0_ohm", s.r0_ohm},
        {"gf", s.gf},
        {"delta_max", s.delta_max},
        {"baseline_drift", s.baseline_drift},
        {"peak_drift", s.peak_drift},
        {"eps_linear_end", s.eps_linear_end},
        {"gf_saturated", s.gf_saturated},
        {"eps_fail", s.eps_fail},
        {"fail_mode", to_string(s.fail_mode)},
        {"noise_sigma", s.noise_sigma},
        {"seed", s.seed},
    };
}

nlohmann::json protocol_json(const ProtocolParams& p) {
    return {
        {"peak_strain", p.peak_strain},
        {"n_cycles", p.n_cycles},
        {"crosshead_rate_mm_per_min", p.crosshead_rate_mm_per_min},
        {"gauge_length_mm", p.gauge_length_mm},
        {"sample_rate_hz", p.sample_rate_hz},
        {"settle_s", p.settle_s},
    };
}

FailureMode fail_mode_from_string(const std::string& s) {
    if (s == "mechanical") return FailureMode::mechanical;
    if (s == "electrical") return FailureMode::electrical;
    fail("InvalidParams", "invalid field: fail_mode ('" + s + "')",
         ErrorKind::config);
}

}  // namespace

std::string truth_json(const SensorParams& sensor, const ProtocolParams& proto,
                       const std::string& kind) {
    nlohmann::json j;
    j["kind"] = kind;
    j["sensor"] = sensor_json(sensor);
    j["protocol"] = protocol_json(proto);
    nlohmann::json derived;
    derived["period_s"] = 2.0 * proto.peak_strain * proto.gauge_length_mm /
                          (proto.crosshead_rate_mm_per_min / 60.0);
    derived["midline_at_peak"] = midline(sensor, proto.peak_strain);
    if (proto.peak_strain <= sensor.eps_linear_end) {
        derived["hysteresis_pct"] = closed_form_hysteresis_pct(
            sensor.gf, sensor.delta_max, proto.peak_strain);
    }
    derived["baseline_drift_pct_per_cycle"] = 100.0 * sensor.baseline_drift;
    derived["peak_drift_pct_per_cycle"] = 100.0 * sensor.peak_drift;
    derived["force_at_linear_end_n"] = force_law(sensor, sensor.eps_linear_end);
    j["derived"] = derived;
    return j.dump(2) + "\n";
}

void write_truth_json(const SensorParams& sensor, const ProtocolParams& proto,
                      const std::string& kind,
                      const std::filesystem::path& path) {
    csv::write_text_file(path, truth_json(sensor, proto, kind));
}

void params_from_json_file(const std::filesystem::path& path,
                           SensorParams& sensor, ProtocolParams& proto,
                           std::string* motion_csv, AngleModel* motion_model) {
    std::ifstream in(path);
    if (!in) fail("FileMissing", "cannot open " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        fail("InvalidParams", "bad params JSON: " + std::string(e.what()),
             ErrorKind::config);
    }

    try {
        if (j.contains("sensor")) {
            const auto& s = j.at("sensor");
            sensor.r0_ohm = s.value("r0_ohm", sensor.r0_ohm);
            sensor.gf = s.value("gf", sensor.gf);
            sensor.delta_max = s.value("delta_max", sensor.delta_max);
            sensor.baseline_drift =
                s.value("baseline_drift", sensor.baseline_drift);
            sensor.peak_drift = s.value("peak_drift", sensor.peak_drift);
            sensor.eps_linear_end =
                s.value("eps_linear_end", sensor.eps_linear_end);
            sensor.gf_saturated = s.value("gf_saturated", sensor.gf_saturated);
            sensor.eps_fail = s.value("eps_fail", sensor.eps_fail);
            sensor.noise_sigma = s.value("noise_sigma", sensor.noise_sigma);
            sensor.seed = s.value("seed", sensor.seed);
            if (s.contains("fail_mode")) {
                sensor.fail_mode =
                    fail_mode_from_string(s.at("fail_mode").get<std::string>());
            }
        }
        if (j.contains("protocol")) {
            const auto& p = j.at("protocol");
            proto.peak_strain = p.value("peak_strain", proto.peak_strain);
            proto.n_cycles = p.value("n_cycles", proto.n_cycles);
            proto.crosshead_rate_mm_per_min = p.value(
                "crosshead_rate_mm_per_min", proto.crosshead_rate_mm_per_min);
            proto.gauge_length_mm =
                p.value("gauge_length_mm", proto.gauge_length_mm);
            proto.sample_rate_hz =
                p.value("sample_rate_hz", proto.sample_rate_hz);
            proto.settle_s = p.value("settle_s", proto.settle_s);
        }
        if (j.contains("sensor") &&
            j.at("sensor").contains("hysteresis_pct_target")) {
            const double target =
                j.at("sensor").at("hysteresis_pct_target").get<double>();
            sensor.delta_max = delta_max_for_hysteresis(target, sensor.gf,
                                                        proto.peak_strain);
        }
        if (j.contains("motion")) {
            const auto& m = j.at("motion");
            if (motion_csv) *motion_csv = m.value("csv", std::string{});
            if (motion_model && m.contains("model")) {
                motion_model->slope = m.at("model").value("slope", 0.0);
                motion_model->intercept = m.at("model").value("intercept", 0.0);
                motion_model->fit_r2 = 1.0;
            }
        }
    } catch (const nlohmann::json::exception& e) {
        fail("InvalidParams", "bad params JSON: " + std::string(e.what()),
             ErrorKind::config);
    }
}

}  // namespace stretchmetrics
