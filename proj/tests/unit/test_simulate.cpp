#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "stretchmetrics/calibration.hpp"
#include "stretchmetrics/cycles.hpp"
#include "stretchmetrics/ingest.hpp"
#include "stretchmetrics/metrics.hpp"
#include "stretchmetrics/numeric.hpp"
#include "stretchmetrics/simulate.hpp"
#include "stretchmetrics/sync.hpp"

using namespace stretchmetrics;
using testutil::error_name;

namespace {

SyncedTrace run_sync(const SimOutput& sim) {
    TestConfig cfg;
    return synchronize(sim.resistance, sim.tensile, cfg);
}

}  // namespace

TEST_CASE("midline is piecewise linear and continuous at the knee") {
    SensorParams p;
    CHECK(midline(p, 0.0) == 0.0);
    CHECK(midline(p, 0.5) == doctest::Approx(15.71).epsilon(1e-12));
    CHECK(midline(p, 0.7) == doctest::Approx(18.652).epsilon(1e-12));
    CHECK(midline(p, 0.6) ==
          doctest::Approx(midline(p, 0.6 - 1e-12)).epsilon(1e-9));
}

TEST_CASE("identical seeds give bit-identical traces") {
    SensorParams p;
    p.noise_sigma = 0.002;
    ProtocolParams proto;
    proto.n_cycles = 2;
    const SimOutput a = simulate_cyclic(p, proto);
    const SimOutput b = simulate_cyclic(p, proto);
    REQUIRE(a.resistance.samples.size() == b.resistance.samples.size());
    for (std::size_t i = 0; i < a.resistance.samples.size(); ++i) {
        CHECK(a.resistance.samples[i].r_ohm == b.resistance.samples[i].r_ohm);
    }
    CHECK(resistance_csv(a.resistance) == resistance_csv(b.resistance));

    p.seed += 1;
    const SimOutput c = simulate_cyclic(p, proto);
    CHECK(resistance_csv(a.resistance) != resistance_csv(c.resistance));
}

TEST_CASE("the triangular wave has the documented period") {
    SensorParams p;
    ProtocolParams proto;
    proto.n_cycles = 3;
    const SimOutput sim = simulate_cyclic(p, proto);
    // 2 * 0.5 * 100 mm / (60 mm/min) = 100 s per cycle + 2 s settle
    const double expected_duration = proto.settle_s + 3.0 * 100.0;
    CHECK(sim.tensile.samples.back().t_s ==
          doctest::Approx(expected_duration).epsilon(1e-9));
    // displacement peaks at peak_strain * gauge
    double max_disp = 0.0;
    for (const auto& s : sim.tensile.samples) {
        max_disp = std::max(max_disp, s.disp_mm);
    }
    CHECK(max_disp == doctest::Approx(50.0).epsilon(1e-12));
}

TEST_CASE("noiseless drift-free loops separate by exactly 2 delta") {
    SensorParams p;
    p.baseline_drift = 0.0;
    p.peak_drift = 0.0;
    ProtocolParams proto;
    proto.n_cycles = 2;
    const SimOutput sim = simulate_cyclic(p, proto);
    const SyncedTrace trace = run_sync(sim);
    const auto cycles = segment_cycles(trace);
    REQUIRE(cycles.size() == 2);
    for (const auto& c : cycles) {
        const Branches b = split_branches(trace, c);
        for (std::size_t i = 0; i < b.loading.strain.size(); ++i) {
            const double e = b.loading.strain[i];
            const double u = e / proto.peak_strain;
            const double expect = 8.0 * p.delta_max * u * (1.0 - u);
            const double gap =
                b.loading.d_r_over_r[i] -
                interp_clamped(b.unloading.strain, b.unloading.d_r_over_r, e);
            CHECK(gap == doctest::Approx(expect).epsilon(1e-9));
        }
    }
}

TEST_CASE("noiseless defaults round-trip the programmed metrics") {
    SensorParams p;  // reference defaults, zero noise
    ProtocolParams proto;
    proto.n_cycles = 10;  // keep the unit suite fast; acceptance runs 80
    const SimOutput sim = simulate_cyclic(p, proto);
    const SyncedTrace trace = run_sync(sim);
    const auto cycles = segment_cycles(trace);
    REQUIRE(cycles.size() == 10);
    const auto mc = midpoint_curve(trace, cycles, 100);
    const auto extrema = per_cycle_extrema(trace, cycles);
    const MetricsReport report = build_report(mc, trace, cycles, extrema);

    CHECK(report.gauge_factor == doctest::Approx(31.42).epsilon(0.01));
    CHECK(report.linearity_r2 >= 0.99);
    CHECK(report.hysteresis_pct == doctest::Approx(22.9).epsilon(0.5 / 22.9));
    CHECK(report.baseline_drift_pct_per_cycle ==
          doctest::Approx(0.135).epsilon(0.02));
    CHECK(report.peak_drift_pct_per_cycle ==
          doctest::Approx(0.236).epsilon(0.02));

    // the programmed laws are exact at the extrema level
    for (std::size_t k = 0; k < extrema.size(); ++k) {
        const double law = p.r0_ohm * (1.0 + p.baseline_drift * k);
        CHECK(std::abs(extrema[k].baseline_r - law) / law < 1e-12);
    }
}

TEST_CASE("10 Hz trapezoid hysteresis sits on the closed form") {
    SensorParams p;
    p.baseline_drift = 0.0;
    p.peak_drift = 0.0;
    ProtocolParams proto;
    proto.n_cycles = 3;
    const SimOutput sim = simulate_cyclic(p, proto);
    const SyncedTrace trace = run_sync(sim);
    const double h = hysteresis_percent(trace, segment_cycles(trace));
    CHECK(std::abs(h - closed_form_hysteresis_pct(p.gf, p.delta_max,
                                                  proto.peak_strain)) < 0.05);
}

TEST_CASE("build_report is bit-deterministic") {
    SensorParams p;
    ProtocolParams proto;
    proto.n_cycles = 4;
    const SimOutput sim = simulate_cyclic(p, proto);
    const SyncedTrace trace = run_sync(sim);
    const auto cycles = segment_cycles(trace);
    const auto mc = midpoint_curve(trace, cycles, 100);
    const auto extrema = per_cycle_extrema(trace, cycles);
    const MetricsReport a = build_report(mc, trace, cycles, extrema);
    const MetricsReport b = build_report(mc, trace, cycles, extrema);
    CHECK(a.gauge_factor == b.gauge_factor);
    CHECK(a.linearity_r2 == b.linearity_r2);
    CHECK(a.hysteresis_pct == b.hysteresis_pct);
    CHECK(a.baseline_drift_pct_per_cycle == b.baseline_drift_pct_per_cycle);
    CHECK(a.peak_drift_pct_per_cycle == b.peak_drift_pct_per_cycle);
}

TEST_CASE("baseline law is exact over the full 80-cycle protocol") {
    SensorParams p;
    ProtocolParams proto;  // n_cycles = 80
    const SimOutput sim = simulate_cyclic(p, proto);
    const SyncedTrace trace = run_sync(sim);
    const auto cycles = segment_cycles(trace);
    REQUIRE(cycles.size() == 80);
    const auto extrema = per_cycle_extrema(trace, cycles);
    const double peak_center_0 = extrema[0].peak_r;
    for (std::size_t k = 0; k < extrema.size(); ++k) {
        const double law = p.r0_ohm * (1.0 + p.baseline_drift *
                                                 static_cast<double>(k));
        CHECK(std::abs(extrema[k].baseline_r - law) / law < 1e-12);
        const double peak_law =
            peak_center_0 * (1.0 + p.peak_drift * static_cast<double>(k));
        CHECK(std::abs(extrema[k].peak_r - peak_law) / peak_law < 1e-12);
    }
}

TEST_CASE("drift-free peaks are constant across cycles") {
    SensorParams p;
    p.baseline_drift = 0.0;
    p.peak_drift = 0.0;
    ProtocolParams proto;
    proto.n_cycles = 4;
    const SimOutput sim = simulate_cyclic(p, proto);
    const SyncedTrace trace = run_sync(sim);
    const auto cycles = segment_cycles(trace);
    const auto extrema = per_cycle_extrema(trace, cycles);
    for (const auto& e : extrema) {
        CHECK(e.peak_r == doctest::Approx(extrema[0].peak_r).epsilon(1e-12));
        CHECK(e.baseline_r == doctest::Approx(p.r0_ohm).epsilon(1e-12));
    }
}

TEST_CASE("simulate_failure produces the two failure signatures") {
    SensorParams p;
    ProtocolParams proto;

    const SimOutput mech = simulate_failure(p, proto);
    const SyncedTrace mech_trace = run_sync(mech);
    const FailureReport mech_report = failure_analysis(mech_trace);
    CHECK(mech_report.failure_mode == FailureMode::mechanical);
    CHECK(mech_report.failure_strain == doctest::Approx(1.20).epsilon(1e-3));

    p.fail_mode = FailureMode::electrical;
    const SimOutput elec = simulate_failure(p, proto);
    const SyncedTrace elec_trace = run_sync(elec);
    const FailureReport elec_report = failure_analysis(elec_trace);
    CHECK(elec_report.failure_mode == FailureMode::electrical);
    CHECK(elec_report.failure_strain == doctest::Approx(1.20).epsilon(1e-3));

    // force stays gentle inside the linear range by construction
    for (const auto& s : mech.tensile.samples) {
        if (s.disp_mm <= 0.6 * proto.gauge_length_mm) {
            CHECK(s.force_n < 20.0);
        }
    }
}

namespace {

// Flexion profile with a relaxed lead-in: the first 2 s sit at the model
// intercept (zero strain) so baseline estimation sees a quiet sensor.
AngleTrace motion_profile(double rest_angle, double peak_angle,
                          std::size_t n = 400) {
    AngleTrace motion;
    for (std::size_t i = 0; i <= n; ++i) {
        const double t = 0.1 * static_cast<double>(i);
        double angle = rest_angle;
        if (t > 2.0) {
            angle = rest_angle + (peak_angle - rest_angle) * 0.5 *
                                     (1.0 - std::cos(0.3 * (t - 2.0)));
        }
        motion.samples.push_back({t, angle, false});
    }
    return motion;
}

}  // namespace

TEST_CASE("simulate_motion supports the calibration round trip") {
    SensorParams p;
    p.delta_max = 0.0;  // noiseless, loop-free: exact round trip
    const AngleModel model{6.0, 10.0, 1.0};

    // peak at strain 0.45, inside the linear range
    const AngleTrace motion =
        motion_profile(10.0, 10.0 + 6.0 * midline(p, 0.45));
    const ResistanceTrace r = simulate_motion(p, motion, model);

    TestConfig cfg;
    const SyncedTrace trace = resistance_only(r, cfg);
    const AngleTrace est = estimate_angles(model, trace);
    for (std::size_t i = 0; i < motion.samples.size(); ++i) {
        CHECK(est.samples[i].angle_deg ==
              doctest::Approx(motion.samples[i].angle_deg).epsilon(1e-6));
    }
    const MapeScore score = mape(est, motion, 5.0);
    CHECK(score.mape_pct < 1.0);

    // constant angle gives constant resistance
    AngleTrace flat;
    for (int i = 0; i < 50; ++i) flat.samples.push_back({0.1 * i, 42.0, false});
    const ResistanceTrace rc = simulate_motion(p, flat, model);
    for (const auto& s : rc.samples) {
        CHECK(s.r_ohm == doctest::Approx(rc.samples[0].r_ohm).epsilon(1e-12));
    }
}

TEST_CASE("error grows once motion leaves the linear range") {
    SensorParams p;
    p.delta_max = 0.0;
    const AngleModel model{6.0, 10.0, 1.0};
    TestConfig cfg;

    const auto mape_at_peak = [&](double peak_strain) {
        const double peak_angle = 10.0 + 6.0 * p.gf * peak_strain;
        const AngleTrace motion = motion_profile(10.0, peak_angle);
        const ResistanceTrace r = simulate_motion(p, motion, model);
        const AngleTrace est = estimate_angles(model, resistance_only(r, cfg));
        return mape(est, motion, 5.0).mape_pct;
    };

    const double a1 = mape_at_peak(0.5);  // fully linear
    const double a2 = mape_at_peak(0.7);
    const double a3 = mape_at_peak(0.9);
    CHECK(a1 < a2);
    CHECK(a2 < a3);
}

TEST_CASE("invalid parameters name the offending field") {
    SensorParams p;
    ProtocolParams proto;
    p.eps_linear_end = 1.5;  // beyond eps_fail = 1.2
    try {
        simulate_failure(p, proto);
        FAIL("expected InvalidParams");
    } catch (const ToolkitError& e) {
        CHECK(e.name() == "InvalidParams");
        CHECK(e.kind() == ErrorKind::config);
        CHECK(std::string(e.what()).find("eps_fail") != std::string::npos);
    }

    SensorParams neg;
    neg.noise_sigma = -0.1;
    CHECK(error_name([&] { simulate_cyclic(neg, proto); }) == "InvalidParams");

    ProtocolParams wild;
    wild.peak_strain = 2.0;  // cyclic run beyond eps_fail
    CHECK(error_name([&] { simulate_cyclic(SensorParams{}, wild); }) ==
          "InvalidParams");
}

TEST_CASE("truth sidecar carries the closed-form targets") {
    SensorParams p;
    ProtocolParams proto;
    const std::string j = truth_json(p, proto, "cyclic");
    CHECK(j.find("\"hysteresis_pct\"") != std::string::npos);
    CHECK(j.find("\"period_s\": 100.0") != std::string::npos);
    CHECK(j.find("\"kind\": \"cyclic\"") != std::string::npos);
}
