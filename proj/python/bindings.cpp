#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "stretchmetrics/calibration.hpp"
#include "stretchmetrics/cycles.hpp"
#include "stretchmetrics/ingest.hpp"
#include "stretchmetrics/metrics.hpp"
#include "stretchmetrics/simulate.hpp"
#include "stretchmetrics/sync.hpp"

namespace py = pybind11;
using namespace stretchmetrics;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Resistive stretch-sensor characterization toolkit";

    py::register_exception<ToolkitError>(m, "ToolkitError");

    py::class_<ResistanceSample>(m, "ResistanceSample")
        .def(py::init<>())
        .def(py::init<double, double, bool>(), py::arg("t_s"),
             py::arg("r_ohm"), py::arg("open_circuit") = false)
        .def_readwrite("t_s", &ResistanceSample::t_s)
        .def_readwrite("r_ohm", &ResistanceSample::r_ohm)
        .def_readwrite("open_circuit", &ResistanceSample::open_circuit);

    py::class_<ResistanceTrace>(m, "ResistanceTrace")
        .def(py::init<>())
        .def_readwrite("samples", &ResistanceTrace::samples)
        .def("__len__",
             [](const ResistanceTrace& t) { return t.samples.size(); });

    py::class_<TensileSample>(m, "TensileSample")
        .def(py::init<>())
        .def(py::init<double, double, double>(), py::arg("t_s"),
             py::arg("disp_mm"), py::arg("force_n"))
        .def_readwrite("t_s", &TensileSample::t_s)
        .def_readwrite("disp_mm", &TensileSample::disp_mm)
        .def_readwrite("force_n", &TensileSample::force_n);

    py::class_<TensileTrace>(m, "TensileTrace")
        .def(py::init<>())
        .def_readwrite("samples", &TensileTrace::samples)
        .def("__len__", [](const TensileTrace& t) { return t.samples.size(); });

    py::class_<TestConfig>(m, "TestConfig")
        .def(py::init<>())
        .def_readwrite("gauge_length_mm", &TestConfig::gauge_length_mm)
        .def_readwrite("baseline_window_s", &TestConfig::baseline_window_s)
        .def_readwrite("sample_rate_hint_hz", &TestConfig::sample_rate_hint_hz)
        .def_readwrite("time_offset_s", &TestConfig::time_offset_s);

    py::class_<SyncedSample>(m, "SyncedSample")
        .def(py::init<>())
        .def_readwrite("t_s", &SyncedSample::t_s)
        .def_readwrite("strain", &SyncedSample::strain)
        .def_readwrite("d_r_over_r", &SyncedSample::d_r_over_r)
        .def_readwrite("force_n", &SyncedSample::force_n)
        .def_readwrite("open_circuit", &SyncedSample::open_circuit);

    py::class_<SyncedTrace>(m, "SyncedTrace")
        .def(py::init<>())
        .def_readwrite("samples", &SyncedTrace::samples)
        .def_readwrite("r0_ohm", &SyncedTrace::r0_ohm)
        .def_readwrite("gauge_length_mm", &SyncedTrace::gauge_length_mm)
        .def_readwrite("has_force", &SyncedTrace::has_force)
        .def("__len__", [](const SyncedTrace& t) { return t.samples.size(); });

    py::class_<StrainSample>(m, "StrainSample")
        .def_readwrite("t_s", &StrainSample::t_s)
        .def_readwrite("strain", &StrainSample::strain);

    py::class_<Cycle>(m, "Cycle")
        .def(py::init<>())
        .def_readwrite("start_idx", &Cycle::start_idx)
        .def_readwrite("peak_idx", &Cycle::peak_idx)
        .def_readwrite("end_idx", &Cycle::end_idx);

    py::class_<MidpointCurve>(m, "MidpointCurve")
        .def(py::init<>())
        .def_readwrite("strain_grid", &MidpointCurve::strain_grid)
        .def_readwrite("mean_mid", &MidpointCurve::mean_mid)
        .def_readwrite("std_mid", &MidpointCurve::std_mid)
        .def_readwrite("n_cycles", &MidpointCurve::n_cycles);

    py::class_<CycleExtrema>(m, "CycleExtrema")
        .def(py::init<>())
        .def(py::init([](double baseline_r, double peak_r) {
                 return CycleExtrema{baseline_r, peak_r};
             }),
             py::arg("baseline_r"), py::arg("peak_r"))
        .def_readwrite("baseline_r", &CycleExtrema::baseline_r)
        .def_readwrite("peak_r", &CycleExtrema::peak_r);

    py::enum_<FailureMode>(m, "FailureMode")
        .value("mechanical", FailureMode::mechanical)
        .value("electrical", FailureMode::electrical)
        .value("none", FailureMode::none);

    py::class_<MetricsReport>(m, "MetricsReport")
        .def_readwrite("gauge_factor", &MetricsReport::gauge_factor)
        .def_readwrite("linearity_r2", &MetricsReport::linearity_r2)
        .def_readwrite("hysteresis_pct", &MetricsReport::hysteresis_pct)
        .def_readwrite("baseline_drift_pct_per_cycle",
                       &MetricsReport::baseline_drift_pct_per_cycle)
        .def_readwrite("peak_drift_pct_per_cycle",
                       &MetricsReport::peak_drift_pct_per_cycle)
        .def_readwrite("n_cycles", &MetricsReport::n_cycles);

    py::class_<FailureReport>(m, "FailureReport")
        .def_readwrite("failure_strain", &FailureReport::failure_strain)
        .def_readwrite("failure_mode", &FailureReport::failure_mode)
        .def_readwrite("linear_range_end", &FailureReport::linear_range_end)
        .def_readwrite("max_force_in_linear_range",
                       &FailureReport::max_force_in_linear_range);

    py::class_<AngleModel>(m, "AngleModel")
        .def(py::init<>())
        .def(py::init([](double slope, double intercept, double fit_r2) {
                 return AngleModel{slope, intercept, fit_r2};
             }),
             py::arg("slope"), py::arg("intercept"), py::arg("fit_r2") = 1.0)
        .def_readwrite("slope", &AngleModel::slope)
        .def_readwrite("intercept", &AngleModel::intercept)
        .def_readwrite("fit_r2", &AngleModel::fit_r2);

    py::class_<AngleSample>(m, "AngleSample")
        .def(py::init<>())
        .def(py::init([](double t_s, double angle_deg, bool clamped) {
                 return AngleSample{t_s, angle_deg, clamped};
             }),
             py::arg("t_s"), py::arg("angle_deg"), py::arg("clamped") = false)
        .def_readwrite("t_s", &AngleSample::t_s)
        .def_readwrite("angle_deg", &AngleSample::angle_deg)
        .def_readwrite("clamped", &AngleSample::clamped);

    py::class_<AngleTrace>(m, "AngleTrace")
        .def(py::init<>())
        .def_readwrite("samples", &AngleTrace::samples)
        .def("__len__", [](const AngleTrace& t) { return t.samples.size(); });

    py::class_<MapeScore>(m, "MapeScore")
        .def_readwrite("mape_pct", &MapeScore::mape_pct)
        .def_readwrite("n_scored", &MapeScore::n_scored)
        .def_readwrite("min_angle_deg", &MapeScore::min_angle_deg);

    py::class_<GaugeFit>(m, "GaugeFit")
        .def_readwrite("gauge_factor", &GaugeFit::gauge_factor)
        .def_readwrite("r2", &GaugeFit::r2);

    py::class_<DriftRates>(m, "DriftRates")
        .def_readwrite("baseline_pct_per_cycle",
                       &DriftRates::baseline_pct_per_cycle)
        .def_readwrite("peak_pct_per_cycle", &DriftRates::peak_pct_per_cycle);

    py::class_<SegmentationParams>(m, "SegmentationParams")
        .def(py::init<>())
        .def_readwrite("prominence_frac", &SegmentationParams::prominence_frac)
        .def_readwrite("min_separation_frac",
                       &SegmentationParams::min_separation_frac)
        .def_readwrite("valley_tol_frac", &SegmentationParams::valley_tol_frac);

    py::class_<FailureParams>(m, "FailureParams")
        .def(py::init<>())
        .def_readwrite("force_drop_frac", &FailureParams::force_drop_frac)
        .def_readwrite("force_floor_n", &FailureParams::force_floor_n)
        .def_readwrite("open_ratio", &FailureParams::open_ratio)
        .def_readwrite("r2_floor", &FailureParams::r2_floor)
        .def_readwrite("linear_range_start", &FailureParams::linear_range_start)
        .def_readwrite("linear_range_step", &FailureParams::linear_range_step);

    py::class_<SensorParams>(m, "SensorParams")
        .def(py::init<>())
        .def_readwrite("r0_ohm", &SensorParams::r0_ohm)
        .def_readwrite("gf", &SensorParams::gf)
        .def_readwrite("delta_max", &SensorParams::delta_max)
        .def_readwrite("baseline_drift", &SensorParams::baseline_drift)
        .def_readwrite("peak_drift", &SensorParams::peak_drift)
        .def_readwrite("eps_linear_end", &SensorParams::eps_linear_end)
        .def_readwrite("gf_saturated", &SensorParams::gf_saturated)
        .def_readwrite("eps_fail", &SensorParams::eps_fail)
        .def_readwrite("fail_mode", &SensorParams::fail_mode)
        .def_readwrite("noise_sigma", &SensorParams::noise_sigma)
        .def_readwrite("seed", &SensorParams::seed);

    py::class_<ProtocolParams>(m, "ProtocolParams")
        .def(py::init<>())
        .def_readwrite("peak_strain", &ProtocolParams::peak_strain)
        .def_readwrite("n_cycles", &ProtocolParams::n_cycles)
        .def_readwrite("crosshead_rate_mm_per_min",
                       &ProtocolParams::crosshead_rate_mm_per_min)
        .def_readwrite("gauge_length_mm", &ProtocolParams::gauge_length_mm)
        .def_readwrite("sample_rate_hz", &ProtocolParams::sample_rate_hz)
        .def_readwrite("settle_s", &ProtocolParams::settle_s);

    py::class_<SimOutput>(m, "SimOutput")
        .def_readwrite("resistance", &SimOutput::resistance)
        .def_readwrite("tensile", &SimOutput::tensile);

    // ingest
    m.def("parse_resistance_log", &parse_resistance_log, py::arg("path"));
    m.def("parse_tensile_log", &parse_tensile_log, py::arg("path"));
    m.def("baseline_resistance", &baseline_resistance, py::arg("trace"),
          py::arg("cfg"));
    m.def("write_resistance_csv", &write_resistance_csv, py::arg("trace"),
          py::arg("path"));
    m.def("write_tensile_csv", &write_tensile_csv, py::arg("trace"),
          py::arg("path"));

    // sync
    m.def("synchronize", &synchronize, py::arg("resistance"),
          py::arg("tensile"), py::arg("cfg") = TestConfig{});
    m.def("strain_only", &strain_only, py::arg("tensile"),
          py::arg("cfg") = TestConfig{});
    m.def("resistance_only", &resistance_only, py::arg("resistance"),
          py::arg("cfg") = TestConfig{});
    m.def("write_synced_csv", &write_synced_csv, py::arg("trace"),
          py::arg("path"));

    // cycles
    m.def("segment_cycles", &segment_cycles, py::arg("trace"),
          py::arg("params") = SegmentationParams{});
    m.def("midpoint_curve", &midpoint_curve, py::arg("trace"),
          py::arg("cycles"), py::arg("n_bins") = 100);
    m.def("per_cycle_extrema", &per_cycle_extrema, py::arg("trace"),
          py::arg("cycles"));

    // metrics
    m.def("gauge_factor_and_linearity", &gauge_factor_and_linearity,
          py::arg("midpoint"), py::arg("through_origin") = false);
    m.def("hysteresis_percent", &hysteresis_percent, py::arg("trace"),
          py::arg("cycles"));
    m.def("drift_rates", &drift_rates, py::arg("extrema"));
    m.def("failure_analysis", &failure_analysis, py::arg("trace"),
          py::arg("params") = FailureParams{});
    m.def("build_report", &build_report, py::arg("midpoint"), py::arg("trace"),
          py::arg("cycles"), py::arg("extrema"));

    // calibration
    m.def("fit_angle_model", &fit_angle_model, py::arg("points"));
    m.def("estimate_angles", &estimate_angles, py::arg("model"),
          py::arg("trace"));
    m.def("mape", &mape, py::arg("estimated"), py::arg("truth"),
          py::arg("min_angle_deg") = 5.0);

    // simulator
    m.def("delta_max_for_hysteresis", &delta_max_for_hysteresis,
          py::arg("h_pct"), py::arg("gf"), py::arg("peak_strain"));
    m.def("closed_form_hysteresis_pct", &closed_form_hysteresis_pct,
          py::arg("gf"), py::arg("delta_max"), py::arg("peak_strain"));
    m.def("midline", &midline, py::arg("params"), py::arg("strain"));
    m.def("force_law", &force_law, py::arg("params"), py::arg("strain"));
    m.def("simulate_cyclic", &simulate_cyclic, py::arg("sensor"),
          py::arg("protocol") = ProtocolParams{});
    m.def("simulate_failure", &simulate_failure, py::arg("sensor"),
          py::arg("protocol") = ProtocolParams{});
    m.def("simulate_motion", &simulate_motion, py::arg("sensor"),
          py::arg("motion"), py::arg("model"));

#ifdef STRETCHMETRICS_VERSION
    m.attr("__version__") = STRETCHMETRICS_VERSION;
#else
    m.attr("__version__") = "dev";
#endif
}
