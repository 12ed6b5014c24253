#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "stretchmetrics/calibration.hpp"
#include "stretchmetrics/config.hpp"
#include "stretchmetrics/csv.hpp"
#include "stretchmetrics/cycles.hpp"
#include "stretchmetrics/ingest.hpp"
#include "stretchmetrics/metrics.hpp"
#include "stretchmetrics/numeric.hpp"
#include "stretchmetrics/simulate.hpp"
#include "stretchmetrics/svg.hpp"
#include "stretchmetrics/sync.hpp"

namespace sm = stretchmetrics;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CommonOpts {
    std::string config_path;
    std::vector<std::string> overrides;
    std::string out_dir = ".";
};

sm::RunConfig resolve_config(const CommonOpts& opts) {
    sm::RunConfig cfg;
    if (!opts.config_path.empty()) {
        cfg = sm::load_config(opts.config_path);
    }
    for (const auto& kv : opts.overrides) {
        sm::apply_override(cfg, kv);
    }
    return cfg;
}

fs::path ensure_out_dir(const std::string& dir) {
    fs::path p(dir);
    std::error_code ec;
    fs::create_directories(p, ec);
    if (ec || !fs::is_directory(p)) {
        sm::fail("InvalidParams", "output directory not writable: " + dir,
                 sm::ErrorKind::config);
    }
    return p;
}

void apply_seed_env(sm::SensorParams& sensor) {
    const char* env = std::getenv("STRETCHMETRICS_SEED");
    if (!env) return;
    char* end = nullptr;
    const unsigned long long seed = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0') {
        sm::fail("InvalidParams", "STRETCHMETRICS_SEED is not an integer",
                 sm::ErrorKind::config);
    }
    sensor.seed = seed;
}

// -- simulate ---------------------------------------------------------------

int cmd_simulate(const std::string& kind, const std::string& params_path,
                 const CommonOpts& opts) {
    sm::SensorParams sensor;
    sm::ProtocolParams proto;
    std::string motion_csv;
    sm::AngleModel motion_model{200.0, 10.0, 1.0};
    if (!params_path.empty()) {
        sm::params_from_json_file(params_path, sensor, proto, &motion_csv,
                                  &motion_model);
    }
    apply_seed_env(sensor);
    const fs::path out = ensure_out_dir(opts.out_dir);

    if (kind == "cyclic") {
        const sm::SimOutput sim = sm::simulate_cyclic(sensor, proto);
        sm::write_resistance_csv(sim.resistance, out / "cyclic_resistance.csv");
        sm::write_tensile_csv(sim.tensile, out / "cyclic_tensile.csv");
        sm::write_truth_json(sensor, proto, "cyclic", out / "cyclic_truth.json");
    } else if (kind == "failure") {
        const sm::SimOutput sim = sm::simulate_failure(sensor, proto);
        sm::write_resistance_csv(sim.resistance, out / "failure_resistance.csv");
        sm::write_tensile_csv(sim.tensile, out / "failure_tensile.csv");
        sm::write_truth_json(sensor, proto, "failure",
                             out / "failure_truth.json");
    } else {  // motion
        if (motion_csv.empty()) {
            sm::fail("InvalidParams",
                     "motion simulation needs params JSON with motion.csv",
                     sm::ErrorKind::config);
        }
        const sm::AngleTrace motion = sm::parse_angle_trace(motion_csv);
        const sm::ResistanceTrace r =
            sm::simulate_motion(sensor, motion, motion_model);
        sm::write_resistance_csv(r, out / "motion_resistance.csv");
        sm::write_truth_json(sensor, proto, "motion", out / "motion_truth.json");
    }
    return 0;
}

// -- analyze ----------------------------------------------------------------

void write_cyclic_plots(const fs::path& out, const sm::SyncedTrace& trace,
                        const std::vector<sm::Cycle>& cycles,
                        const sm::MidpointCurve& mc, const sm::GaugeFit& gauge) {
    sm::svg::Chart loop_chart;
    loop_chart.title = "Cyclic response: hysteresis loop and midpoint";
    loop_chart.x_label = "strain";
    loop_chart.y_label = "dR/R";
    sm::svg::Band band;
    band.x = mc.strain_grid;
    band.lower.resize(mc.strain_grid.size());
    band.upper.resize(mc.strain_grid.size());
    for (std::size_t i = 0; i < mc.strain_grid.size(); ++i) {
        band.lower[i] = mc.mean_mid[i] - mc.std_mid[i];
        band.upper[i] = mc.mean_mid[i] + mc.std_mid[i];
    }
    loop_chart.bands.push_back(band);

    // across-cycle mean of each branch: the average loop
    sm::svg::Series load, unload;
    load.x = mc.strain_grid;
    unload.x = mc.strain_grid;
    load.y.assign(mc.strain_grid.size(), 0.0);
    unload.y.assign(mc.strain_grid.size(), 0.0);
    for (const auto& c : cycles) {
        const sm::Branches b = sm::split_branches(trace, c);
        for (std::size_t g = 0; g < mc.strain_grid.size(); ++g) {
            load.y[g] += sm::interp_clamped(b.loading.strain,
                                            b.loading.d_r_over_r,
                                            mc.strain_grid[g]);
            unload.y[g] += sm::interp_clamped(b.unloading.strain,
                                              b.unloading.d_r_over_r,
                                              mc.strain_grid[g]);
        }
    }
    for (std::size_t g = 0; g < mc.strain_grid.size(); ++g) {
        load.y[g] /= static_cast<double>(cycles.size());
        unload.y[g] /= static_cast<double>(cycles.size());
    }
    load.color = "#333333";
    unload.color = "#333333";
    loop_chart.series.push_back(load);
    loop_chart.series.push_back(unload);

    sm::svg::Series mean;
    mean.x = mc.strain_grid;
    mean.y = mc.mean_mid;
    mean.color = "#2ca02c";
    loop_chart.series.push_back(mean);
    sm::svg::Series fitline;
    fitline.x = mc.strain_grid;
    fitline.y.resize(mc.strain_grid.size());
    const double intercept =
        mc.mean_mid.empty()
            ? 0.0
            : mc.mean_mid.front() - gauge.gauge_factor * mc.strain_grid.front();
    for (std::size_t i = 0; i < mc.strain_grid.size(); ++i) {
        fitline.y[i] = gauge.gauge_factor * mc.strain_grid[i] + intercept;
    }
    fitline.color = "#d62728";
    fitline.dashed = true;
    loop_chart.series.push_back(fitline);
    loop_chart.legend = {"mean loading", "mean unloading",
                   "midpoint mean (+/-1 sd band)", "linear fit"};
    sm::csv::write_text_file(out / "cyclic_midpoint.svg", sm::svg::render(loop_chart));

    sm::svg::Chart time_chart;
    time_chart.title = "Resistance over all cycles";
    time_chart.x_label = "time [s]";
    time_chart.y_label = "R [ohm]";
    sm::svg::Series rt;
    rt.x.reserve(trace.samples.size());
    rt.y.reserve(trace.samples.size());
    for (const auto& s : trace.samples) {
        rt.x.push_back(s.t_s);
        rt.y.push_back(trace.r0_ohm * (1.0 + s.d_r_over_r));
    }
    time_chart.series.push_back(rt);
    sm::csv::write_text_file(out / "cyclic_resistance_time.svg",
                             sm::svg::render(time_chart));
}

void write_failure_plot(const fs::path& out, const sm::SyncedTrace& trace) {
    sm::svg::Chart force_chart;
    force_chart.title = "Stretch to failure: force";
    force_chart.x_label = "strain";
    force_chart.y_label = "force [N]";
    sm::svg::Series f;
    sm::svg::Series d;
    for (const auto& s : trace.samples) {
        f.x.push_back(s.strain);
        f.y.push_back(s.force_n);
        d.x.push_back(s.strain);
        d.y.push_back(s.d_r_over_r);
    }
    f.color = "#1f77b4";
    force_chart.series.push_back(f);

    sm::svg::Chart dr_chart;
    dr_chart.title = "Stretch to failure: sensor response";
    dr_chart.x_label = "strain";
    dr_chart.y_label = "dR/R";
    d.color = "#ff7f0e";
    dr_chart.series.push_back(d);

    // two stacked panels in one document
    std::string doc =
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"720\" "
        "height=\"960\">\n<svg y=\"0\">\n" +
        sm::svg::render(force_chart) + "</svg>\n<svg y=\"480\">\n" +
        sm::svg::render(dr_chart) + "</svg>\n</svg>\n";
    sm::csv::write_text_file(out / "failure_curves.svg", doc);
}

int cmd_analyze(const std::string& kind, const std::string& resistance_path,
                const std::string& tensile_path, const CommonOpts& opts) {
    const sm::RunConfig cfg = resolve_config(opts);
    const fs::path out = ensure_out_dir(opts.out_dir);

    const sm::ResistanceTrace r = sm::parse_resistance_log(resistance_path);
    const sm::TensileTrace ten = sm::parse_tensile_log(tensile_path);
    const sm::SyncedTrace trace = sm::synchronize(r, ten, cfg.test);
    sm::write_synced_csv(trace, out / (kind + "_synced.csv"));

    json report;
    if (kind == "cyclic") {
        const auto cycles = sm::segment_cycles(trace, cfg.segmentation);
        const auto mc = sm::midpoint_curve(trace, cycles, cfg.n_bins);
        const auto extrema = sm::per_cycle_extrema(trace, cycles);
        const sm::MetricsReport m =
            sm::build_report(mc, trace, cycles, extrema);
        report["gauge_factor"] = m.gauge_factor;
        report["linearity_r2"] = m.linearity_r2;
        report["hysteresis_pct"] = m.hysteresis_pct;
        report["baseline_drift_pct_per_cycle"] = m.baseline_drift_pct_per_cycle;
        report["peak_drift_pct_per_cycle"] = m.peak_drift_pct_per_cycle;
        report["n_cycles"] = m.n_cycles;
        report["config"] = json::parse(sm::config_json(cfg));
        sm::csv::write_text_file(out / "cyclic_report.json",
                                 report.dump(2) + "\n");
        sm::csv::write_text_file(out / "cyclic_report.txt",
                                 sm::render_table(m));
        sm::write_midpoint_csv(mc, out / "cyclic_midpoint.csv");
        sm::csv::write_text_file(out / "cyclic_extrema.csv",
                                 sm::extrema_csv(extrema));
        write_cyclic_plots(out, trace, cycles, mc,
                           sm::gauge_factor_and_linearity(mc));
        std::cout << sm::render_table(m);
    } else {  // failure
        const sm::FailureReport f = sm::failure_analysis(trace, cfg.failure);
        report["failure_strain"] = f.failure_strain;
        report["failure_mode"] = sm::to_string(f.failure_mode);
        report["linear_range_end"] = f.linear_range_end;
        report["max_force_in_linear_range"] = f.max_force_in_linear_range;
        report["config"] = json::parse(sm::config_json(cfg));
        sm::csv::write_text_file(out / "failure_report.json",
                                 report.dump(2) + "\n");
        write_failure_plot(out, trace);
        std::cout << report.dump(2) << "\n";
    }
    return 0;
}

// -- calibrate / estimate -----------------------------------------------------

int cmd_calibrate(const std::string& points_path, const CommonOpts& opts) {
    const fs::path out = ensure_out_dir(opts.out_dir);
    const auto points = sm::parse_calibration_points(points_path);
    const sm::AngleModel model = sm::fit_angle_model(points);
    json j = {{"slope", model.slope},
              {"intercept", model.intercept},
              {"fit_r2", model.fit_r2}};
    sm::csv::write_text_file(out / "angle_model.json", j.dump(2) + "\n");
    std::cout << j.dump(2) << "\n";
    return 0;
}

sm::AngleModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) sm::fail("FileMissing", "cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        sm::fail("InvalidParams", "bad model JSON: " + std::string(e.what()),
                 sm::ErrorKind::config);
    }
    sm::AngleModel model;
    model.slope = j.value("slope", 0.0);
    model.intercept = j.value("intercept", 0.0);
    model.fit_r2 = j.value("fit_r2", 0.0);
    return model;
}

int cmd_estimate(const std::string& model_path,
                 const std::string& resistance_path,
                 const std::string& truth_path, const CommonOpts& opts) {
    const sm::RunConfig cfg = resolve_config(opts);
    const fs::path out = ensure_out_dir(opts.out_dir);

    const sm::AngleModel model = load_model(model_path);
    const sm::ResistanceTrace r = sm::parse_resistance_log(resistance_path);
    const sm::SyncedTrace trace = sm::resistance_only(r, cfg.test);
    const sm::AngleTrace estimated = sm::estimate_angles(model, trace);
    sm::write_angle_csv(estimated, out / "estimated_angles.csv");

    if (truth_path.empty()) return 0;

    const sm::AngleTrace truth = sm::parse_angle_trace(truth_path);
    const sm::MapeScore score = sm::mape(estimated, truth, cfg.min_angle_deg);
    json j = {{"mape_pct", score.mape_pct},
              {"n_scored", score.n_scored},
              {"min_angle_deg", score.min_angle_deg}};
    sm::csv::write_text_file(out / "angle_score.json", j.dump(2) + "\n");

    sm::svg::Chart overlay;
    char head[64];
    std::snprintf(head, sizeof(head), "Joint angle tracking (MAPE %.1f%%)",
                  score.mape_pct);
    overlay.title = head;
    overlay.x_label = "time [s]";
    overlay.y_label = "angle [deg]";
    sm::svg::Series est, tru;
    for (const auto& s : estimated.samples) {
        est.x.push_back(s.t_s);
        est.y.push_back(s.angle_deg);
    }
    for (const auto& s : truth.samples) {
        tru.x.push_back(s.t_s);
        tru.y.push_back(s.angle_deg);
    }
    est.color = "#d62728";
    tru.color = "#1f77b4";
    tru.dashed = true;
    overlay.series = {est, tru};
    overlay.legend = {"sensor estimate", "ground truth"};
    sm::csv::write_text_file(out / "angle_overlay.svg", sm::svg::render(overlay));
    std::cout << j.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"stretchmetrics: resistive strain sensor test toolkit"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string kind, params_path, resistance_path, tensile_path;
    std::string points_path, model_path, truth_path;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", opts.config_path, "config JSON file");
        sub->add_option("--set", opts.overrides,
                        "override a config key, key=value (repeatable)");
        sub->add_option("--out", opts.out_dir, "output directory");
    };

    auto* sim = app.add_subcommand("simulate", "generate synthetic bench logs");
    sim->add_option("kind", kind, "cyclic | failure | motion")
        ->required()
        ->check(CLI::IsMember({"cyclic", "failure", "motion"}));
    sim->add_option("--params", params_path, "simulator params JSON");
    add_common(sim);

    auto* ana = app.add_subcommand("analyze", "compute the metrics report");
    ana->add_option("kind", kind, "cyclic | failure")
        ->required()
        ->check(CLI::IsMember({"cyclic", "failure"}));
    ana->add_option("--resistance", resistance_path, "LCR meter CSV")
        ->required();
    ana->add_option("--tensile", tensile_path, "tensile tester CSV")
        ->required();
    add_common(ana);

    auto* cal = app.add_subcommand("calibrate", "fit the angle model");
    cal->add_option("--points", points_path, "calibration points CSV")
        ->required();
    add_common(cal);

    auto* est = app.add_subcommand("estimate", "estimate joint angles");
    est->add_option("--model", model_path, "angle model JSON")->required();
    est->add_option("--resistance", resistance_path, "LCR meter CSV")
        ->required();
    est->add_option("--truth", truth_path, "ground-truth angles CSV");
    add_common(est);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (sim->parsed()) return cmd_simulate(kind, params_path, opts);
        if (ana->parsed()) {
            return cmd_analyze(kind, resistance_path, tensile_path, opts);
        }
        if (cal->parsed()) return cmd_calibrate(points_path, opts);
        if (est->parsed()) {
            return cmd_estimate(model_path, resistance_path, truth_path, opts);
        }
    } catch (const sm::ToolkitError& e) {
        std::cerr << e.what() << "\n";
        return e.kind() == sm::ErrorKind::config ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
