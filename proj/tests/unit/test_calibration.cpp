#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "stretchmetrics/calibration.hpp"

using namespace stretchmetrics;
using testutil::error_name;
using testutil::make_synced;
using testutil::write_file;

namespace {

SyncedTrace trace_from_dr(const std::vector<double>& d) {
    std::vector<double> strain(d.size(), 0.0);
    return make_synced(strain, d);
}

AngleTrace angles_at(const std::vector<double>& t,
                     const std::vector<double>& a) {
    AngleTrace trace;
    for (std::size_t i = 0; i < t.size(); ++i) {
        trace.samples.push_back({t[i], a[i], false});
    }
    return trace;
}

}  // namespace

TEST_CASE("fit_angle_model recovers an exact calibration line") {
    std::vector<std::pair<double, double>> points;
    for (int i = 0; i <= 6; ++i) {
        const double x = 0.1 * i;
        points.emplace_back(x, 200.0 * x + 10.0);
    }
    const AngleModel model = fit_angle_model(points);
    CHECK(model.slope == doctest::Approx(200.0).epsilon(1e-12));
    CHECK(model.intercept == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(model.fit_r2 == doctest::Approx(1.0));
}

TEST_CASE("two points define the interpolating line") {
    const AngleModel model = fit_angle_model({{0.0, 20.0}, {0.5, 120.0}});
    CHECK(model.slope == doctest::Approx(200.0).epsilon(1e-12));
    CHECK(model.intercept == doctest::Approx(20.0).epsilon(1e-12));
    CHECK(model.fit_r2 == doctest::Approx(1.0));
}

TEST_CASE("four noisy points match the hand-solved normal equations") {
    // Sx = 0.3, Sy = 104.5, Sxx = 0.035, Sxy = 10.2
    // slope = (4*10.2 - 0.3*104.5) / (4*0.035 - 0.09) = 9.45 / 0.05 = 189
    // intercept = (104.5 - 189*0.3) / 4 = 11.95
    const AngleModel model = fit_angle_model(
        {{0.0, 12.0}, {0.05, 21.0}, {0.10, 31.5}, {0.15, 40.0}});
    CHECK(model.slope == doctest::Approx(189.0).epsilon(1e-12));
    CHECK(model.intercept == doctest::Approx(11.95).epsilon(1e-12));
    CHECK(model.fit_r2 == doctest::Approx(0.9984905660377359).epsilon(1e-12));
}

TEST_CASE("fit_angle_model rejects degenerate inputs") {
    CHECK(error_name([] { fit_angle_model({{0.1, 10.0}}); }) ==
          "DegeneratePoints");
    CHECK(error_name([] {
              fit_angle_model({{0.1, 10.0}, {0.1, 20.0}, {0.1, 30.0}});
          }) == "DegeneratePoints");
    // symmetric angles (exact binary abscissae): slope is exactly zero,
    // which is unusable for estimation
    CHECK(error_name([] {
              fit_angle_model(
                  {{0.0, 30.0}, {0.25, 40.0}, {0.5, 40.0}, {0.75, 30.0}});
          }) == "DegeneratePoints");
}

TEST_CASE("estimate_angles applies the line and clamps") {
    const AngleModel model{200.0, 10.0, 1.0};
    const SyncedTrace trace = trace_from_dr({0.0, 0.0, 0.0});
    const AngleTrace constant = estimate_angles(model, trace);
    for (const auto& s : constant.samples) {
        CHECK(s.angle_deg == doctest::Approx(10.0));
        CHECK_FALSE(s.clamped);
    }

    const SyncedTrace big = trace_from_dr({1.0, -0.2});
    const AngleTrace clamped = estimate_angles(model, big);
    CHECK(clamped.samples[0].angle_deg == 180.0);  // 210 clamps down
    CHECK(clamped.samples[0].clamped);
    CHECK(clamped.samples[1].angle_deg == 0.0);  // -30 clamps up
    CHECK(clamped.samples[1].clamped);
}

TEST_CASE("algebraic round trip angle -> dR/R -> angle") {
    const AngleModel model{180.0, 15.0, 1.0};
    std::vector<double> angles{15.0, 40.0, 90.0, 140.0, 172.0};
    std::vector<double> d;
    for (double a : angles) d.push_back((a - model.intercept) / model.slope);
    const AngleTrace est = estimate_angles(model, trace_from_dr(d));
    for (std::size_t i = 0; i < angles.size(); ++i) {
        CHECK(est.samples[i].angle_deg ==
              doctest::Approx(angles[i]).epsilon(1e-9));
    }
}

TEST_CASE("fitting then estimating reproduces the OLS residuals") {
    const std::vector<std::pair<double, double>> points{
        {0.00, 12.0}, {0.05, 21.0}, {0.10, 31.5}, {0.15, 40.0}};
    const AngleModel model = fit_angle_model(points);
    std::vector<double> d;
    for (const auto& p : points) d.push_back(p.first);
    const AngleTrace est = estimate_angles(model, trace_from_dr(d));
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double ols_resid =
            points[i].second - (model.slope * points[i].first + model.intercept);
        const double est_resid = points[i].second - est.samples[i].angle_deg;
        CHECK(est_resid == doctest::Approx(ols_resid).epsilon(1e-12));
    }
}

TEST_CASE("mape scores the documented hand case at exactly 5%") {
    const AngleTrace est = angles_at({0.0, 1.0}, {90.0, 100.0});
    const AngleTrace truth = angles_at({0.0, 1.0}, {100.0, 100.0});
    const MapeScore score = mape(est, truth, 5.0);
    CHECK(score.mape_pct == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(score.n_scored == 2);

    CHECK(mape(truth, truth, 5.0).mape_pct == 0.0);
}

TEST_CASE("mape is invariant under time shift and rescale") {
    const std::vector<double> t{0.0, 1.0, 2.0, 3.0};
    const AngleTrace est = angles_at(t, {80.0, 95.0, 110.0, 60.0});
    const AngleTrace truth = angles_at(t, {85.0, 90.0, 120.0, 55.0});
    const double base = mape(est, truth, 5.0).mape_pct;

    const auto shift = [&](const AngleTrace& in, double dt, double scale) {
        AngleTrace out = in;
        for (auto& s : out.samples) s.t_s = s.t_s * scale + dt;
        return out;
    };
    CHECK(mape(shift(est, 10.0, 1.0), shift(truth, 10.0, 1.0), 5.0).mape_pct ==
          doctest::Approx(base).epsilon(1e-12));
    CHECK(mape(shift(est, 0.0, 3.0), shift(truth, 0.0, 3.0), 5.0).mape_pct ==
          doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("mape excludes truth angles below the threshold") {
    const AngleTrace est = angles_at({0.0, 1.0, 2.0}, {2.0, 90.0, 100.0});
    const AngleTrace truth = angles_at({0.0, 1.0, 2.0}, {1.0, 100.0, 100.0});
    const MapeScore score = mape(est, truth, 5.0);
    CHECK(score.n_scored == 2);  // the 1-degree sample is excluded
    CHECK(score.mape_pct == doctest::Approx(5.0).epsilon(1e-12));

    CHECK(error_name([&] {
              mape(est, angles_at({0.0, 1.0, 2.0}, {1.0, 2.0, 3.0}), 5.0);
          }) == "AllSamplesBelowThreshold");
    CHECK(error_name([&] {
              mape(est, angles_at({50.0, 51.0}, {90.0, 90.0}), 5.0);
          }) == "NoOverlap");
}

TEST_CASE("calibration CSV parsers enforce their schemas") {
    const auto points = parse_calibration_points(write_file(
        "calib", "pts.csv", "dR_over_R,angle_deg\n0,10\n0.5,110\n"));
    CHECK(points.size() == 2);
    CHECK(points[1].second == 110.0);

    CHECK(error_name([] {
              parse_calibration_points(write_file(
                  "calib", "bad.csv", "dRoverR,angle_deg\n0,10\n"));
          }) == "SchemaMismatch");

    const AngleTrace truth = parse_angle_trace(write_file(
        "calib", "truth.csv", "t_s,angle_deg\n0,10\n0.1,20\n"));
    CHECK(truth.samples.size() == 2);
    CHECK(error_name([] {
              parse_angle_trace(write_file("calib", "oob.csv",
                                           "t_s,angle_deg\n0,10\n0.1,190\n"));
          }) == "AngleOutOfRange");
}
