#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "stretchmetrics/ingest.hpp"

using namespace stretchmetrics;
using testutil::error_name;
using testutil::write_file;

TEST_CASE("parse_resistance_log reads a valid two-row file") {
    const auto path = write_file("ingest", "ok.csv",
                                 "t_s,R_ohm\n0,2.5e+06\n0.1,2.6e+06\n");
    const ResistanceTrace trace = parse_resistance_log(path);
    REQUIRE(trace.samples.size() == 2);
    CHECK(trace.samples[0].r_ohm == 2.5e6);
    CHECK(trace.samples[1].t_s == 0.1);
    CHECK(trace.samples[1].t_s - trace.samples[0].t_s ==
          doctest::Approx(0.1));  // 10 Hz spacing
    CHECK_FALSE(trace.samples[0].open_circuit);
}

TEST_CASE("parse_resistance_log rejects malformed inputs by name") {
    CHECK(error_name([] {
              parse_resistance_log(write_file("ingest", "empty.csv",
                                              "t_s,R_ohm\n"));
          }) == "TooFewSamples");
    CHECK(error_name([] {
              parse_resistance_log(write_file("ingest", "header.csv",
                                              "t_s,R_ohms\n0,1\n0.1,1\n"));
          }) == "SchemaMismatch");
    CHECK(error_name([] {
              parse_resistance_log(write_file(
                  "ingest", "spacey.csv", "t_s, R_ohm\n0,1\n0.1,1\n"));
          }) == "SchemaMismatch");
    CHECK(error_name([] {
              parse_resistance_log(write_file("ingest", "nonpos.csv",
                                              "t_s,R_ohm\n0,1\n0.1,-5\n"));
          }) == "NonPositiveResistance");
    CHECK(error_name([] {
              parse_resistance_log("/nonexistent/path.csv");
          }) == "FileMissing");
    CHECK(error_name([] {
              parse_resistance_log(write_file(
                  "ingest", "extra_field.csv", "t_s,R_ohm\n0,1,9\n"));
          }) == "SchemaMismatch");
}

TEST_CASE("duplicate timestamp is reported at the right row") {
    const auto path = write_file("ingest", "dup.csv",
                                 "t_s,R_ohm\n0,1\n0.1,1\n0.1,1\n");
    try {
        parse_resistance_log(path);
        FAIL("expected NonMonotonicTime");
    } catch (const ToolkitError& e) {
        CHECK(e.name() == "NonMonotonicTime");
        CHECK(std::string(e.what()).find("row 3") != std::string::npos);
    }
}

TEST_CASE("open-circuit sentinel is preserved as a flagged sample") {
    const auto path = write_file("ingest", "over.csv",
                                 "t_s,R_ohm\n0,2.5e+06\n0.1,OVER\n0.2,2.5e+06\n");
    const ResistanceTrace trace = parse_resistance_log(path);
    REQUIRE(trace.samples.size() == 3);
    CHECK(trace.samples[1].open_circuit);
    CHECK_FALSE(trace.samples[2].open_circuit);
}

TEST_CASE("parse_tensile_log reads rows and checks invariants") {
    const auto path = write_file("ingest", "ten.csv",
                                 "t_s,disp_mm,force_N\n0,0,0\n1,1,0.5\n");
    const TensileTrace trace = parse_tensile_log(path);
    REQUIRE(trace.samples.size() == 2);
    // 1 mm over 1 s: the bench crosshead rate of 60 mm/min
    CHECK(trace.samples[1].disp_mm - trace.samples[0].disp_mm ==
          doctest::Approx(1.0));

    const auto three = write_file("ingest", "ten3.csv",
                                  "t_s,disp_mm,force_N\n0,0,0\n1,1,1\n2,2,2\n");
    CHECK(parse_tensile_log(three).samples.size() == 3);

    CHECK(error_name([] {
              parse_tensile_log(write_file(
                  "ingest", "neg.csv", "t_s,disp_mm,force_N\n0,0,0\n1,-1,0\n"));
          }) == "NegativeDisplacement");
    CHECK(error_name([] {
              parse_tensile_log(write_file(
                  "ingest", "nanf.csv", "t_s,disp_mm,force_N\n0,0,0\n1,1,nan\n"));
          }) == "NonFiniteForce");
}

TEST_CASE("baseline_resistance takes the median over the leading window") {
    TestConfig cfg;
    ResistanceTrace constant;
    for (int i = 0; i < 30; ++i) {
        constant.samples.push_back({0.1 * i, 2.5e6, false});
    }
    CHECK(baseline_resistance(constant, cfg) == 2.5e6);

    ResistanceTrace spiky;
    spiky.samples = {{0.0, 1.0, false}, {0.5, 1.0, false},  {1.0, 100.0, false},
                     {2.5, 7.0, false}, {3.0, 7.0, false}};
    CHECK(baseline_resistance(spiky, cfg) == 1.0);  // robust to the spike

    ResistanceTrace even;
    even.samples = {{0.0, 2.0, false}, {1.0, 4.0, false}, {2.5, 9.0, false}};
    CHECK(baseline_resistance(even, cfg) == 3.0);  // mean of middle pair

    ResistanceTrace brief;
    brief.samples = {{0.0, 1.0, false}, {0.5, 1.0, false}};
    CHECK(error_name([&] { baseline_resistance(brief, cfg); }) ==
          "WindowTooShort");

    // open-circuit samples never contribute to the baseline
    ResistanceTrace glitchy = spiky;
    glitchy.samples[2].open_circuit = true;
    glitchy.samples[2].r_ohm = std::numeric_limits<double>::infinity();
    CHECK(baseline_resistance(glitchy, cfg) == 1.0);
}

TEST_CASE("round trip: the writer's own output parses back bit-exact") {
    std::mt19937_64 rng(123);
    std::uniform_real_distribution<double> jitter(0.01, 0.2);
    std::uniform_real_distribution<double> ohms(1.0, 5e6);

    ResistanceTrace trace;
    double t = 0.0;
    for (int i = 0; i < 200; ++i) {
        t += jitter(rng);
        const bool over = (i % 37) == 5;
        trace.samples.push_back(
            {t, over ? std::numeric_limits<double>::infinity() : ohms(rng),
             over});
    }

    const std::string text = resistance_csv(trace);
    const auto path = write_file("ingest", "roundtrip.csv", text);
    const ResistanceTrace parsed = parse_resistance_log(path);
    REQUIRE(parsed.samples.size() == trace.samples.size());
    for (std::size_t i = 0; i < trace.samples.size(); ++i) {
        CHECK(parsed.samples[i].t_s == trace.samples[i].t_s);
        CHECK(parsed.samples[i].open_circuit == trace.samples[i].open_circuit);
        if (!trace.samples[i].open_circuit) {
            CHECK(parsed.samples[i].r_ohm == trace.samples[i].r_ohm);
        }
    }
    CHECK(resistance_csv(parsed) == text);  // byte-identical re-serialization
}

TEST_CASE("baseline is order-independent within the window") {
    TestConfig cfg;
    const std::vector<std::vector<double>> orders = {
        {3.0, 1.0, 7.0, 5.0}, {7.0, 5.0, 3.0, 1.0}, {1.0, 7.0, 5.0, 3.0}};
    double expected = 0.0;
    for (std::size_t k = 0; k < orders.size(); ++k) {
        ResistanceTrace trace;
        for (std::size_t i = 0; i < orders[k].size(); ++i) {
            trace.samples.push_back({0.4 * static_cast<double>(i),
                                     orders[k][i], false});
        }
        trace.samples.push_back({2.5, 100.0, false});
        const double r0 = baseline_resistance(trace, cfg);
        if (k == 0) {
            expected = r0;
        } else {
            CHECK(r0 == expected);
        }
    }
}

TEST_CASE("any header token deviation is rejected") {
    const std::vector<std::string> bad_resistance = {
        "t_s,R_ohm,extra", "R_ohm,t_s", "T_s,R_ohm", "t_s;R_ohm", "t_s"};
    for (const auto& header : bad_resistance) {
        CHECK(error_name([&] {
                  parse_resistance_log(write_file("ingest", "hdr.csv",
                                                  header + "\n0,1\n0.1,1\n"));
              }) == "SchemaMismatch");
    }
    const std::vector<std::string> bad_tensile = {
        "t_s,disp_mm,force_n", "t_s,disp,force_N", "t_s,disp_mm",
        "t_s, disp_mm,force_N"};
    for (const auto& header : bad_tensile) {
        CHECK(error_name([&] {
                  parse_tensile_log(write_file("ingest", "thdr.csv",
                                               header + "\n0,0,0\n1,1,1\n"));
              }) == "SchemaMismatch");
    }
}

TEST_CASE("CRLF input parses the same as LF") {
    const auto lf = parse_resistance_log(
        write_file("ingest", "lf.csv", "t_s,R_ohm\n0,1\n0.1,2\n"));
    const auto crlf = parse_resistance_log(
        write_file("ingest", "crlf.csv", "t_s,R_ohm\r\n0,1\r\n0.1,2\r\n"));
    REQUIRE(lf.samples.size() == crlf.samples.size());
    CHECK(lf.samples[1].r_ohm == crlf.samples[1].r_ohm);
}
