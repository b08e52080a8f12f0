#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <stdexcept>
#include <string>
#include <vector>

#include "femtosim/csv.hpp"
#include "femtosim/svg_plot.hpp"

using namespace femtosim;

namespace {

CurveRow sample_row() {
    CurveRow row;
    row.sweep_value = 0.4;
    row.proposed_snir_db = 14.876543;
    row.existing_snir_db = 13.012345;
    row.proposed_throughput_bps = 4.987654e7;
    row.existing_throughput_bps = 4.4e7;
    row.proposed_active_fraction = 0.401233;
    row.energy_duty = 0.401233;
    row.snir_db_std = 0.523456;
    row.trials = 1000;
    return row;
}

} // namespace

TEST_CASE("the header names all nine columns in order") {
    CHECK(std::string(kCurveCsvHeader) ==
          "sweep_value,proposed_snir_db,existing_snir_db,"
          "proposed_throughput_bps,existing_throughput_bps,"
          "proposed_active_fraction,energy_duty,snir_db_std,trials");
}

TEST_CASE("rows render with six significant digits and lf endings") {
    const std::string csv = to_csv({sample_row()});
    CHECK(csv == std::string(kCurveCsvHeader) + "\n" +
                     "0.4,14.8765,13.0123,4.98765e+07,4.4e+07,0.401233,"
                     "0.401233,0.523456,1000\n");
    CHECK(csv.find('\r') == std::string::npos);

    CHECK(to_csv({}) == std::string(kCurveCsvHeader) + "\n");
}

TEST_CASE("sweep results map point by point onto rows") {
    SweepResult result;
    result.sweep_kind = "probability";
    SweepPoint pt;
    pt.sweep_value = 0.3;
    pt.proposed.snir_db_mean = 14.5;
    pt.proposed.snir_db_std = 0.4;
    pt.proposed.throughput_bps = 4.9e7;
    pt.existing.snir_db_mean = 13.0;
    pt.existing.throughput_bps = 4.4e7;
    pt.proposed_active_fraction = 0.31;
    pt.energy_duty = 0.31;
    pt.trials = 200;
    result.points = {pt, pt};

    const std::vector<CurveRow> rows = curve_rows(result);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].sweep_value == 0.3);
    CHECK(rows[0].proposed_snir_db == 14.5);
    CHECK(rows[0].existing_snir_db == 13.0);
    CHECK(rows[0].proposed_throughput_bps == 4.9e7);
    CHECK(rows[0].existing_throughput_bps == 4.4e7);
    CHECK(rows[0].proposed_active_fraction == 0.31);
    CHECK(rows[0].energy_duty == 0.31);
    CHECK(rows[0].snir_db_std == 0.4);
    CHECK(rows[0].trials == 200);
}

TEST_CASE("parsing inverts rendering at six-digit precision") {
    const std::vector<CurveRow> rows = {sample_row()};
    const std::vector<CurveRow> back = parse_curve_csv(to_csv(rows));
    REQUIRE(back.size() == 1);
    CHECK(back[0].sweep_value == doctest::Approx(0.4));
    CHECK(back[0].proposed_snir_db == doctest::Approx(14.8765));
    CHECK(back[0].trials == 1000);

    // a rendered file re-renders identically after a parse round trip
    const std::string csv = to_csv(rows);
    CHECK(to_csv(parse_curve_csv(csv)) == csv);
}

TEST_CASE("the parser is strict about headers and field counts") {
    CHECK_THROWS_AS(parse_curve_csv(""), std::runtime_error);
    CHECK_THROWS_AS(parse_curve_csv("a,b,c\n1,2,3\n"), std::runtime_error);

    const std::string header(kCurveCsvHeader);
    CHECK(parse_curve_csv(header + "\n").empty()); // header-only is parseable
    CHECK_THROWS_AS(parse_curve_csv(header + "\n1,2,3\n"), std::runtime_error);
    CHECK_THROWS_AS(parse_curve_csv(header + "\n1,2,3,4,5,6,7,8,x\n"),
                    std::runtime_error);
    CHECK_THROWS_AS(parse_curve_csv(header + "\n1,2,3,4,oops,6,7,8,9\n"),
                    std::runtime_error);

    // crlf input is tolerated, blank lines are skipped
    const std::vector<CurveRow> rows =
        parse_curve_csv(header + "\r\n\r\n0.1,1,2,3,4,0.5,0.5,0,10\r\n");
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].sweep_value == 0.1);
    CHECK(rows[0].trials == 10);

    try {
        parse_curve_csv(header + "\n0.1,1,2,3,4,0.5,0.5,0,10\n1,2\n");
        FAIL("expected a field count error");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
}

TEST_CASE("plots refuse empty data") {
    PlotSpec spec;
    spec.title = "SNIR analysis";
    spec.x_label = "probability that a FAP is in active mode";
    spec.y_label = "SNIR (dB)";
    spec.metric = PlotMetric::SnirDb;
    CHECK_THROWS_AS(render_curve_svg({}, spec), std::runtime_error);
}

TEST_CASE("plots carry both series, labels and a legend") {
    std::vector<CurveRow> rows;
    for (int i = 0; i <= 10; ++i) {
        CurveRow row = sample_row();
        row.sweep_value = i / 10.0;
        row.proposed_snir_db = 15.0 - 0.2 * i;
        row.existing_snir_db = 13.0;
        rows.push_back(row);
    }
    PlotSpec spec;
    spec.title = "SNIR analysis";
    spec.x_label = "probability that a FAP is in active mode";
    spec.y_label = "SNIR (dB)";
    spec.metric = PlotMetric::SnirDb;

    const std::string svg = render_curve_svg(rows, spec);
    CHECK(svg.find("<svg") == 0);
    CHECK(svg.find("SNIR analysis") != std::string::npos);
    CHECK(svg.find("probability that a FAP is in active mode") !=
          std::string::npos);
    CHECK(svg.find("SNIR (dB)") != std::string::npos);
    CHECK(svg.find("on-demand activation") != std::string::npos);
    CHECK(svg.find("always-on baseline") != std::string::npos);
    CHECK(svg.find("<polyline") != std::string::npos);
    CHECK(svg.find("stroke-dasharray=\"7 4\"") != std::string::npos);

    // identical inputs render identical bytes
    CHECK(render_curve_svg(rows, spec) == svg);

    // the throughput metric picks the other columns
    PlotSpec tspec = spec;
    tspec.metric = PlotMetric::ThroughputBps;
    tspec.y_label = "throughput (bit/s)";
    const std::string tsvg = render_curve_svg(rows, tspec);
    CHECK(tsvg != svg);
    CHECK(tsvg.find("throughput (bit/s)") != std::string::npos);
}

TEST_CASE("flat series still produce a sensible axis") {
    std::vector<CurveRow> rows;
    for (int i = 0; i < 3; ++i) {
        CurveRow row = sample_row();
        row.sweep_value = i;
        row.proposed_snir_db = 13.0;
        row.existing_snir_db = 13.0;
        rows.push_back(row);
    }
    PlotSpec spec;
    spec.title = "flat";
    spec.x_label = "x";
    spec.y_label = "y";
    spec.metric = PlotMetric::SnirDb;
    const std::string svg = render_curve_svg(rows, spec);
    CHECK(svg.find("NaN") == std::string::npos);
    CHECK(svg.find("nan") == std::string::npos);
    CHECK(svg.find("inf") == std::string::npos);
}
