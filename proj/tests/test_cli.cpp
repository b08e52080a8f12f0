#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "femtosim/commands.hpp"
#include "femtosim/csv.hpp"

using namespace femtosim;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
    const fs::path dir = fs::temp_directory_path() / "femtosim_cli_tests";
    fs::create_directories(dir);
    return dir;
}

fs::path write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
    return path;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

const char* corridor_scn = "[radio]\n"
                           "macro_wall_loss = 40\n"
                           "[layout]\n"
                           "kind = custom\n"
                           "fap = 0 0 0 0 0\n"
                           "fap = 1 20 0 1 1\n"
                           "[schedule]\n"
                           "ticks = 45\n"
                           "ue = 1 2.1 0 4 0\n"
                           "event = 1 1 power_on\n"
                           "event = 2 1 call_start\n"
                           "event = 40 1 call_end\n";

} // namespace

TEST_CASE("scenario references resolve through the scenario directory") {
    CHECK(resolve_scenario_path("dir/name.scn") == "dir/name.scn");
    CHECK(resolve_scenario_path("./here.scn") == "./here.scn");

    const fs::path dir = temp_dir();
    write_file(dir / "alpha.scn", "");
    write_file(dir / "beta", "");

    setenv("FEMTOSIM_SCENARIO_DIR", dir.string().c_str(), 1);
    CHECK(resolve_scenario_path("alpha") == (dir / "alpha.scn").string());
    CHECK(resolve_scenario_path("beta") == (dir / "beta").string());
    // unknown names still resolve to a path, whose open then fails clearly
    CHECK(resolve_scenario_path("ghost") == (dir / "ghost.scn").string());
    unsetenv("FEMTOSIM_SCENARIO_DIR");

    CHECK(resolve_scenario_path("ghost") ==
          (fs::path("scenarios") / "ghost.scn").string());
}

TEST_CASE("sweep runs the built-in defaults when no scenario is given") {
    const fs::path out = temp_dir() / "fig4.csv";
    std::ostringstream diag;

    SweepArgs args;
    args.figure = "fig4";
    args.out_path = out.string();
    CHECK(cmd_sweep(args, diag) == kExitOk);
    CHECK(diag.str().empty());

    const auto rows = parse_curve_csv(read_file(out));
    REQUIRE(rows.size() == 11);
    CHECK(rows.front().sweep_value == 0.0);
    CHECK(rows.back().sweep_value == 1.0);
    CHECK(rows[0].trials == 200);
}

TEST_CASE("count-style figures produce the sixteen-point grid") {
    const fs::path out = temp_dir() / "fig6.csv";
    std::ostringstream diag;

    SweepArgs args;
    args.figure = "fig6";
    args.out_path = out.string();
    args.trials = 5;
    CHECK(cmd_sweep(args, diag) == kExitOk);

    const auto rows = parse_curve_csv(read_file(out));
    REQUIRE(rows.size() == 16);
    CHECK(rows.front().sweep_value == 0.0);
    CHECK(rows.back().sweep_value == 15.0);
    CHECK(rows[0].trials == 5); // the flag overrides the scenario value
}

TEST_CASE("sweep rejects unknown figures before touching the output") {
    const fs::path out = temp_dir() / "never.csv";
    fs::remove(out);
    std::ostringstream diag;

    SweepArgs args;
    args.figure = "fig9";
    args.out_path = out.string();
    CHECK(cmd_sweep(args, diag) == kExitUsage);
    CHECK(diag.str().find("error:") != std::string::npos);
    CHECK_FALSE(fs::exists(out));
}

TEST_CASE("sweep reports unreadable scenarios as data errors") {
    std::ostringstream diag;
    SweepArgs args;
    args.figure = "fig4";
    args.scenario = (temp_dir() / "missing.scn").string();
    args.out_path = (temp_dir() / "out.csv").string();
    CHECK(cmd_sweep(args, diag) == kExitData);
    CHECK(diag.str().find("error:") != std::string::npos);
}

TEST_CASE("sweep output is deterministic and seed-sensitive") {
    const fs::path a = temp_dir() / "a.csv";
    const fs::path b = temp_dir() / "b.csv";
    const fs::path c = temp_dir() / "c.csv";
    std::ostringstream diag;

    SweepArgs args;
    args.figure = "fig4";
    args.trials = 50;
    args.out_path = a.string();
    CHECK(cmd_sweep(args, diag) == kExitOk);
    args.out_path = b.string();
    CHECK(cmd_sweep(args, diag) == kExitOk);
    CHECK(read_file(a) == read_file(b));

    args.out_path = c.string();
    args.seed = 99;
    args.has_seed = true;
    CHECK(cmd_sweep(args, diag) == kExitOk);
    CHECK(read_file(c) != read_file(a));
}

TEST_CASE("run demands a scenario with scheduled events") {
    std::ostringstream diag;
    RunArgs args;
    args.out_path = (temp_dir() / "run.log").string();
    CHECK(cmd_run(args, diag) == kExitUsage);

    const fs::path empty = write_file(temp_dir() / "empty.scn", "");
    args.scenario = empty.string();
    std::ostringstream diag2;
    CHECK(cmd_run(args, diag2) == kExitData);
    CHECK(diag2.str().find("no scheduled UE events") != std::string::npos);

    args.scenario = (temp_dir() / "missing.scn").string();
    std::ostringstream diag3;
    CHECK(cmd_run(args, diag3) == kExitData);
}

TEST_CASE("run writes the event log with a trailing summary") {
    const fs::path scn = write_file(temp_dir() / "corridor.scn", corridor_scn);
    const fs::path out = temp_dir() / "corridor.log";
    std::ostringstream diag;

    RunArgs args;
    args.scenario = scn.string();
    args.out_path = out.string();
    CHECK(cmd_run(args, diag) == kExitOk);

    const std::string log = read_file(out);
    CHECK(log.rfind("1 ue-state ue:1 detached idle power_on\n", 0) == 0);
    CHECK(log.find("\nsummary handovers=1 ") != std::string::npos);
    CHECK(log.back() == '\n');
    CHECK(diag.str().find("summary handovers=1 ") != std::string::npos);

    // byte-stable across repeat invocations
    const fs::path out2 = temp_dir() / "corridor2.log";
    args.out_path = out2.string();
    std::ostringstream diag2;
    CHECK(cmd_run(args, diag2) == kExitOk);
    CHECK(read_file(out2) == log);
}

TEST_CASE("plot turns a sweep csv into an svg") {
    const fs::path csv = temp_dir() / "plot_in.csv";
    const fs::path svg = temp_dir() / "plot_out.svg";
    std::ostringstream diag;

    SweepArgs sweep;
    sweep.figure = "fig5";
    sweep.trials = 20;
    sweep.out_path = csv.string();
    REQUIRE(cmd_sweep(sweep, diag) == kExitOk);

    PlotArgs plot;
    plot.csv_path = csv.string();
    plot.figure = "fig5";
    plot.out_path = svg.string();
    CHECK(cmd_plot(plot, diag) == kExitOk);

    const std::string content = read_file(svg);
    CHECK(content.find("<svg") == 0);
    CHECK(content.find("Throughput analysis") != std::string::npos);
    CHECK(content.find("probability that a FAP is in active mode") !=
          std::string::npos);

    // count figures switch the x axis label
    SweepArgs csweep;
    csweep.figure = "fig6";
    csweep.trials = 20;
    csweep.out_path = (temp_dir() / "fig6_plot.csv").string();
    REQUIRE(cmd_sweep(csweep, diag) == kExitOk);
    PlotArgs cplot;
    cplot.csv_path = csweep.out_path;
    cplot.figure = "fig6";
    cplot.out_path = (temp_dir() / "fig6_plot.svg").string();
    CHECK(cmd_plot(cplot, diag) == kExitOk);
    CHECK(read_file(cplot.out_path).find("number of active FAPs") !=
          std::string::npos);
}

TEST_CASE("plot refuses a csv without data rows and writes nothing") {
    const fs::path csv =
        write_file(temp_dir() / "headeronly.csv", std::string(kCurveCsvHeader) + "\n");
    const fs::path svg = temp_dir() / "headeronly.svg";
    fs::remove(svg);
    std::ostringstream diag;

    PlotArgs plot;
    plot.csv_path = csv.string();
    plot.figure = "fig4";
    plot.out_path = svg.string();
    CHECK(cmd_plot(plot, diag) == kExitData);
    CHECK(diag.str().find("error:") != std::string::npos);
    CHECK_FALSE(fs::exists(svg));
}

TEST_CASE("plot validates the figure and the csv path") {
    std::ostringstream diag;
    PlotArgs plot;
    plot.csv_path = (temp_dir() / "whatever.csv").string();
    plot.figure = "fig1";
    plot.out_path = (temp_dir() / "x.svg").string();
    CHECK(cmd_plot(plot, diag) == kExitUsage);

    plot.figure = "fig4";
    plot.csv_path = (temp_dir() / "nonexistent.csv").string();
    std::ostringstream diag2;
    CHECK(cmd_plot(plot, diag2) == kExitData);
}
