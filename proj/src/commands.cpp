#include "femtosim/commands.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "femtosim/csv.hpp"
#include "femtosim/engine.hpp"
#include "femtosim/scenario_io.hpp"
#include "femtosim/svg_plot.hpp"

namespace femtosim {

namespace {

bool write_file(const std::string& path, const std::string& content,
                std::ostream& diag) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        diag << "error: cannot open '" << path << "' for writing\n";
        return false;
    }
    out << content;
    out.flush();
    if (!out) {
        diag << "error: failed writing '" << path << "'\n";
        return false;
    }
    return true;
}

bool read_file(const std::string& path, std::string& content,
               std::ostream& diag) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        diag << "error: cannot open '" << path << "'\n";
        return false;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    content = buf.str();
    return true;
}

std::string summary_line(const RunSummary& s) {
    char duty[32];
    std::snprintf(duty, sizeof duty, "%.6g", s.energy_duty);
    return "summary handovers=" + std::to_string(s.handovers) +
           " aborts=" + std::to_string(s.aborts) +
           " wakes=" + std::to_string(s.wakes) + " energy_duty=" + duty;
}

}  // namespace

std::string resolve_scenario_path(const std::string& ref) {
    namespace fs = std::filesystem;
    if (ref.find('/') != std::string::npos ||
        ref.find('\\') != std::string::npos) {
        return ref;
    }
    std::error_code ec;
    if (fs::exists(ref, ec)) return ref;
    const char* env = std::getenv("FEMTOSIM_SCENARIO_DIR");
    const std::string dir = (env != nullptr && *env != '\0') ? env : "scenarios";
    const fs::path base = fs::path(dir) / ref;
    if (fs::exists(base, ec)) return base.string();
    fs::path with_ext = base;
    with_ext += ".scn";
    return with_ext.string();
}

int cmd_sweep(const SweepArgs& args, std::ostream& diag) {
    Scenario sc;
    if (!args.scenario.empty()) {
        try {
            sc = load_scenario_file(resolve_scenario_path(args.scenario));
        } catch (const std::exception& e) {
            diag << "error: " << e.what() << "\n";
            return kExitData;
        }
    }

    SweepSpec spec;
    spec.radio = sc.radio;
    spec.layout = sc.layout.cfg;
    spec.ue_distance = sc.ue_distance;
    spec.trials = args.trials > 0 ? args.trials : sc.trials;
    spec.seed = args.has_seed ? args.seed : sc.seed;

    SweepResult result;
    try {
        if (args.figure == "fig4" || args.figure == "fig5") {
            result = run_probability_sweep(spec, probability_sweep_points());
        } else if (args.figure == "fig6" || args.figure == "fig7") {
            result = run_count_sweep(spec, count_sweep_points());
        } else {
            diag << "error: unknown figure '" << args.figure << "'\n";
            return kExitUsage;
        }
    } catch (const std::exception& e) {
        diag << "error: " << e.what() << "\n";
        return kExitData;
    }

    if (!write_file(args.out_path, to_csv(curve_rows(result)), diag)) {
        return kExitData;
    }
    return kExitOk;
}

int cmd_run(const RunArgs& args, std::ostream& diag) {
    if (args.scenario.empty()) {
        diag << "error: run requires a scenario\n";
        return kExitUsage;
    }
    Scenario sc;
    try {
        sc = load_scenario_file(resolve_scenario_path(args.scenario));
    } catch (const std::exception& e) {
        diag << "error: " << e.what() << "\n";
        return kExitData;
    }
    if (args.has_seed) sc.seed = args.seed;
    if (sc.schedule.empty()) {
        diag << "error: scenario has no scheduled UE events\n";
        return kExitData;
    }

    RunResult result;
    try {
        result = run_scenario(sc);
    } catch (const std::exception& e) {
        diag << "error: " << e.what() << "\n";
        return kExitData;
    }

    std::string content = to_text(result.log);
    content += summary_line(result.summary);
    content += "\n";
    if (!write_file(args.out_path, content, diag)) {
        return kExitData;
    }
    diag << summary_line(result.summary) << "\n";
    return kExitOk;
}

int cmd_plot(const PlotArgs& args, std::ostream& diag) {
    PlotSpec spec;
    if (args.figure == "fig4") {
        spec.title = "SNIR analysis";
        spec.x_label = "probability that a FAP is in active mode";
        spec.y_label = "SNIR (dB)";
        spec.metric = PlotMetric::SnirDb;
    } else if (args.figure == "fig5") {
        spec.title = "Throughput analysis";
        spec.x_label = "probability that a FAP is in active mode";
        spec.y_label = "throughput (bit/s)";
        spec.metric = PlotMetric::ThroughputBps;
    } else if (args.figure == "fig6") {
        spec.title = "SNIR analysis";
        spec.x_label = "number of active FAPs";
        spec.y_label = "SNIR (dB)";
        spec.metric = PlotMetric::SnirDb;
    } else if (args.figure == "fig7") {
        spec.title = "Throughput analysis";
        spec.x_label = "number of active FAPs";
        spec.y_label = "throughput (bit/s)";
        spec.metric = PlotMetric::ThroughputBps;
    } else {
        diag << "error: unknown figure '" << args.figure << "'\n";
        return kExitUsage;
    }

    std::string text;
    if (!read_file(args.csv_path, text, diag)) return kExitData;

    std::string svg;
    try {
        svg = render_curve_svg(parse_curve_csv(text), spec);
    } catch (const std::exception& e) {
        diag << "error: " << e.what() << "\n";
        return kExitData;
    }

    if (!write_file(args.out_path, svg, diag)) return kExitData;
    return kExitOk;
}

}  // namespace femtosim
