#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace femtosim {

// Process exit statuses shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

struct SweepArgs {
    std::string figure;    // fig4 | fig5 | fig6 | fig7
    std::string scenario;  // empty = built-in defaults
    std::string out_path;
    int trials = 0;  // 0 = take the scenario's value
    std::uint64_t seed = 0;
    bool has_seed = false;
};

struct RunArgs {
    std::string scenario;
    std::string out_path;
    std::uint64_t seed = 0;
    bool has_seed = false;
};

struct PlotArgs {
    std::string csv_path;
    std::string figure;  // picks metric and axis labels
    std::string out_path;
};

// Each command returns a process exit status and reports problems on the
// diagnostic stream. They never throw.
int cmd_sweep(const SweepArgs& args, std::ostream& diag);
int cmd_run(const RunArgs& args, std::ostream& diag);
int cmd_plot(const PlotArgs& args, std::ostream& diag);

// An existing path or one containing a separator is used as given; a bare
// name is looked up in the scenario directory (FEMTOSIM_SCENARIO_DIR when
// set, "scenarios" otherwise), trying the name verbatim and with ".scn".
std::string resolve_scenario_path(const std::string& ref);

}  // namespace femtosim
