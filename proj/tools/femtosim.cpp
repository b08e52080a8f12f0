#include <iostream>
#include <set>
#include <string>

#include "CLI11.hpp"
#include "femtosim/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"femtocell on-demand activation simulator"};
    app.require_subcommand(1);

    const std::set<std::string> figures = {"fig4", "fig5", "fig6", "fig7"};

    femtosim::SweepArgs sweep_args;
    CLI::App* sweep =
        app.add_subcommand("sweep", "run a figure sweep and write its CSV");
    sweep->add_option("--figure", sweep_args.figure,
                      "which curve pair to compute (fig4|fig5|fig6|fig7)")
        ->required()
        ->check(CLI::IsMember(figures));
    sweep->add_option("--scenario", sweep_args.scenario,
                      "scenario file or bare scenario name");
    sweep->add_option("--out", sweep_args.out_path, "output CSV path")
        ->required();
    sweep->add_option("--trials", sweep_args.trials,
                      "override the scenario trial count")
        ->check(CLI::PositiveNumber);
    CLI::Option* sweep_seed =
        sweep->add_option("--seed", sweep_args.seed, "override the RNG seed");

    femtosim::RunArgs run_args;
    CLI::App* run = app.add_subcommand(
        "run", "execute a scenario and write its event log");
    run->add_option("--scenario", run_args.scenario,
                    "scenario file or bare scenario name")
        ->required();
    run->add_option("--out", run_args.out_path, "output event log path")
        ->required();
    CLI::Option* run_seed =
        run->add_option("--seed", run_args.seed, "override the RNG seed");

    femtosim::PlotArgs plot_args;
    CLI::App* plot =
        app.add_subcommand("plot", "render a sweep CSV as an SVG figure");
    plot->add_option("--csv", plot_args.csv_path, "input CSV path")
        ->required();
    plot->add_option("--figure", plot_args.figure,
                     "axis labels and metric (fig4|fig5|fig6|fig7)")
        ->required()
        ->check(CLI::IsMember(figures));
    plot->add_option("--out", plot_args.out_path, "output SVG path")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? femtosim::kExitOk : femtosim::kExitUsage;
    }

    if (sweep->parsed()) {
        sweep_args.has_seed = sweep_seed->count() > 0;
        return femtosim::cmd_sweep(sweep_args, std::cerr);
    }
    if (run->parsed()) {
        run_args.has_seed = run_seed->count() > 0;
        return femtosim::cmd_run(run_args, std::cerr);
    }
    return femtosim::cmd_plot(plot_args, std::cerr);
}
