#include "commands.hpp"

#include "qthermo/errors.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

using qthermo::NumericalError;
using qthermo::ValidationError;
using qthermo::WitnessInapplicable;
using namespace qthermo::cli;

int main(int argc, char** argv) {
    CLI::App app{"single-qubit open-system thermodynamics toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    std::string csv_path;
    std::string preset_id;
    double horizon = 0.0;
    long grid = 0;
    std::vector<std::string> columns;

    auto* sim = app.add_subcommand("simulate", "evolve a state and write the ledger CSV");
    auto* meas = app.add_subcommand("measure", "evaluate a non-Markovianity measure");
    auto* ev = app.add_subcommand("events", "locate sudden death, crossings, or freezing");
    auto* plot = app.add_subcommand("plot", "render columns of a ledger CSV to SVG");
    auto* pre = app.add_subcommand("preset", "run a canned scenario");

    for (auto* cmd : {sim, meas, ev}) {
        cmd->add_option("--config", config_path, "scenario file")->required();
        cmd->add_option("--horizon", horizon, "override time.horizon");
        cmd->add_option("--grid", grid, "override time.grid");
    }
    for (auto* cmd : {sim, meas, ev, plot, pre}) {
        cmd->add_option("--out", out_dir, "output directory (default: .)");
    }
    plot->add_option("csv", csv_path, "CSV produced by this tool")->required();
    plot->add_option("--columns", columns, "columns to draw (default: all but the first)")
        ->delimiter(',');

    std::string preset_desc = "one of:";
    for (const auto& id : preset_ids()) preset_desc += " " + id;
    pre->add_option("id", preset_id, preset_desc)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (const char* env = std::getenv("QTHERMO_OUT"); env && *env) out_dir = env;

    try {
        if (plot->parsed()) {
            run_plot(csv_path, columns, out_dir);
        } else if (pre->parsed()) {
            run_preset(preset_id, out_dir);
        } else {
            ScenarioConfig cfg = load_config(config_path);
            for (auto* cmd : {sim, meas, ev}) {
                if (!cmd->parsed()) continue;
                if (cmd->count("--horizon")) cfg.horizon = horizon;
                if (cmd->count("--grid")) cfg.grid = grid;
            }
            if (sim->parsed()) {
                run_simulate(cfg, out_dir);
            } else if (meas->parsed()) {
                run_measure(cfg, out_dir);
            } else {
                run_events(cfg, out_dir);
            }
        }
        return 0;
    } catch (const WitnessInapplicable& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
