// averager: zero-Hopf averaging toolkit for the jerk system.
//
//   averager classify --config run.json
//   averager orbits   --config run.json --out results/

#include "zerohopf/commands.hpp"
#include "zerohopf/errors.hpp"

#include "CLI11.hpp"

#include <iostream>

int main(int argc, char** argv) {
    using namespace zerohopf;

    CLI::App app{"Averaging-theory toolkit for the zero-Hopf bifurcation of the 3-D jerk system"};
    std::string config_path;
    std::string out_dir;
    bool quiet = false;
    bool as_json = false;
    app.add_option("--config", config_path, "run configuration (JSON)")->required();
    app.add_option("--out", out_dir, "output directory (overrides output_dir)");
    app.add_flag("--quiet", quiet, "suppress the human-readable report");
    app.add_flag("--json", as_json, "print the machine-readable summary to stdout");
    app.require_subcommand(1);
    app.fallthrough();
    auto* classify = app.add_subcommand("classify", "equilibria, zero-Hopf test and predicted orbit count");
    auto* average = app.add_subcommand("average", "numeric averaged functions against the closed forms");
    auto* orbits = app.add_subcommand("orbits", "locate the predicted periodic orbits by shooting");
    auto* sweep = app.add_subcommand("sweep", "follow the orbits as eps decreases");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        RunConfig config = load_config(config_path);
        if (!out_dir.empty()) config.output_dir = out_dir;

        CommandResult result;
        if (classify->parsed()) result = cmd_classify(config);
        if (average->parsed()) result = cmd_average(config);
        if (orbits->parsed()) result = cmd_orbits(config);
        if (sweep->parsed()) result = cmd_sweep(config);

        if (as_json) {
            std::cout << result.summary.dump(2) << '\n';
        } else if (!quiet) {
            std::cout << result.text;
        }
        return result.exit_code;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const HypothesisViolated& e) {
        std::cerr << "hypothesis violated: " << e.what() << '\n';
        return kExitHypothesis;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
}
