#pragma once

#include "zerohopf/run_config.hpp"

#include "json.hpp"

#include <string>

namespace zerohopf {

// Process exit codes of the command-line front end.
enum ExitCode : int {
    kExitOk = 0,
    kExitConfig = 1,
    kExitHypothesis = 2,
    kExitOracleMismatch = 3,
    kExitShootingShortfall = 4,
};

struct CommandResult {
    int exit_code = kExitOk;
    nlohmann::json summary; // machine-readable report, also written to <out>/summary.json
    std::string text;       // human-readable report
};

// Each command writes its files below config.output_dir when it is non-empty.
[[nodiscard]] CommandResult cmd_classify(const RunConfig& config);
[[nodiscard]] CommandResult cmd_average(const RunConfig& config);
[[nodiscard]] CommandResult cmd_orbits(const RunConfig& config);
[[nodiscard]] CommandResult cmd_sweep(const RunConfig& config);

// Shortest decimal text that parses back to the same double.
[[nodiscard]] std::string shortest(double v);

// "t,x,y,z" CSV with 17 significant digits.
void write_trace_csv(const std::filesystem::path& file, const std::vector<double>& times,
                     const std::vector<State3>& states);

} // namespace zerohopf
