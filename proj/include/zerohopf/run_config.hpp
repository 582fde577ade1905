#pragma once

#include "zerohopf/jerk_model.hpp"
#include "zerohopf/normal_form.hpp"
#include "zerohopf/ode.hpp"
#include "zerohopf/quadrature.hpp"

#include "json.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace zerohopf {

// (r, w) grid used by the `average` command.
struct AverageGrid {
    double r_min = 0.5;
    double r_max = 8.0;
    double w_min = -2.0;
    double w_max = 2.0;
    int r_points = 20;
    int w_points = 20;

    friend bool operator==(const AverageGrid&, const AverageGrid&) = default;
};

struct RunConfig {
    std::optional<UnfoldingParams> unfolding;
    std::optional<SystemParams> params; // direct (a, b, c) mode for `classify`
    std::optional<double> eps;
    std::vector<double> eps_list;
    QuadratureSpec quadrature;
    IntegratorSpec integrator;
    AverageGrid grid;
    int random_draws = 0; // extra randomized oracle checks in `average`
    std::string output_dir;
    std::uint64_t seed = 0;

    friend bool operator==(const RunConfig& a, const RunConfig& b);
};

// Parses and validates; unknown keys and wrong types raise ConfigError.
[[nodiscard]] RunConfig parse_config(const nlohmann::json& doc);
[[nodiscard]] RunConfig load_config(const std::filesystem::path& path);

// Canonical form; parse_config(config_to_json(c)) == c.
[[nodiscard]] nlohmann::json config_to_json(const RunConfig& config);

} // namespace zerohopf
