#pragma once

#include "esm/geometry.hpp"
#include "esm/imaging.hpp"

#include <cstdint>
#include <optional>
#include <string>

// JSON run configuration shared by every subcommand. One document describes
// the scene, the incident directions, the noise model, the ESM parameters,
// the forward-solver discretization and the output options. Unknown keys are
// rejected so that typos fail loudly instead of silently using defaults.

namespace esm::cli {

struct RunConfig {
    // scene
    ShapeKind shape = ShapeKind::Disk;
    Vec2 shift{};
    double disk_radius = 1.0;
    double kappa = 2.0;

    // incident directions
    DirectionSet directions = named_direction_set("S1_inc_4");

    // noise
    double delta = 0.0; // 0 = clean data
    std::optional<std::uint64_t> seed;

    // ESM parameters
    IndicatorConfig esm{};    // kind, alpha, grid, r0, gamma, p_max, n_trunc
    std::size_t n_obs = 32;   // observation directions N

    // MFS forward solver
    std::size_t m_src = 320;
    std::size_t m_col = 640;
    double tau = 0.85;

    // output
    std::string out_dir = ".";
    bool emit_heatmap = false;
};

/// Parse and validate a config file; throws ConfigError with the offending
/// key on malformed input or unknown keys.
RunConfig load_run_config(const std::string& path);

/// Human-readable listing of every config key and its default, shown by
/// --help.
extern const char* const kConfigKeyHelp;

} // namespace esm::cli
