#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "tfch/spectral_field.hpp"
#include "tfch/stepper.hpp"
#include "tfch/time_mesh.hpp"

namespace tfch {

enum class MeshMode { uniform, graded, adaptive };
enum class InitialProfile { star, random, wedge, thinfilm, constant };

/// Everything a run needs: physics, grid, time marching, solver, initial
/// condition, and output wiring. Built from a `key = value` config file;
/// see the README for the key reference.
struct RunConfig {
    PhysicalParams physics;
    Grid grid{64, 64, 1.0, 1.0};
    MeshMode mode = MeshMode::uniform;
    double final_time = 1.0;
    int steps = 100;        // uniform/graded meshes
    double grading = 2.0;   // graded meshes
    AdaptiveParams adaptive;
    ExtrapolationVariant variant = ExtrapolationVariant::standard;
    NonlinearSolveConfig solve;
    InitialProfile ic = InitialProfile::random;
    double ic_mean = 0.0;
    double ic_amplitude = 1e-3;
    double ic_x0 = 0.5;
    double ic_y0 = 0.5;
    double ic_value = 0.0;
    double ic_r0 = 0.05;
    std::uint64_t seed = 1;
    std::string out_dir = "out";
    std::vector<double> snapshot_times;

    void validate() const;

    /// Key = value echo of every setting, parseable by parse_config.
    std::string serialize() const;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parse a line-oriented `key = value` config with `#` comments. Unknown,
/// duplicate, malformed, or missing required keys raise ConfigError naming
/// the line and key.
RunConfig parse_config(const std::string& text);

RunConfig load_config(const std::filesystem::path& path);

const char* to_string(MeshMode mode);
const char* to_string(InitialProfile ic);
const char* to_string(ExtrapolationVariant variant);

} // namespace tfch
