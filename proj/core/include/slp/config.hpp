#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "slp/core_model.hpp"
#include "slp/mbe_solver.hpp"
#include "slp/susceptibility.hpp"

namespace slp {

enum class ScenarioKind { Simulation, Comb, Spectrum };

enum class InitialKind {
    StoredGaussian, ///< spin Gaussian, all fields zero
    FullStorage,    ///< photonic polariton launched under the control at t0
};

struct InitialCondition {
    InitialKind kind = InitialKind::StoredGaussian;
    double width = 10.0;
    double center = 0.0;
    double amplitude = 1.0;
    double t0 = 0.0;
};

struct RunSettings {
    Scheme scheme = Scheme::Full;
    double t_end = 0.0;
    std::size_t snapshots = 41;
    double observe_interval = 1.0;
    double center = 0.0; ///< reference point for the second moment
};

struct AnalysisSettings {
    bool exact_width = false;
    bool diffusive_decay = false;
    bool ou_decay = false;
    bool drift = false;
    std::optional<double> normalize_at;
    double from = 0.0; ///< overlays and fits use samples with t >= from
    std::optional<double> until;
    std::optional<double> exact_width_g0; ///< default: l_abs
};

struct SpectrumSettings {
    double omega_min = -0.02;
    double omega_max = 0.02;
    std::size_t samples = 401;
    StandingWave wave;
    std::vector<ChiMethod> methods{ChiMethod::Truncated, ChiMethod::CoupledMode};
    std::vector<std::size_t> n_max{5};
};

struct CombSettings {
    double snapshot_time = 0.0; ///< time at which matched fields are compared
};

struct ScenarioConfig {
    std::string name;
    std::string description;
    ScenarioKind kind = ScenarioKind::Simulation;
    PhysicalParams params;
    Grid grid;
    ControlProfile profile;
    InitialCondition initial;
    RunSettings run;
    AnalysisSettings analysis;
    std::optional<SpectrumSettings> spectrum;
    std::optional<CombSettings> comb;
    std::string output_directory;
    std::filesystem::path source;
    std::vector<std::string> warnings;
};

/// Parses and validates a scenario file. Schema violations raise ConfigError
/// with "path:line: key: message"; physics refusals (CFL, thin medium for a
/// stored pulse, pulse touching the boundary) raise ConfigError as well.
[[nodiscard]] ScenarioConfig load_config(const std::filesystem::path& path);
[[nodiscard]] ScenarioConfig parse_config(const std::string& text,
                                          const std::string& source_name = "<string>");

[[nodiscard]] const char* kind_name(ScenarioKind k);
[[nodiscard]] const char* initial_name(InitialKind k);
[[nodiscard]] const char* scheme_name(Scheme s);

/// Scenario directory: $SLP_SCENARIO_DIR if set, else the installed default.
[[nodiscard]] std::filesystem::path scenario_directory();

/// Output root: $SLP_OUT_DIR if set, else "slp-out".
[[nodiscard]] std::filesystem::path default_output_root();

} // namespace slp
