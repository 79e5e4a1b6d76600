#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "slp/config.hpp"

namespace slp {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

struct RunOverrides {
    std::optional<std::filesystem::path> output_root;
    std::optional<std::size_t> snapshots;
};

struct ScenarioOutcome {
    int exit_code = kExitOk;
    std::filesystem::path directory;
    std::filesystem::path manifest;
    std::optional<std::string> failure;
    std::vector<std::string> warnings;
    std::map<std::string, double> results; ///< scalar analysis results, also in the manifest
};

/// Runs the scenario and writes, under <root>/<output>:
///   manifest.json, observables.csv, snapshots/snap_NNNN.csv and the
///   configured overlays (simulation and comb), or spectrum.csv (spectrum).
/// A NumericalError mid-run keeps the partial outputs, records the failure in
/// the manifest and returns kExitNumerical. CSV output depends only on the
/// configuration.
[[nodiscard]] ScenarioOutcome run_scenario(const ScenarioConfig& config,
                                           const RunOverrides& overrides = {});

struct ScenarioEntry {
    std::string name;
    std::string description;
    std::filesystem::path path;
};

/// *.toml files in `dir`, sorted by file name; unparsable files are listed
/// with the diagnostic as description.
[[nodiscard]] std::vector<ScenarioEntry> list_scenarios(const std::filesystem::path& dir);

/// Resolves a bare scenario name ("fig2") against the scenario directory;
/// paths are returned unchanged.
[[nodiscard]] std::filesystem::path resolve_scenario(const std::string& name_or_path);

} // namespace slp
