// slp: command-line runner for stationary-light scenarios.

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "slp/errors.hpp"
#include "slp/scenario.hpp"

namespace {

struct JobResult {
    int code = slp::kExitOk;
    std::string report;
};

JobResult run_one(const std::string& arg, const slp::RunOverrides& overrides, bool spectrum_only)
{
    JobResult r;
    std::ostringstream os;
    try {
        const auto cfg = slp::load_config(slp::resolve_scenario(arg));
        if (spectrum_only && cfg.kind != slp::ScenarioKind::Spectrum)
            throw slp::ConfigError(arg + ": scan-chi needs a kind = \"spectrum\" scenario");
        const auto out = slp::run_scenario(cfg, overrides);
        for (const auto& w : out.warnings) os << cfg.name << ": warning: " << w << '\n';
        for (const auto& [k, v] : out.results) os << cfg.name << ": " << k << " = " << v << '\n';
        if (out.failure) os << cfg.name << ": numerical failure: " << *out.failure << '\n';
        os << cfg.name << ": manifest " << out.manifest.generic_string() << '\n';
        r.code = out.exit_code;
    } catch (const slp::ConfigError& e) {
        os << "config error: " << e.what() << '\n';
        r.code = slp::kExitConfig;
    } catch (const slp::DomainError& e) {
        os << "config error: " << e.what() << '\n';
        r.code = slp::kExitConfig;
    } catch (const std::filesystem::filesystem_error& e) {
        os << "output error: " << e.what() << '\n';
        r.code = slp::kExitConfig;
    }
    r.report = os.str();
    return r;
}

int run_many(const std::vector<std::string>& configs, const slp::RunOverrides& overrides,
             std::size_t jobs, bool spectrum_only)
{
    std::vector<JobResult> results(configs.size());
    std::atomic<std::size_t> next{0};
    std::mutex print;
    auto worker = [&] {
        for (std::size_t i = next++; i < configs.size(); i = next++) {
            results[i] = run_one(configs[i], overrides, spectrum_only);
            const std::lock_guard lock(print);
            std::cout << results[i].report << std::flush;
        }
    };
    const std::size_t n = std::clamp<std::size_t>(jobs, 1, configs.size());
    std::vector<std::thread> pool;
    for (std::size_t k = 0; k + 1 < n; ++k) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    int code = slp::kExitOk;
    for (const auto& r : results) code = std::max(code, r.code);
    return code;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Stationary light pulse simulator and analytic toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(SLP_TOOL_VERSION));

    std::vector<std::string> configs;
    std::string out_dir;
    std::size_t snapshots = 0;
    std::size_t jobs = 1;

    auto* run = app.add_subcommand("run", "run one or more scenarios (file path or canned name)");
    run->add_option("config", configs, "scenario file(s) or canned scenario name(s)")->required();
    run->add_option("--out", out_dir, "output root (default: $SLP_OUT_DIR or ./slp-out)");
    run->add_option("--snapshots", snapshots, "override the snapshot count (>= 2)");
    run->add_option("--jobs", jobs, "scenarios run concurrently")->check(CLI::PositiveNumber);

    std::string chi_config;
    auto* scan = app.add_subcommand("scan-chi", "susceptibility spectrum of a spectrum scenario");
    scan->add_option("config", chi_config, "scenario file or canned name")->required();
    scan->add_option("--out", out_dir, "output root (default: $SLP_OUT_DIR or ./slp-out)");

    auto* list = app.add_subcommand("list-scenarios", "list canned scenarios");

    std::string check_config;
    auto* validate = app.add_subcommand("validate", "parse and check a scenario without running it");
    validate->add_option("config", check_config, "scenario file or canned name")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : slp::kExitConfig;
    }

    slp::RunOverrides overrides;
    if (!out_dir.empty()) overrides.output_root = out_dir;
    if (snapshots > 0) overrides.snapshots = snapshots;

    if (*run) return run_many(configs, overrides, jobs, false);
    if (*scan) return run_many({chi_config}, overrides, 1, true);
    if (*list) {
        const auto dir = slp::scenario_directory();
        const auto entries = slp::list_scenarios(dir);
        if (entries.empty()) std::cout << "no scenarios found in " << dir.generic_string() << '\n';
        for (const auto& e : entries)
            std::cout << e.name << "\t" << e.path.generic_string() << "\t" << e.description << '\n';
        return slp::kExitOk;
    }
    if (*validate) {
        try {
            const auto cfg = slp::load_config(slp::resolve_scenario(check_config));
            std::cout << cfg.name << ": ok (" << slp::kind_name(cfg.kind) << ")\n";
            for (const auto& w : cfg.warnings) std::cout << cfg.name << ": warning: " << w << '\n';
            return slp::kExitOk;
        } catch (const slp::ConfigError& e) {
            std::cerr << "config error: " << e.what() << '\n';
            return slp::kExitConfig;
        } catch (const slp::DomainError& e) {
            std::cerr << "config error: " << e.what() << '\n';
            return slp::kExitConfig;
        }
    }
    return slp::kExitConfig;
}
