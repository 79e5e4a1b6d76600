#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "slp/config.hpp"
#include "slp/errors.hpp"
#include "slp/scenario.hpp"

using namespace slp;
namespace fs = std::filesystem;

namespace {

const std::string kMinimal = R"(name = "mini"

[params]
gamma = 1.0

[grid]
z_min = -60.0
z_max = 60.0
n_points = 601

[control]
kind = "homogeneous"
omega_plus = 1.0
omega_minus = 1.0

[initial]
kind = "stored-gaussian"

[run]
t_end = 6.0
snapshots = 3
)";

std::string replace(std::string text, const std::string& from, const std::string& to)
{
    const auto pos = text.find(from);
    REQUIRE(pos != std::string::npos);
    return text.replace(pos, from.size(), to);
}

std::string error_of(const std::string& text)
{
    try {
        (void)parse_config(text, "mini.toml");
    } catch (const ConfigError& e) {
        return e.what();
    }
    return {};
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

fs::path scratch(const std::string& tag)
{
    const auto dir = fs::temp_directory_path() / ("slp-unit-" + tag);
    fs::remove_all(dir);
    return dir;
}

} // namespace

TEST_SUITE("config") {

TEST_CASE("minimal config materializes defaults")
{
    const auto cfg = parse_config(kMinimal);
    CHECK(cfg.name == "mini");
    CHECK(cfg.kind == ScenarioKind::Simulation);
    CHECK(cfg.params.coupling == 1.0);
    CHECK(cfg.params.light_speed == 1.0);
    CHECK(cfg.params.gamma0 == 0.0);
    CHECK(cfg.grid.dt == doctest::Approx(0.2));
    CHECK(cfg.initial.width == 10.0);
    CHECK(cfg.run.scheme == Scheme::Full);
    CHECK(cfg.run.observe_interval == 1.0);
    CHECK(cfg.output_directory == "mini");
    CHECK(cfg.warnings.empty());
}

TEST_CASE("schema violations carry file, line and key")
{
    auto msg = error_of(replace(kMinimal, "gamma = 1.0", "gamma = 1.0\ngama = 2.0"));
    CHECK(msg.find("mini.toml:5:") != std::string::npos);
    CHECK(msg.find("params.gama") != std::string::npos);
    CHECK(msg.find("unknown key") != std::string::npos);

    msg = error_of(replace(kMinimal, "n_points = 601", "n_points = \"many\""));
    CHECK(msg.find("mini.toml:9:") != std::string::npos);
    CHECK(msg.find("grid.n_points") != std::string::npos);

    msg = error_of(replace(kMinimal, "kind = \"homogeneous\"", "kind = \"lasers\""));
    CHECK(msg.find("control.kind") != std::string::npos);

    msg = error_of(replace(kMinimal, "t_end = 6.0", "t_end = 6.0 ]"));
    CHECK(msg.find("mini.toml") != std::string::npos);
}

TEST_CASE("physics checks refuse inconsistent setups")
{
    auto msg = error_of(replace(kMinimal, "n_points = 601", "n_points = 601\ndt = 0.1"));
    CHECK(msg.find("grid.dt") != std::string::npos);

    msg = error_of(replace(kMinimal, "gamma = 1.0", "gamma = 20.0"));
    CHECK(msg.find("mini.toml: medium is optically thin") == 0);

    msg = error_of(replace(kMinimal, "kind = \"stored-gaussian\"",
                           "kind = \"stored-gaussian\"\nwidth = 0.5"));
    CHECK(msg.find("initial width") != std::string::npos);

    msg = error_of(replace(kMinimal, "kind = \"stored-gaussian\"",
                           "kind = \"stored-gaussian\"\ncenter = 40.0"));
    CHECK(msg.find("boundary") != std::string::npos);

    msg = error_of(replace(kMinimal, "t_end = 6.0", "t_end = -1.0"));
    CHECK(msg.find("run.t_end") != std::string::npos);
}

TEST_CASE("adiabatic scheme with coarse steps warns")
{
    auto text = replace(kMinimal, "snapshots = 3", "snapshots = 3\nscheme = \"adiabatic\"");
    text = replace(text, "n_points = 601", "n_points = 101");
    text = replace(text, "[initial]\nkind = \"stored-gaussian\"",
                   "[initial]\nkind = \"stored-gaussian\"\nwidth = 8.0");
    const auto cfg = parse_config(text);
    REQUIRE(cfg.warnings.size() == 1);
    CHECK(cfg.warnings[0].find("adiabatic") != std::string::npos);
}

TEST_CASE("canned scenarios")
{
    const fs::path dir = SLP_TEST_SCENARIO_DIR;
    const auto entries = list_scenarios(dir);
    std::vector<std::string> names;
    for (const auto& e : entries) names.push_back(e.name);
    CHECK(names == std::vector<std::string>{"comb-demo", "drift-demo", "fig2", "fig3", "fig4",
                                            "fig5", "fig6", "figA"});
    for (const auto& e : entries) CHECK_NOTHROW((void)load_config(e.path));

    const auto fig2 = load_config(dir / "fig2.toml");
    CHECK(fig2.params.gamma == 1.0);
    CHECK(fig2.params.two_photon_detuning == 0.0);
    CHECK(fig2.params.one_photon_detuning == 0.0);
    CHECK(fig2.params.carrier_offset == 0.0);
    CHECK(fig2.initial.width == 10.0);
    const auto& sched = std::get<TanhSchedule>(fig2.profile.spec());
    CHECK(sched.store_time == 65.0);
    CHECK(sched.retrieve_time == 300.0);
    CHECK(sched.rate == 0.1);
    CHECK(sched.retrieve_level == doctest::Approx(1.0 / 3.0));

    const auto fig5 = load_config(dir / "fig5.toml");
    CHECK(fig5.params.gamma == 0.05);
    const auto& foci = std::get<GaussianFoci>(fig5.profile.spec());
    CHECK(foci.plus_focus.at(0.0) == doctest::Approx(-20.0));
    CHECK(foci.minus_focus.at(0.0) == doctest::Approx(20.0));
    CHECK(foci.plus_focus.at(1e4) == doctest::Approx(-10.0));
    CHECK(foci.minus_focus.at(1e4) == doctest::Approx(10.0));
    CHECK(foci.plus_focus.move_rate == 0.0125);
    CHECK(foci.plus_focus.move_time == 700.0);

    const auto figa = load_config(dir / "figA.toml");
    REQUIRE(figa.spectrum);
    CHECK(figa.spectrum->wave.total_intensity() == doctest::Approx(0.01));
    CHECK(figa.spectrum->omega_max == doctest::Approx(0.02));

    CHECK(resolve_scenario("fig3") == dir / "fig3.toml");
    CHECK(resolve_scenario("some/where.toml") == fs::path("some/where.toml"));
}

TEST_CASE("runs are deterministic and write the documented files")
{
    const auto cfg = parse_config(kMinimal);
    const auto root_a = scratch("det-a");
    const auto root_b = scratch("det-b");
    const auto a = run_scenario(cfg, {root_a, std::nullopt});
    const auto b = run_scenario(cfg, {root_b, std::nullopt});
    REQUIRE(a.exit_code == kExitOk);
    REQUIRE(b.exit_code == kExitOk);

    const auto obs = slurp(a.directory / "observables.csv");
    CHECK(obs.rfind("t,width_sq,first_moment,n_tot,peak,ratio_re,ratio_im\n", 0) == 0);
    CHECK(obs == slurp(b.directory / "observables.csv"));
    std::size_t snaps = 0;
    for (const auto& e : fs::directory_iterator(a.directory / "snapshots")) {
        ++snaps;
        const auto other = b.directory / "snapshots" / e.path().filename();
        const auto text = slurp(e.path());
        CHECK(text.rfind("z,reE+,imE+,reE-,imE-,reSbc,imSbc\n", 0) == 0);
        CHECK(text == slurp(other));
    }
    CHECK(snaps == 3);

    const auto manifest = nlohmann::json::parse(slurp(a.manifest));
    CHECK(manifest.contains("units"));
    CHECK(manifest["scenario"] == "mini");
    CHECK(manifest["failure"].is_null());
    CHECK(manifest["config"]["grid"]["n_points"] == 601);

    RunOverrides more{root_a, 5};
    const auto c = run_scenario(cfg, more);
    snaps = 0;
    for ([[maybe_unused]] const auto& e : fs::directory_iterator(c.directory / "snapshots")) ++snaps;
    CHECK(snaps == 5);
    fs::remove_all(root_a);
    fs::remove_all(root_b);
}

TEST_CASE("numerical failure keeps partial output and reports exit code 3")
{
    auto text = replace(kMinimal, "[initial]\nkind = \"stored-gaussian\"",
                        "[initial]\nkind = \"stored-gaussian\"\namplitude = 1e308");
    text = replace(text, "omega_plus = 1.0", "omega_plus = 1e3");
    const auto cfg = parse_config(text);
    const auto root = scratch("fail");
    const auto out = run_scenario(cfg, {root, std::nullopt});
    CHECK(out.exit_code == kExitNumerical);
    REQUIRE(out.failure);
    CHECK(out.failure->find("non-finite") != std::string::npos);
    CHECK(fs::exists(out.directory / "observables.csv"));
    const auto manifest = nlohmann::json::parse(slurp(out.manifest));
    CHECK(manifest["failure"]["message"] == *out.failure);
    fs::remove_all(root);
}

TEST_CASE("spectrum scenario writes the susceptibility table")
{
    const std::string text = R"(name = "chi"
kind = "spectrum"
[params]
gamma = 1.0
[spectrum]
omega_plus = 0.1
omega_minus = 0.1
omega_min = -0.01
omega_max = 0.01
samples = 5
methods = ["truncated", "coupled-mode"]
n_max = [0, 2]
)";
    const auto cfg = parse_config(text);
    const auto root = scratch("chi");
    const auto out = run_scenario(cfg, {root, std::nullopt});
    REQUIRE(out.exit_code == kExitOk);
    const auto csv = slurp(out.directory / "spectrum.csv");
    std::size_t lines = 0;
    for (char ch : csv) lines += ch == '\n';
    CHECK(lines == 1 + 5 * 3);
    CHECK(out.results.contains("max_diff_truncated_nmax_2"));
    fs::remove_all(root);
}

}
