#include "slp/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "slp/comb.hpp"
#include "slp/errors.hpp"
#include "slp/fokker_planck.hpp"
#include "slp/normal_modes.hpp"
#include "slp/numerics.hpp"
#include "slp/output.hpp"

#ifndef SLP_VERSION
#define SLP_VERSION "unknown"
#endif

namespace slp {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr const char* kUnitsBanner =
    "units: g_p = g sqrt(N) = 1 and c = 1; times in 1/g_p, lengths in c/g_p, rates in g_p; "
    "l_abs = c gamma / g_p^2";

json complex_json(cplx v) { return json::array({v.real(), v.imag()}); }

json switch_json(const std::optional<SwitchOn>& s)
{
    if (!s) return nullptr;
    return {{"time", s->time}, {"rate", s->rate}};
}

json focus_json(const FocusTrack& f)
{
    return {{"start", f.start}, {"end", f.end}, {"move_time", f.move_time}, {"move_rate", f.move_rate}};
}

json control_json(const ControlProfile& profile)
{
    json j;
    j["kind"] = profile.kind_name();
    std::visit(
        [&](const auto& c) {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, HomogeneousControl>) {
                j["omega_plus"] = complex_json(c.omega_plus);
                j["omega_minus"] = complex_json(c.omega_minus);
                j["switch_on"] = switch_json(c.switch_on);
            } else if constexpr (std::is_same_v<T, TanhSchedule>) {
                j["store_time"] = c.store_time;
                j["retrieve_time"] = c.retrieve_time;
                j["rate"] = c.rate;
                j["retrieve_level"] = c.retrieve_level;
                j["omega_max"] = c.omega_max;
            } else if constexpr (std::is_same_v<T, GaussianFoci>) {
                j["plus_focus"] = focus_json(c.plus_focus);
                j["minus_focus"] = focus_json(c.minus_focus);
                j["amplitude"] = c.focus_amplitude;
                j["rayleigh_range"] = c.rayleigh_range;
                j["law"] = c.law == BeamLaw::Paraxial ? "paraxial" : "literal";
                j["window"] = c.validity_window
                                  ? json::array({c.validity_window->first, c.validity_window->second})
                                  : json(nullptr);
                j["switch_on"] = switch_json(c.switch_on);
            } else if constexpr (std::is_same_v<T, LinearRatioControl>) {
                j["omega_total"] = c.omega_total;
                j["length_scale"] = c.length_scale;
                j["center"] = c.center;
                j["switch_on"] = switch_json(c.switch_on);
            } else if constexpr (std::is_same_v<T, CombControl>) {
                json lines = json::array();
                for (const auto& l : c.lines)
                    lines.push_back({{"detuning", l.detuning},
                                     {"omega_plus", complex_json(l.omega_plus)},
                                     {"omega_minus", complex_json(l.omega_minus)}});
                j["lines"] = lines;
            }
        },
        profile.spec());
    return j;
}

json config_json(const ScenarioConfig& cfg, std::size_t snapshots)
{
    json j;
    const auto& p = cfg.params;
    j["params"] = {{"coupling", p.coupling},
                   {"gamma", p.gamma},
                   {"gamma0", p.gamma0},
                   {"light_speed", p.light_speed},
                   {"one_photon_detuning", p.one_photon_detuning},
                   {"two_photon_detuning", p.two_photon_detuning},
                   {"carrier_offset", p.carrier_offset},
                   {"wavevector_mismatch", p.wavevector_mismatch},
                   {"absorption_length", p.absorption_length()}};
    if (cfg.kind == ScenarioKind::Spectrum) {
        const auto& s = *cfg.spectrum;
        json methods = json::array();
        for (auto m : s.methods) methods.push_back(method_name(m));
        j["spectrum"] = {{"omega_min", s.omega_min},
                         {"omega_max", s.omega_max},
                         {"samples", s.samples},
                         {"omega_plus", complex_json(s.wave.plus)},
                         {"omega_minus", complex_json(s.wave.minus)},
                         {"methods", methods},
                         {"n_max", s.n_max},
                         {"chi_scale", "2 g^2 N / (gamma omega_0) = 1"}};
        return j;
    }
    j["grid"] = {{"z_min", cfg.grid.z_min},
                 {"z_max", cfg.grid.z_max},
                 {"n_points", cfg.grid.n_points},
                 {"dz", cfg.grid.dz()},
                 {"dt", cfg.grid.dt}};
    j["control"] = control_json(cfg.profile);
    j["initial"] = {{"kind", initial_name(cfg.initial.kind)},
                    {"width", cfg.initial.width},
                    {"center", cfg.initial.center},
                    {"amplitude", cfg.initial.amplitude},
                    {"t0", cfg.initial.t0}};
    j["run"] = {{"scheme", scheme_name(cfg.run.scheme)},
                {"t_end", cfg.run.t_end},
                {"snapshots", snapshots},
                {"observe_interval", cfg.run.observe_interval},
                {"center", cfg.run.center}};
    const auto& a = cfg.analysis;
    j["analysis"] = {{"exact_width", a.exact_width},
                     {"diffusive_decay", a.diffusive_decay},
                     {"ou_decay", a.ou_decay},
                     {"drift", a.drift},
                     {"normalize_at", a.normalize_at ? json(*a.normalize_at) : json(nullptr)},
                     {"from", a.from},
                     {"until", a.until ? json(*a.until) : json(nullptr)},
                     {"exact_width_g0", a.exact_width_g0 ? json(*a.exact_width_g0) : json(nullptr)}};
    if (cfg.comb) j["comb"] = {{"snapshot_time", cfg.comb->snapshot_time}};
    return j;
}

void write_file(const fs::path& path, const std::function<void(std::ostream&)>& body)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + path.string());
    body(out);
    if (!out) throw ConfigError("write failed for " + path.string());
}

struct LocalControl {
    double v_gr = 0.0;
    double cos2phi = 0.0;
    double sin2phi = 0.0;
};

LocalControl local_control(const ControlProfile& profile, const PhysicalParams& params, double z,
                           double t)
{
    const auto a = profile.at(z, t);
    if (a.total_intensity() == 0.0) return {};
    const auto ang = mixing_angles(params, a.plus, a.minus);
    return {group_velocity(params, ang.theta), std::cos(2.0 * ang.phi), std::sin(2.0 * ang.phi)};
}

std::string snapshot_name(std::size_t k)
{
    std::ostringstream os;
    os << "snap_" << std::setw(4) << std::setfill('0') << k << ".csv";
    return os.str();
}

// Samples of the series inside [from, until].
std::vector<const Observables*> window(const std::vector<Observables>& series,
                                       const AnalysisSettings& a)
{
    std::vector<const Observables*> out;
    for (const auto& o : series)
        if (o.t >= a.from - 1e-9 && (!a.until || o.t <= *a.until + 1e-9)) out.push_back(&o);
    return out;
}

struct Artifacts {
    json files = json::object();
    std::map<std::string, double> results;
    std::vector<std::string> warnings;
};

void simulation_analyses(const ScenarioConfig& cfg, const std::vector<Observables>& series,
                         const fs::path& dir, Artifacts& art)
{
    const auto& a = cfg.analysis;
    const auto& p = cfg.params;
    const double l_abs = p.absorption_length();
    const auto win = window(series, a);
    if (win.empty()) {
        if (a.exact_width || a.diffusive_decay || a.ou_decay || a.drift)
            art.warnings.push_back("analysis window holds no samples; overlays skipped");
        return;
    }

    if (a.exact_width) {
        std::vector<double> times;
        for (const auto* o : win) times.push_back(o->t);
        const double t_start = std::min(a.from, times.front());
        const double d0 = cfg.initial.width * cfg.initial.width;
        const double g0 = a.exact_width_g0.value_or(l_abs);
        auto v = [&](double t) { return local_control(cfg.profile, p, cfg.run.center, t).v_gr; };
        const auto d = exact_width_series(d0, g0, v, l_abs, p.light_speed, t_start, times);
        write_file(dir / "overlay_exact_width.csv", [&](std::ostream& os) { write_overlay_csv(os, times, d); });
        art.files["overlay_exact_width"] = "overlay_exact_width.csv";

        std::vector<double> tc, sim, ana;
        double worst = 0.0;
        for (std::size_t k = 0; k < win.size(); ++k) {
            if (!win[k]->moments_defined) continue;
            tc.push_back(times[k]);
            sim.push_back(win[k]->width_sq);
            ana.push_back(d[k]);
            worst = std::max(worst, std::abs(win[k]->width_sq - d[k]) / d[k]);
        }
        write_file(dir / "width_comparison.csv", [&](std::ostream& os) {
            write_table_csv(os, {"t", "width_sq", "exact_width"}, {tc, sim, ana});
        });
        art.files["width_comparison"] = "width_comparison.csv";
        art.results["exact_width_max_relative_deviation"] = worst;
    }

    if (a.diffusive_decay) {
        const auto& first = *win.front();
        const auto lc = local_control(cfg.profile, p, cfg.run.center, cfg.run.t_end);
        const double d = lc.v_gr * l_abs * lc.sin2phi * lc.sin2phi;
        const double w0 = first.moments_defined && first.width_sq > 0.0 ? std::sqrt(first.width_sq)
                                                                       : cfg.initial.width;
        std::vector<double> t, v;
        double worst = 0.0;
        for (const auto* o : win) {
            t.push_back(o->t);
            v.push_back(diffusive_decay(first.n_tot, w0, d, o->t - first.t));
            worst = std::max(worst, std::abs(o->n_tot - v.back()) / v.back());
        }
        write_file(dir / "overlay_diffusive_decay.csv", [&](std::ostream& os) { write_overlay_csv(os, t, v); });
        art.files["overlay_diffusive_decay"] = "overlay_diffusive_decay.csv";
        art.results["diffusivity"] = d;
        art.results["diffusive_decay_max_relative_deviation"] = worst;
    }

    if (a.ou_decay) {
        const double t_ref = win.front()->t;
        const double l = fit_linear_scale(cfg.profile, t_ref, cfg.run.center);
        const double v = local_control(cfg.profile, p, cfg.run.center, t_ref).v_gr;
        const OUParams ou{l, l_abs, v};
        std::vector<double> t, model, logn;
        for (const auto* o : win) {
            t.push_back(o->t);
            model.push_back(cavity_decay(win.front()->n_tot, ou, o->t - t_ref));
            logn.push_back(std::log(o->n_tot));
        }
        write_file(dir / "overlay_ou_decay.csv", [&](std::ostream& os) { write_overlay_csv(os, t, model); });
        art.files["overlay_ou_decay"] = "overlay_ou_decay.csv";
        art.results["ou_length_scale"] = l;
        art.results["ou_predicted_rate"] = gamma_eff(ou);
        if (t.size() >= 3) art.results["ou_measured_rate"] = -numerics::fit_line(t, logn).slope;
    }

    if (a.drift) {
        std::vector<double> t, x;
        for (const auto* o : win) {
            if (!o->moments_defined) continue;
            t.push_back(o->t);
            x.push_back(o->first_moment);
        }
        if (t.size() >= 3) {
            const auto fit = numerics::fit_line(t, x);
            const auto lc = local_control(cfg.profile, p, cfg.run.center, t.back());
            const double speed = lc.v_gr * lc.cos2phi;
            std::vector<double> pred;
            for (double ti : t) pred.push_back(x.front() + speed * (ti - t.front()));
            write_file(dir / "overlay_drift.csv", [&](std::ostream& os) { write_overlay_csv(os, t, pred); });
            art.files["overlay_drift"] = "overlay_drift.csv";
            art.results["drift_measured_speed"] = fit.slope;
            art.results["drift_predicted_speed"] = speed;
            art.results["drift_predicted_diffusivity"] = lc.v_gr * l_abs * lc.sin2phi * lc.sin2phi;
        } else {
            art.warnings.push_back("drift analysis needs at least 3 samples with defined moments");
        }
    }

    if (a.normalize_at) {
        const auto ref = std::min_element(series.begin(), series.end(), [&](const auto& x, const auto& y) {
            return std::abs(x.t - *a.normalize_at) < std::abs(y.t - *a.normalize_at);
        });
        std::vector<double> t, peak, ntot;
        for (const auto& o : series) {
            t.push_back(o.t);
            peak.push_back(ref->peak > 0.0 ? o.peak / ref->peak : std::nan(""));
            ntot.push_back(ref->n_tot > 0.0 ? o.n_tot / ref->n_tot : std::nan(""));
        }
        write_file(dir / "normalized.csv", [&](std::ostream& os) {
            write_table_csv(os, {"t", "peak", "n_tot"}, {t, peak, ntot});
        });
        art.files["normalized"] = "normalized.csv";
        art.results["normalized_reference_time"] = ref->t;
    }
}

struct SimulationOutput {
    std::vector<double> snapshot_times;
    std::optional<std::string> failure;
};

SimulationOutput run_simulation(const ScenarioConfig& cfg, std::size_t n_snapshots,
                                const fs::path& dir, Artifacts& art)
{
    SystemState initial;
    if (cfg.initial.kind == InitialKind::StoredGaussian) {
        initial = stored_gaussian(cfg.grid, cfg.initial.width, cfg.initial.center,
                                  cfg.initial.amplitude, cfg.initial.t0);
    } else {
        const auto psi = gaussian_envelope(cfg.grid, cfg.initial.width, cfg.initial.center,
                                           cfg.initial.amplitude);
        initial = polariton(cfg.grid, cfg.params, cfg.profile, psi, cfg.initial.t0);
    }

    RunOptions opt;
    opt.scheme = cfg.run.scheme;
    opt.t_end = cfg.run.t_end;
    opt.n_snapshots = n_snapshots;
    opt.observe_every =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(cfg.run.observe_interval / cfg.grid.dt)));
    opt.center = cfg.run.center;
    const auto result = run(initial, cfg.profile, cfg.params, opt);
    for (const auto& w : result.warnings) art.warnings.push_back(w);

    SimulationOutput out;
    out.failure = result.failure;
    fs::create_directories(dir / "snapshots");
    json snaps = json::array();
    for (std::size_t k = 0; k < result.snapshots.size(); ++k) {
        const auto name = snapshot_name(k);
        write_file(dir / "snapshots" / name, [&](std::ostream& os) { write_snapshot_csv(os, result.snapshots[k]); });
        snaps.push_back({{"file", "snapshots/" + name}, {"t", result.snapshots[k].t}});
        out.snapshot_times.push_back(result.snapshots[k].t);
    }
    art.files["snapshots"] = snaps;
    write_file(dir / "observables.csv", [&](std::ostream& os) { write_observables_csv(os, result.series); });
    art.files["observables"] = "observables.csv";
    if (!result.series.empty()) {
        art.results["n_tot_initial"] = result.series.front().n_tot;
        art.results["n_tot_final"] = result.series.back().n_tot;
        art.results["peak_final"] = result.series.back().peak;
    }
    if (!out.failure) simulation_analyses(cfg, result.series, dir, art);
    return out;
}

// Lab-frame travelling fields of a comb state.
SystemState comb_lab_state(const CombState& st, double c)
{
    SystemState s = SystemState::zeros(st.grid, st.t);
    s.s = st.s;
    for (const auto& comp : st.components) {
        for (std::size_t i = 0; i < st.grid.n_points; ++i) {
            const double z = st.grid.z(i);
            s.e_plus[i] += comp.e_plus[i] * std::polar(1.0, -comp.detuning * (st.t - z / c));
            s.e_minus[i] += comp.e_minus[i] * std::polar(1.0, -comp.detuning * (st.t + z / c));
            s.p_plus[i] += comp.p_plus[i] * std::polar(1.0, -comp.detuning * (st.t - z / c));
            s.p_minus[i] += comp.p_minus[i] * std::polar(1.0, -comp.detuning * (st.t + z / c));
        }
    }
    return s;
}

double field_energy(const Field& f, double dz)
{
    double s = 0.0;
    for (const auto& v : f) s += std::norm(v);
    return s * dz;
}

SimulationOutput run_comb(const ScenarioConfig& cfg, std::size_t n_snapshots, const fs::path& dir,
                          Artifacts& art)
{
    const auto& comb = std::get<CombControl>(cfg.profile.spec());
    const auto& p = cfg.params;
    const auto spin = gaussian_envelope(cfg.grid, cfg.initial.width, cfg.initial.center,
                                        cfg.initial.amplitude);

    // Reference: the resonant pair alone, carrying the comb's central amplitude.
    CombControl pair;
    pair.light_speed = comb.light_speed;
    CombLine central{0.0, cplx{}, cplx{}};
    for (const auto& l : comb.lines) {
        central.omega_plus += l.omega_plus;
        central.omega_minus += l.omega_minus;
    }
    pair.lines.push_back(central);

    auto state = comb_initial(cfg.grid, comb, spin, cfg.initial.t0);
    auto pair_state = comb_initial(cfg.grid, pair, spin, cfg.initial.t0);
    const double dt = cfg.grid.dt;
    const auto steps = static_cast<std::size_t>(std::llround((cfg.run.t_end - cfg.initial.t0) / dt));
    const auto every = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(cfg.run.observe_interval / dt)));
    std::vector<std::size_t> snap_steps;
    for (std::size_t k = 0; k < n_snapshots; ++k)
        snap_steps.push_back(static_cast<std::size_t>(std::llround(
            static_cast<double>(steps) * static_cast<double>(k) / static_cast<double>(n_snapshots - 1))));

    const std::vector<double> phi(cfg.grid.n_points, 0.25 * std::numbers::pi);
    std::vector<Observables> series;
    std::vector<double> pair_photons, comb_photons, times;
    fs::create_directories(dir / "snapshots");
    json snaps = json::array();
    SimulationOutput out;
    std::size_t next_snap = 0;
    const auto comb_snap_step = static_cast<std::size_t>(
        std::llround((cfg.comb->snapshot_time - cfg.initial.t0) / dt));

    for (std::size_t n = 0; n <= steps; ++n) {
        if (n > 0) {
            try {
                state = comb_evolve(state, p, dt);
                pair_state = comb_evolve(pair_state, p, dt);
            } catch (const NumericalError& e) {
                out.failure = e.what();
                break;
            }
        }
        const bool observe = n % every == 0 || n == steps;
        const bool snap = next_snap < snap_steps.size() && snap_steps[next_snap] == n;
        if (observe || snap) {
            const auto lab = comb_lab_state(state, p.light_speed);
            if (observe) {
                series.push_back(observables(lab, phi, cfg.run.center));
                times.push_back(state.t);
                comb_photons.push_back(comb_photon_number(state));
                pair_photons.push_back(comb_photon_number(pair_state));
            }
            while (next_snap < snap_steps.size() && snap_steps[next_snap] == n) {
                const auto name = snapshot_name(next_snap);
                write_file(dir / "snapshots" / name, [&](std::ostream& os) { write_snapshot_csv(os, lab); });
                snaps.push_back({{"file", "snapshots/" + name}, {"t", state.t}});
                out.snapshot_times.push_back(state.t);
                ++next_snap;
            }
        }
        if (n == comb_snap_step) {
            const auto m_comb = matched_field(state.s, comb, p, cfg.grid, state.t);
            const auto m_pair = matched_field(pair_state.s, pair, p, cfg.grid, state.t);
            std::vector<double> z, rc, ic, rp, ip;
            for (std::size_t i = 0; i < cfg.grid.n_points; ++i) {
                z.push_back(cfg.grid.z(i));
                rc.push_back(m_comb[i].real());
                ic.push_back(m_comb[i].imag());
                rp.push_back(m_pair[i].real());
                ip.push_back(m_pair[i].imag());
            }
            write_file(dir / "matched_field.csv", [&](std::ostream& os) {
                write_table_csv(os, {"z", "re_comb", "im_comb", "re_pair", "im_pair"}, {z, rc, ic, rp, ip});
            });
            art.files["matched_field"] = "matched_field.csv";
            art.results["matched_time"] = state.t;
            art.results["matched_photons_comb"] = field_energy(m_comb, cfg.grid.dz());
            art.results["matched_photons_pair"] = field_energy(m_pair, cfg.grid.dz());
            try {
                art.results["matched_fwhm_comb"] = intensity_fwhm(m_comb, cfg.grid);
                art.results["matched_fwhm_pair"] = intensity_fwhm(m_pair, cfg.grid);
            } catch (const DomainError& e) {
                art.warnings.push_back(std::string("matched-field width: ") + e.what());
            }
        }
    }

    art.files["snapshots"] = snaps;
    write_file(dir / "observables.csv", [&](std::ostream& os) { write_observables_csv(os, series); });
    art.files["observables"] = "observables.csv";
    write_file(dir / "photons.csv", [&](std::ostream& os) {
        write_table_csv(os, {"t", "comb", "pair"}, {times, comb_photons, pair_photons});
    });
    art.files["photons"] = "photons.csv";
    art.results["comb_bandwidth"] =
        comb_bandwidth(p, cfg.grid.z_max - cfg.grid.z_min);
    if (!comb_photons.empty()) {
        art.results["photons_comb_final"] = comb_photons.back();
        art.results["photons_pair_final"] = pair_photons.back();
    }
    return out;
}

void run_spectrum(const ScenarioConfig& cfg, const fs::path& dir, Artifacts& art)
{
    const auto& s = *cfg.spectrum;
    std::vector<SpectrumResult> results;
    std::optional<std::size_t> coupled;
    for (auto m : s.methods) {
        if (m == ChiMethod::Truncated) {
            for (auto n : s.n_max)
                results.push_back(spectrum_scan(m, s.omega_min, s.omega_max, s.samples, s.wave, cfg.params, n));
        } else {
            if (m == ChiMethod::CoupledMode) coupled = results.size();
            results.push_back(spectrum_scan(m, s.omega_min, s.omega_max, s.samples, s.wave, cfg.params, 0));
        }
    }
    write_file(dir / "spectrum.csv", [&](std::ostream& os) { write_spectrum_csv(os, results); });
    art.files["spectrum"] = "spectrum.csv";
    std::size_t poles = 0;
    for (const auto& r : results) poles += static_cast<std::size_t>(std::count(r.pole.begin(), r.pole.end(), true));
    art.results["poles"] = static_cast<double>(poles);
    if (coupled) {
        for (const auto& r : results)
            if (r.method == ChiMethod::Truncated)
                art.results["max_diff_truncated_nmax_" + std::to_string(r.n_max)] =
                    max_entry_difference(r, results[*coupled]);
    }
}

} // namespace

ScenarioOutcome run_scenario(const ScenarioConfig& config, const RunOverrides& overrides)
{
    const auto started = std::chrono::steady_clock::now();
    ScenarioOutcome outcome;
    outcome.warnings = config.warnings;
    const fs::path root = overrides.output_root.value_or(default_output_root());
    const fs::path dir = root / config.output_directory;
    fs::create_directories(dir);
    outcome.directory = dir;
    outcome.manifest = dir / "manifest.json";

    const std::size_t n_snapshots = overrides.snapshots.value_or(config.run.snapshots);
    if (config.kind != ScenarioKind::Spectrum && n_snapshots < 2)
        throw ConfigError("--snapshots must be >= 2");

    Artifacts art;
    SimulationOutput sim;
    try {
        switch (config.kind) {
        case ScenarioKind::Simulation: sim = run_simulation(config, n_snapshots, dir, art); break;
        case ScenarioKind::Comb: sim = run_comb(config, n_snapshots, dir, art); break;
        case ScenarioKind::Spectrum: run_spectrum(config, dir, art); break;
        }
    } catch (const NumericalError& e) {
        sim.failure = e.what();
    } catch (const DomainError& e) {
        sim.failure = e.what();
    }
    for (auto& w : art.warnings) outcome.warnings.push_back(w);
    outcome.results = art.results;
    outcome.failure = sim.failure;
    outcome.exit_code = sim.failure ? kExitNumerical : kExitOk;

    json m;
    m["units"] = kUnitsBanner;
    m["scenario"] = config.name;
    m["description"] = config.description;
    m["kind"] = kind_name(config.kind);
    m["source"] = config.source.empty() ? json(nullptr) : json(config.source.generic_string());
    m["version"] = SLP_VERSION;
    m["config"] = config_json(config, n_snapshots);
    m["files"] = art.files;
    json results = json::object();
    for (const auto& [k, v] : art.results) results[k] = std::isfinite(v) ? json(v) : json(nullptr);
    m["results"] = results;
    m["warnings"] = outcome.warnings;
    m["failure"] = sim.failure ? json{{"message", *sim.failure}} : json(nullptr);
    m["runtime_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    write_file(outcome.manifest, [&](std::ostream& os) { os << m.dump(2) << '\n'; });
    return outcome;
}

std::vector<ScenarioEntry> list_scenarios(const fs::path& dir)
{
    std::vector<ScenarioEntry> out;
    if (!fs::is_directory(dir)) return out;
    for (const auto& e : fs::directory_iterator(dir)) {
        if (!e.is_regular_file() || e.path().extension() != ".toml") continue;
        ScenarioEntry entry{e.path().stem().string(), "", e.path()};
        try {
            const auto cfg = load_config(e.path());
            entry.name = cfg.name;
            entry.description = cfg.description;
        } catch (const ConfigError& err) {
            entry.description = std::string("invalid: ") + err.what();
        }
        out.push_back(entry);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.path.filename() < b.path.filename(); });
    return out;
}

fs::path resolve_scenario(const std::string& name_or_path)
{
    const fs::path p(name_or_path);
    if (fs::exists(p)) return p;
    if (!p.has_parent_path() && p.extension().empty()) {
        const auto candidate = scenario_directory() / (name_or_path + ".toml");
        if (fs::exists(candidate)) return candidate;
    }
    return p;
}

} // namespace slp
