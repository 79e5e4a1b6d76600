#include "slp/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <toml++/toml.hpp>

#include "slp/errors.hpp"

namespace slp {

namespace {

// Typed reads over one TOML table. Every key must be consumed before
// finish(); leftovers are reported as unknown with their line.
class Section {
public:
    Section(const toml::table* table, std::string path, const std::string& source)
        : table_(table), path_(std::move(path)), source_(source)
    {
    }

    [[nodiscard]] bool present() const { return table_ != nullptr; }
    [[nodiscard]] bool has(const std::string& key) const
    {
        return table_ != nullptr && table_->contains(key);
    }

    [[noreturn]] void fail(const std::string& key, const std::string& msg) const
    {
        std::ostringstream os;
        os << source_;
        const toml::node* n = table_ ? table_->get(key) : nullptr;
        if (n != nullptr && n->source().begin.line > 0)
            os << ':' << n->source().begin.line;
        else if (table_ != nullptr && table_->source().begin.line > 0)
            os << ':' << table_->source().begin.line;
        os << ": " << qualified(key) << ": " << msg;
        throw ConfigError(os.str());
    }

    double number(const std::string& key, std::optional<double> fallback = std::nullopt)
    {
        const toml::node* n = take(key);
        if (n == nullptr) {
            if (!fallback) fail(key, "required number is missing");
            return *fallback;
        }
        if (auto v = n->value<double>()) {
            if (!std::isfinite(*v)) fail(key, "must be finite");
            return *v;
        }
        fail(key, "expected a number");
    }

    std::optional<double> optional_number(const std::string& key)
    {
        if (!has(key)) {
            take(key);
            return std::nullopt;
        }
        return number(key);
    }

    std::size_t count(const std::string& key, std::optional<std::size_t> fallback = std::nullopt)
    {
        const toml::node* n = take(key);
        if (n == nullptr) {
            if (!fallback) fail(key, "required integer is missing");
            return *fallback;
        }
        const auto v = n->value_exact<int64_t>();
        if (!v || *v < 0) fail(key, "expected a non-negative integer");
        return static_cast<std::size_t>(*v);
    }

    std::string text(const std::string& key, std::optional<std::string> fallback = std::nullopt)
    {
        const toml::node* n = take(key);
        if (n == nullptr) {
            if (!fallback) fail(key, "required string is missing");
            return *fallback;
        }
        if (auto v = n->value_exact<std::string>()) return *v;
        fail(key, "expected a string");
    }

    bool flag(const std::string& key, bool fallback)
    {
        const toml::node* n = take(key);
        if (n == nullptr) return fallback;
        if (auto v = n->value_exact<bool>()) return *v;
        fail(key, "expected true or false");
    }

    /// Number or [re, im].
    cplx complex(const std::string& key, std::optional<cplx> fallback = std::nullopt)
    {
        const toml::node* n = take(key);
        if (n == nullptr) {
            if (!fallback) fail(key, "required value is missing");
            return *fallback;
        }
        if (auto v = n->value<double>()) return {*v, 0.0};
        if (const auto* arr = n->as_array(); arr != nullptr && arr->size() == 2) {
            const auto re = (*arr)[0].value<double>();
            const auto im = (*arr)[1].value<double>();
            if (re && im) return {*re, *im};
        }
        fail(key, "expected a number or a [re, im] pair");
    }

    std::vector<double> numbers(const std::string& key)
    {
        const toml::node* n = take(key);
        if (n == nullptr) return {};
        const auto* arr = n->as_array();
        if (arr == nullptr) fail(key, "expected an array of numbers");
        std::vector<double> out;
        for (const auto& e : *arr) {
            const auto v = e.value<double>();
            if (!v) fail(key, "expected an array of numbers");
            out.push_back(*v);
        }
        return out;
    }

    std::vector<std::string> strings(const std::string& key)
    {
        const toml::node* n = take(key);
        if (n == nullptr) return {};
        const auto* arr = n->as_array();
        if (arr == nullptr) fail(key, "expected an array of strings");
        std::vector<std::string> out;
        for (const auto& e : *arr) {
            const auto v = e.value_exact<std::string>();
            if (!v) fail(key, "expected an array of strings");
            out.push_back(*v);
        }
        return out;
    }

    Section sub(const std::string& key)
    {
        const toml::node* n = take(key);
        if (n == nullptr) return {nullptr, qualified(key), source_};
        const auto* t = n->as_table();
        if (t == nullptr) fail(key, "expected a table");
        return {t, qualified(key), source_};
    }

    std::vector<Section> array_of_tables(const std::string& key)
    {
        const toml::node* n = take(key);
        std::vector<Section> out;
        if (n == nullptr) return out;
        const auto* arr = n->as_array();
        if (arr == nullptr) fail(key, "expected an array of tables");
        std::size_t i = 0;
        for (const auto& e : *arr) {
            const auto* t = e.as_table();
            if (t == nullptr) fail(key, "expected an array of tables");
            out.emplace_back(t, qualified(key) + "[" + std::to_string(i++) + "]", source_);
        }
        return out;
    }

    void finish() const
    {
        if (table_ == nullptr) return;
        for (const auto& [k, v] : *table_) {
            const std::string key(k.str());
            if (!used_.contains(key)) fail(key, "unknown key");
        }
    }

    [[nodiscard]] const std::string& path() const { return path_; }

private:
    const toml::node* take(const std::string& key)
    {
        used_.insert(key);
        return table_ ? table_->get(key) : nullptr;
    }

    [[nodiscard]] std::string qualified(const std::string& key) const
    {
        return path_.empty() ? key : path_ + "." + key;
    }

    const toml::table* table_;
    std::string path_;
    std::string source_;
    std::set<std::string> used_;
};

std::optional<SwitchOn> read_switch(Section& s)
{
    Section sw = s.sub("switch_on");
    if (!sw.present()) return std::nullopt;
    SwitchOn out;
    out.time = sw.number("time");
    out.rate = sw.number("rate", 0.1);
    if (!(out.rate > 0.0)) sw.fail("rate", "must be > 0");
    sw.finish();
    return out;
}

FocusTrack read_focus(Section& s, const std::string& key)
{
    Section f = s.sub(key);
    if (!f.present()) s.fail(key, "required table is missing");
    FocusTrack out;
    out.start = f.number("start");
    out.end = f.number("end", out.start);
    out.move_time = f.number("move_time", 0.0);
    out.move_rate = f.number("move_rate", 0.0);
    f.finish();
    return out;
}

ControlProfile read_control(Section& c, const PhysicalParams& params)
{
    const std::string kind = c.text("kind");
    if (kind == "homogeneous") {
        HomogeneousControl h;
        h.omega_plus = c.complex("omega_plus");
        h.omega_minus = c.complex("omega_minus");
        h.switch_on = read_switch(c);
        if (h.omega_plus == cplx{} && h.omega_minus == cplx{})
            c.fail("omega_plus", "both control amplitudes are zero");
        return h;
    }
    if (kind == "tanh-schedule") {
        TanhSchedule t;
        t.store_time = c.number("store_time", t.store_time);
        t.retrieve_time = c.number("retrieve_time", t.retrieve_time);
        t.rate = c.number("rate", t.rate);
        t.retrieve_level = c.number("retrieve_level", t.retrieve_level);
        t.omega_max = c.number("omega_max", t.omega_max);
        t.coupling = params.coupling;
        if (!(t.rate > 0.0)) c.fail("rate", "must be > 0");
        if (!(t.retrieve_level > 0.0 && t.retrieve_level <= 0.5))
            c.fail("retrieve_level", "must lie in (0, 0.5] so that cos^2 theta stays below 1");
        if (!(t.omega_max > 0.0)) c.fail("omega_max", "must be > 0");
        return t;
    }
    if (kind == "gaussian-foci") {
        GaussianFoci g;
        g.plus_focus = read_focus(c, "plus_focus");
        g.minus_focus = read_focus(c, "minus_focus");
        g.focus_amplitude = c.number("amplitude", 1.0);
        g.rayleigh_range = c.number("rayleigh_range", 1.0);
        if (!(g.rayleigh_range > 0.0)) c.fail("rayleigh_range", "must be > 0");
        const std::string law = c.text("law", "paraxial");
        if (law == "paraxial")
            g.law = BeamLaw::Paraxial;
        else if (law == "literal")
            g.law = BeamLaw::Literal;
        else
            c.fail("law", "expected \"paraxial\" or \"literal\"");
        const auto window = c.numbers("window");
        if (!window.empty()) {
            if (window.size() != 2 || !(window[1] > window[0]))
                c.fail("window", "expected [z_lo, z_hi] with z_hi > z_lo");
            g.validity_window = std::pair{window[0], window[1]};
        }
        if (g.law == BeamLaw::Literal && !g.validity_window)
            c.fail("law", "the literal beam law needs an explicit window = [z_lo, z_hi]");
        g.switch_on = read_switch(c);
        return g;
    }
    if (kind == "linear-ratio") {
        LinearRatioControl l;
        l.omega_total = c.number("omega_total", 1.0);
        l.length_scale = c.number("length_scale", 100.0);
        l.center = c.number("center", 0.0);
        if (!(l.omega_total > 0.0)) c.fail("omega_total", "must be > 0");
        if (!(l.length_scale > 0.0)) c.fail("length_scale", "must be > 0");
        l.switch_on = read_switch(c);
        return l;
    }
    if (kind == "comb") {
        CombControl comb;
        comb.light_speed = params.light_speed;
        auto lines = c.array_of_tables("lines");
        if (!lines.empty()) {
            for (auto& line : lines) {
                CombLine l;
                l.detuning = line.number("detuning");
                const double amp = line.number("amplitude");
                const double phase = line.number("phase", 0.0);
                l.omega_plus = std::polar(amp, phase);
                l.omega_minus = l.omega_plus;
                line.finish();
                comb.lines.push_back(l);
            }
        } else {
            const std::size_t half = c.count("half_lines");
            const double spacing = c.number("spacing");
            const double amp = c.number("amplitude");
            if (!(spacing > 0.0)) c.fail("spacing", "must be > 0");
            for (long k = -static_cast<long>(half); k <= static_cast<long>(half); ++k)
                comb.lines.push_back({static_cast<double>(k) * spacing, cplx{amp, 0.0},
                                      cplx{amp, 0.0}});
        }
        try {
            comb.validate();
        } catch (const ConfigError& e) {
            c.fail("lines", e.what());
        }
        return comb;
    }
    c.fail("kind", "unknown control kind '" + kind +
                       "' (homogeneous, tanh-schedule, gaussian-foci, linear-ratio, comb)");
}

void physics_checks(ScenarioConfig& cfg)
{
    const double l_abs = cfg.params.absorption_length();
    const double length = cfg.grid.z_max - cfg.grid.z_min;
    if (cfg.kind == ScenarioKind::Spectrum) return;

    if (length / l_abs < 10.0) {
        std::ostringstream os;
        os << "medium is optically thin (L / l_abs = " << length / l_abs
           << " < 10); stationary light needs an optically thick sample";
        throw ConfigError(os.str());
    }
    if (cfg.params.carrier_offset != 0.0 || cfg.params.one_photon_detuning != 0.0 ||
        cfg.params.two_photon_detuning != 0.0)
        cfg.warnings.push_back("nonzero detunings: pulse-matching and width laws assume resonance");

    const double dz = cfg.grid.dz();
    if (cfg.initial.width < 4.0 * dz) {
        std::ostringstream os;
        os << "initial width " << cfg.initial.width << " is resolved by fewer than 4 cells (dz = "
           << dz << ")";
        throw ConfigError(os.str());
    }
    const double reach = std::min(cfg.initial.center - cfg.grid.z_min,
                                  cfg.grid.z_max - cfg.initial.center);
    if (reach < 5.0 * cfg.initial.width) {
        std::ostringstream os;
        os << "initial pulse lies within 5 widths of the boundary (distance " << reach
           << ", width " << cfg.initial.width << "); widen the grid";
        throw ConfigError(os.str());
    }
    if (cfg.run.scheme == Scheme::Adiabatic && cfg.grid.dt * cfg.params.gamma >= 1.0)
        cfg.warnings.push_back("adiabatic scheme with dt * gamma >= 1: elimination is not justified");
    if (cfg.run.t_end <= cfg.initial.t0) throw ConfigError("run.t_end must exceed initial.t0");
}

} // namespace

ScenarioConfig parse_config(const std::string& text, const std::string& source_name)
{
    toml::table root;
    try {
        root = toml::parse(text, source_name);
    } catch (const toml::parse_error& e) {
        std::ostringstream os;
        os << source_name << ':' << e.source().begin.line << ": syntax error: " << e.description();
        throw ConfigError(os.str());
    }

    Section top(&root, "", source_name);
    ScenarioConfig cfg;
    cfg.name = top.text("name");
    cfg.description = top.text("description", "");
    const std::string kind = top.text("kind", "simulation");
    if (kind == "simulation")
        cfg.kind = ScenarioKind::Simulation;
    else if (kind == "comb")
        cfg.kind = ScenarioKind::Comb;
    else if (kind == "spectrum")
        cfg.kind = ScenarioKind::Spectrum;
    else
        top.fail("kind", "expected simulation, comb or spectrum");

    {
        Section p = top.sub("params");
        cfg.params.coupling = p.number("coupling", 1.0);
        cfg.params.gamma = p.number("gamma", 1.0);
        cfg.params.gamma0 = p.number("gamma0", 0.0);
        cfg.params.light_speed = p.number("light_speed", 1.0);
        cfg.params.one_photon_detuning = p.number("one_photon_detuning", 0.0);
        cfg.params.two_photon_detuning = p.number("two_photon_detuning", 0.0);
        cfg.params.carrier_offset = p.number("carrier_offset", 0.0);
        cfg.params.wavevector_mismatch = p.number("wavevector_mismatch", 0.0);
        p.finish();
        try {
            cfg.params.validate();
        } catch (const ConfigError& e) {
            top.fail("params", e.what());
        }
    }

    cfg.output_directory = top.text("output", cfg.name);

    if (cfg.kind == ScenarioKind::Spectrum) {
        Section s = top.sub("spectrum");
        if (!s.present()) top.fail("spectrum", "spectrum scenarios need a [spectrum] table");
        SpectrumSettings sp;
        // omega range in units of Omega_0^2 / gamma, Omega_0^2 = |O+|^2 + |O-|^2
        sp.wave.plus = s.complex("omega_plus");
        sp.wave.minus = s.complex("omega_minus");
        const double unit = sp.wave.total_intensity() / cfg.params.gamma;
        const std::string units = s.text("omega_units", "rate");
        double scale = 1.0;
        if (units == "omega0-sq-over-gamma")
            scale = unit;
        else if (units != "rate")
            s.fail("omega_units", "expected \"rate\" or \"omega0-sq-over-gamma\"");
        sp.omega_min = scale * s.number("omega_min");
        sp.omega_max = scale * s.number("omega_max");
        sp.samples = s.count("samples", 401);
        if (sp.samples == 0) s.fail("samples", "must be >= 1");
        if (sp.omega_max < sp.omega_min) s.fail("omega_max", "must be >= omega_min");
        const auto methods = s.strings("methods");
        if (!methods.empty()) {
            sp.methods.clear();
            for (const auto& m : methods) {
                try {
                    sp.methods.push_back(parse_method(m));
                } catch (const ConfigError& e) {
                    s.fail("methods", e.what());
                }
            }
        }
        const auto nmax = s.numbers("n_max");
        if (!nmax.empty()) {
            sp.n_max.clear();
            for (double v : nmax) {
                if (v < 0.0 || v != std::floor(v) || v > 200.0)
                    s.fail("n_max", "entries must be integers in [0, 200]");
                sp.n_max.push_back(static_cast<std::size_t>(v));
            }
        }
        s.finish();
        cfg.spectrum = sp;
        top.finish();
        return cfg;
    }

    {
        Section g = top.sub("grid");
        if (!g.present()) top.fail("grid", "required table is missing");
        const double z_min = g.number("z_min");
        const double z_max = g.number("z_max");
        const std::size_t n = g.count("n_points");
        if (n < 3) g.fail("n_points", "must be >= 3");
        if (!(z_max > z_min)) g.fail("z_max", "must exceed z_min");
        cfg.grid = Grid::with_unit_cfl(z_min, z_max, n, cfg.params.light_speed);
        if (const auto dt = g.optional_number("dt")) {
            if (std::abs(*dt - cfg.grid.dt) > 1e-9 * cfg.grid.dt) {
                std::ostringstream os;
                os << "the transport step is an exact one-cell shift, so dt must equal dz / c = "
                   << cfg.grid.dt << " (got " << *dt << "); omit dt to have it derived";
                g.fail("dt", os.str());
            }
        }
        g.finish();
    }

    {
        Section c = top.sub("control");
        if (!c.present()) top.fail("control", "required table is missing");
        cfg.profile = read_control(c, cfg.params);
        c.finish();
    }
    if (cfg.kind == ScenarioKind::Comb && !std::holds_alternative<CombControl>(cfg.profile.spec()))
        top.fail("control", "comb scenarios need control.kind = \"comb\"");
    if (cfg.kind == ScenarioKind::Simulation && std::holds_alternative<CombControl>(cfg.profile.spec()))
        top.fail("control", "comb controls run under kind = \"comb\"");

    {
        Section i = top.sub("initial");
        const std::string kind_text = i.text("kind", "stored-gaussian");
        if (kind_text == "stored-gaussian")
            cfg.initial.kind = InitialKind::StoredGaussian;
        else if (kind_text == "full-storage")
            cfg.initial.kind = InitialKind::FullStorage;
        else
            i.fail("kind", "expected stored-gaussian or full-storage");
        cfg.initial.width = i.number("width", 10.0);
        cfg.initial.center = i.number("center", 0.0);
        cfg.initial.amplitude = i.number("amplitude", 1.0);
        cfg.initial.t0 = i.number("t0", 0.0);
        if (!(cfg.initial.width > 0.0)) i.fail("width", "must be > 0");
        if (cfg.kind == ScenarioKind::Comb && cfg.initial.kind != InitialKind::StoredGaussian)
            i.fail("kind", "comb scenarios start from a stored spin excitation");
        i.finish();
    }

    {
        Section r = top.sub("run");
        if (!r.present()) top.fail("run", "required table is missing");
        const std::string scheme = r.text("scheme", "full");
        if (scheme == "full")
            cfg.run.scheme = Scheme::Full;
        else if (scheme == "adiabatic")
            cfg.run.scheme = Scheme::Adiabatic;
        else
            r.fail("scheme", "expected full or adiabatic");
        cfg.run.t_end = r.number("t_end");
        cfg.run.snapshots = r.count("snapshots", 41);
        if (cfg.run.snapshots < 2) r.fail("snapshots", "must be >= 2");
        cfg.run.observe_interval = r.number("observe_interval", 1.0);
        if (!(cfg.run.observe_interval > 0.0)) r.fail("observe_interval", "must be > 0");
        cfg.run.center = r.number("center", 0.0);
        r.finish();
    }

    {
        Section a = top.sub("analysis");
        cfg.analysis.exact_width = a.flag("exact_width", false);
        cfg.analysis.diffusive_decay = a.flag("diffusive_decay", false);
        cfg.analysis.ou_decay = a.flag("ou_decay", false);
        cfg.analysis.drift = a.flag("drift", false);
        cfg.analysis.normalize_at = a.optional_number("normalize_at");
        cfg.analysis.from = a.number("from", cfg.initial.t0);
        cfg.analysis.until = a.optional_number("until");
        cfg.analysis.exact_width_g0 = a.optional_number("exact_width_g0");
        if (cfg.analysis.until && *cfg.analysis.until <= cfg.analysis.from)
            a.fail("until", "must exceed analysis.from");
        if (cfg.analysis.normalize_at &&
            (*cfg.analysis.normalize_at < cfg.initial.t0 || *cfg.analysis.normalize_at > cfg.run.t_end))
            a.fail("normalize_at", "must lie inside the run");
        if (cfg.analysis.ou_decay && !std::holds_alternative<GaussianFoci>(cfg.profile.spec()) &&
            !std::holds_alternative<LinearRatioControl>(cfg.profile.spec()))
            a.fail("ou_decay", "needs a gaussian-foci or linear-ratio control");
        if (cfg.analysis.diffusive_decay && !cfg.profile.homogeneous())
            a.fail("diffusive_decay", "needs a spatially homogeneous control");
        a.finish();
    }

    if (cfg.kind == ScenarioKind::Comb) {
        Section cs = top.sub("comb");
        CombSettings s;
        s.snapshot_time = cs.number("snapshot_time", cfg.run.t_end);
        cs.finish();
        cfg.comb = s;
    }

    top.finish();
    try {
        physics_checks(cfg);
    } catch (const ConfigError& e) {
        throw ConfigError(source_name + ": " + e.what());
    }
    return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open scenario file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    auto cfg = parse_config(buf.str(), path.string());
    cfg.source = path;
    return cfg;
}

const char* kind_name(ScenarioKind k)
{
    switch (k) {
    case ScenarioKind::Simulation: return "simulation";
    case ScenarioKind::Comb: return "comb";
    case ScenarioKind::Spectrum: return "spectrum";
    }
    return "unknown";
}

const char* initial_name(InitialKind k)
{
    return k == InitialKind::StoredGaussian ? "stored-gaussian" : "full-storage";
}

const char* scheme_name(Scheme s) { return s == Scheme::Full ? "full" : "adiabatic"; }

std::filesystem::path scenario_directory()
{
    if (const char* env = std::getenv("SLP_SCENARIO_DIR"); env != nullptr && *env != '\0')
        return env;
#ifdef SLP_DEFAULT_SCENARIO_DIR
    return SLP_DEFAULT_SCENARIO_DIR;
#else
    return "scenarios";
#endif
}

std::filesystem::path default_output_root()
{
    if (const char* env = std::getenv("SLP_OUT_DIR"); env != nullptr && *env != '\0') return env;
    return "slp-out";
}

} // namespace slp
