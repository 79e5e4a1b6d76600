#include "slp/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "slp/errors.hpp"

namespace slp {

void PhysicalParams::validate() const
{
    std::ostringstream err;
    if (!(gamma > 0.0)) err << "gamma must be > 0 (got " << gamma << "). ";
    if (!(light_speed > 0.0)) err << "light_speed must be > 0 (got " << light_speed << "). ";
    if (!(coupling > 0.0)) err << "coupling must be > 0 (got " << coupling << "). ";
    if (!(gamma0 >= 0.0)) err << "gamma0 must be >= 0 (got " << gamma0 << "). ";
    for (double v : {one_photon_detuning, two_photon_detuning, carrier_offset, wavevector_mismatch}) {
        if (!std::isfinite(v)) {
            err << "detunings must be finite. ";
            break;
        }
    }
    if (!err.str().empty()) throw ConfigError("params: " + err.str());
}

double PhysicalParams::absorption_length() const
{
    return light_speed * gamma / (coupling * coupling);
}

cplx PhysicalParams::optical_decay() const
{
    return {gamma, one_photon_detuning + two_photon_detuning};
}

Grid Grid::with_unit_cfl(double z_min, double z_max, std::size_t n_points, double light_speed)
{
    Grid g{z_min, z_max, n_points, 0.0};
    if (n_points >= 2 && light_speed > 0.0) g.dt = g.dz() / light_speed;
    return g;
}

std::vector<double> Grid::coordinates() const
{
    std::vector<double> zs(n_points);
    for (std::size_t i = 0; i < n_points; ++i) zs[i] = z(i);
    return zs;
}

void Grid::validate(double light_speed) const
{
    if (n_points < 3) throw ConfigError("grid: n_points must be >= 3");
    if (!(z_max > z_min)) throw ConfigError("grid: z_max must exceed z_min");
    if (!(dt > 0.0)) throw ConfigError("grid: dt must be > 0");
    // small slack for dt = dz / c computed in floating point
    if (cfl(light_speed) > 1.0 + 1e-12) {
        std::ostringstream os;
        os << "grid: CFL number c*dt/dz = " << cfl(light_speed) << " exceeds 1";
        throw ConfigError(os.str());
    }
}

double SwitchOn::intensity_factor(double t) const
{
    return 0.5 * (1.0 + std::tanh(rate * (t - time)));
}

double TanhSchedule::cos2_theta_plus(double t) const
{
    return 0.5 * (1.0 - std::tanh(rate * (t - store_time))) + cos2_theta_minus(t);
}

double TanhSchedule::cos2_theta_minus(double t) const
{
    return 0.5 * retrieve_level * (1.0 + std::tanh(rate * (t - retrieve_time)));
}

double TanhSchedule::amplitude_from_cos2(double cos2) const
{
    if (cos2 <= 0.0) return 0.0;
    if (cos2 >= 1.0) return omega_max;
    const double amp = coupling * std::sqrt(cos2 / (1.0 - cos2));
    return std::min(amp, omega_max);
}

double FocusTrack::at(double t) const
{
    if (move_rate == 0.0) return start;
    return start + (end - start) * 0.5 * (1.0 + std::tanh(move_rate * (t - move_time)));
}

void CombControl::validate() const
{
    if (lines.empty()) throw ConfigError("comb: at least one line required");
    int resonant = 0;
    for (const auto& line : lines) {
        if (line.detuning == 0.0) ++resonant;
        const double a = std::abs(line.omega_plus);
        const double b = std::abs(line.omega_minus);
        if (std::abs(a - b) > 1e-12 * std::max({a, b, 1.0}))
            throw ConfigError("comb: |Omega_+k| must equal |Omega_-k| for every line");
    }
    if (resonant != 1) throw ConfigError("comb: exactly one line must have zero detuning");
}

const CombLine& CombControl::resonant_line() const
{
    for (const auto& line : lines)
        if (line.detuning == 0.0) return line;
    throw ConfigError("comb: no resonant line");
}

namespace {

double beam_width(const GaussianFoci& f, double z, double z_focus)
{
    if (f.law == BeamLaw::Paraxial) {
        const double u = (z - z_focus) / f.rayleigh_range;
        return std::sqrt(1.0 + u * u);
    }
    if (!f.validity_window)
        throw DomainError("literal beam law requires a declared validity window");
    const auto [lo, hi] = *f.validity_window;
    if (z < lo || z > hi) {
        std::ostringstream os;
        os << "literal beam law evaluated at z=" << z << " outside its validity window [" << lo
           << ", " << hi << "]";
        throw DomainError(os.str());
    }
    const double arg = 1.0 - 2.0 * (z - z_focus) / std::numbers::pi;
    if (arg <= 0.0) {
        std::ostringstream os;
        os << "literal beam law 1 - 2(z - z_f)/pi = " << arg << " <= 0 at z=" << z
           << ", z_f=" << z_focus;
        throw DomainError(os.str());
    }
    return std::sqrt(arg);
}

struct Evaluator {
    double z;
    double t;

    ControlAmplitudes operator()(const HomogeneousControl& h) const
    {
        const double s = h.switch_on ? std::sqrt(h.switch_on->intensity_factor(t)) : 1.0;
        return {h.omega_plus * s, h.omega_minus * s};
    }

    ControlAmplitudes operator()(const TanhSchedule& s) const
    {
        return {cplx{s.amplitude_from_cos2(s.cos2_theta_plus(t)), 0.0},
                cplx{s.amplitude_from_cos2(s.cos2_theta_minus(t)), 0.0}};
    }

    ControlAmplitudes operator()(const GaussianFoci& f) const
    {
        const double s = f.switch_on ? std::sqrt(f.switch_on->intensity_factor(t)) : 1.0;
        const double wp = beam_width(f, z, f.plus_focus.at(t));
        const double wm = beam_width(f, z, f.minus_focus.at(t));
        return {cplx{s * f.focus_amplitude / wp, 0.0}, cplx{s * f.focus_amplitude / wm, 0.0}};
    }

    ControlAmplitudes operator()(const LinearRatioControl& r) const
    {
        const double s = r.switch_on ? std::sqrt(r.switch_on->intensity_factor(t)) : 1.0;
        const double c2phi = std::clamp(-(z - r.center) / r.length_scale, -1.0, 1.0);
        const double amp = s * r.omega_total;
        return {cplx{amp * std::sqrt(0.5 * (1.0 + c2phi)), 0.0},
                cplx{amp * std::sqrt(0.5 * (1.0 - c2phi)), 0.0}};
    }

    ControlAmplitudes operator()(const CombControl& c) const
    {
        ControlAmplitudes out{};
        for (const auto& line : c.lines) {
            const double d = line.detuning;
            out.plus += line.omega_plus * std::polar(1.0, -d * (t - z / c.light_speed));
            out.minus += line.omega_minus * std::polar(1.0, -d * (t + z / c.light_speed));
        }
        return out;
    }
};

} // namespace

ControlAmplitudes ControlProfile::at(double z, double t) const
{
    return std::visit(Evaluator{z, t}, spec_);
}

void ControlProfile::sample(const Grid& grid, double t, std::vector<cplx>& plus,
                            std::vector<cplx>& minus) const
{
    const std::size_t n = homogeneous() ? 1 : grid.n_points;
    plus.resize(n);
    minus.resize(n);
    // Time-only factors are evaluated once: the foci are frozen at t and the
    // switch becomes a plain scale.
    double scale = 1.0;
    Variant frozen = spec_;
    if (auto* f = std::get_if<GaussianFoci>(&frozen)) {
        if (f->switch_on) scale = std::sqrt(f->switch_on->intensity_factor(t));
        f->switch_on.reset();
        f->plus_focus = FocusTrack{f->plus_focus.at(t), f->plus_focus.at(t), 0.0, 0.0};
        f->minus_focus = FocusTrack{f->minus_focus.at(t), f->minus_focus.at(t), 0.0, 0.0};
    } else if (auto* r = std::get_if<LinearRatioControl>(&frozen)) {
        if (r->switch_on) scale = std::sqrt(r->switch_on->intensity_factor(t));
        r->switch_on.reset();
    }
    for (std::size_t i = 0; i < n; ++i) {
        const auto a = std::visit(Evaluator{grid.z(i), t}, frozen);
        plus[i] = a.plus * scale;
        minus[i] = a.minus * scale;
    }
}

bool ControlProfile::homogeneous() const
{
    return std::holds_alternative<HomogeneousControl>(spec_) ||
           std::holds_alternative<TanhSchedule>(spec_);
}

const char* ControlProfile::kind_name() const
{
    struct Name {
        const char* operator()(const HomogeneousControl&) const { return "homogeneous"; }
        const char* operator()(const TanhSchedule&) const { return "tanh_schedule"; }
        const char* operator()(const GaussianFoci&) const { return "gaussian_foci"; }
        const char* operator()(const LinearRatioControl&) const { return "linear_ratio"; }
        const char* operator()(const CombControl&) const { return "comb"; }
    };
    return std::visit(Name{}, spec_);
}

MixingAngles mixing_angles(const PhysicalParams& params, cplx omega_plus, cplx omega_minus)
{
    const double ip = std::norm(omega_plus);
    const double im = std::norm(omega_minus);
    const double total = ip + im;
    if (!(total > 0.0))
        throw DomainError("mixing_angles: both control amplitudes are zero, theta undefined");
    MixingAngles a;
    a.theta = std::atan2(params.coupling, std::sqrt(total));
    a.phi = std::atan2(std::sqrt(im), std::sqrt(ip));
    return a;
}

double group_velocity(const PhysicalParams& params, double theta)
{
    const double c = std::cos(theta);
    return params.light_speed * c * c;
}

double phase_matched_detuning(const PhysicalParams& params, double theta)
{
    if (!(theta > 0.0)) throw DomainError("phase_matched_detuning: cot^2(theta) diverges at theta = 0");
    const double cot = std::cos(theta) / std::sin(theta);
    return -params.carrier_offset * cot * cot;
}

ControlAmplitudes control_field_at(const ControlProfile& profile, double z, double t)
{
    return profile.at(z, t);
}

std::vector<double> phi_field(const ControlProfile& profile, const Grid& grid, double t)
{
    std::vector<double> phi(grid.n_points);
    for (std::size_t i = 0; i < grid.n_points; ++i) {
        const auto a = profile.at(grid.z(i), t);
        phi[i] = std::atan2(std::abs(a.minus), std::abs(a.plus));
    }
    return phi;
}

std::vector<double> group_velocity_field(const PhysicalParams& params,
                                         const ControlProfile& profile, const Grid& grid,
                                         double t)
{
    std::vector<double> v(grid.n_points);
    const double g2 = params.coupling * params.coupling;
    for (std::size_t i = 0; i < grid.n_points; ++i) {
        const double o2 = profile.at(grid.z(i), t).total_intensity();
        v[i] = params.light_speed * o2 / (o2 + g2);
    }
    return v;
}

} // namespace slp
