#include "slp/mbe_solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "slp/errors.hpp"
#include "slp/numerics.hpp"

namespace slp {

SystemState SystemState::zeros(const Grid& grid, double t)
{
    SystemState s;
    s.grid = grid;
    s.t = t;
    const Field zero(grid.n_points, cplx{});
    s.e_plus = s.e_minus = s.p_plus = s.p_minus = s.s = zero;
    return s;
}

void SystemState::check_finite() const
{
    const std::array<std::pair<const Field*, const char*>, 5> fields{{{&e_plus, "E+"},
                                                                      {&e_minus, "E-"},
                                                                      {&p_plus, "P+"},
                                                                      {&p_minus, "P-"},
                                                                      {&s, "S"}}};
    for (const auto& [f, name] : fields) {
        for (std::size_t i = 0; i < f->size(); ++i) {
            const cplx v = (*f)[i];
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
                std::ostringstream os;
                os << "non-finite " << name << " at z=" << grid.z(i) << " (cell " << i
                   << "), t=" << t;
                throw NumericalError(os.str());
            }
        }
    }
}

namespace {

// Control amplitudes on the grid at one instant. Homogeneous profiles keep a
// single entry shared by every cell.
struct ControlSlice {
    std::vector<cplx> plus;
    std::vector<cplx> minus;
    double max_total = 0.0;

    [[nodiscard]] cplx op(std::size_t i) const { return plus.size() == 1 ? plus[0] : plus[i]; }
    [[nodiscard]] cplx om(std::size_t i) const { return minus.size() == 1 ? minus[0] : minus[i]; }
};

ControlSlice sample_controls(const ControlProfile& profile, const Grid& grid, double t)
{
    ControlSlice c;
    profile.sample(grid, t, c.plus, c.minus);
    for (std::size_t i = 0; i < c.plus.size(); ++i)
        c.max_total = std::max(c.max_total, std::norm(c.plus[i]) + std::norm(c.minus[i]));
    return c;
}

struct Rates {
    cplx big_gamma;  // gamma + i (Delta + delta)
    cplx spin;       // i delta + gamma0
    cplx carrier;    // i Delta_omega
    double g;
};

Rates make_rates(const PhysicalParams& p)
{
    return {p.optical_decay(), cplx{p.gamma0, p.two_photon_detuning},
            cplx{0.0, p.carrier_offset}, p.coupling};
}

// Spectral radius bound of the local generator.
double rate_bound(const PhysicalParams& p, double omega_sq_max)
{
    return std::abs(p.optical_decay()) + std::abs(p.two_photon_detuning) +
           std::abs(p.carrier_offset) + p.gamma0 +
           std::sqrt(omega_sq_max + p.coupling * p.coupling);
}

constexpr double kStageRate = 0.25;

using Full5 = std::array<cplx, 5>; // E+, E-, P+, P-, S
using Adia3 = std::array<cplx, 3>; // E+, E-, S

const cplx I{0.0, 1.0};

Full5 rhs_full(const Full5& y, cplx op, cplx om, const Rates& r)
{
    return {-r.carrier * y[0] + I * r.g * y[2],
            -r.carrier * y[1] + I * r.g * y[3],
            -r.big_gamma * y[2] + I * r.g * y[0] + I * op * y[4],
            -r.big_gamma * y[3] + I * r.g * y[1] + I * om * y[4],
            -r.spin * y[4] + I * std::conj(op) * y[2] + I * std::conj(om) * y[3]};
}

Adia3 rhs_adiabatic(const Adia3& y, cplx op, cplx om, const Rates& r)
{
    const cplx pp = I * (r.g * y[0] + op * y[2]) / r.big_gamma;
    const cplx pm = I * (r.g * y[1] + om * y[2]) / r.big_gamma;
    return {-r.carrier * y[0] + I * r.g * pp, -r.carrier * y[1] + I * r.g * pm,
            -r.spin * y[2] + I * std::conj(op) * pp + I * std::conj(om) * pm};
}

template <std::size_t N>
std::array<cplx, N> axpy(const std::array<cplx, N>& y, double h, const std::array<cplx, N>& k)
{
    std::array<cplx, N> out;
    for (std::size_t j = 0; j < N; ++j) out[j] = y[j] + h * k[j];
    return out;
}

template <std::size_t N, class Rhs>
std::array<cplx, N> rk4(const std::array<cplx, N>& y, double h, cplx op0, cplx om0, cplx op1,
                        cplx om1, cplx op2, cplx om2, const Rates& r, Rhs rhs)
{
    const auto k1 = rhs(y, op0, om0, r);
    const auto k2 = rhs(axpy(y, 0.5 * h, k1), op1, om1, r);
    const auto k3 = rhs(axpy(y, 0.5 * h, k2), op1, om1, r);
    const auto k4 = rhs(axpy(y, h, k3), op2, om2, r);
    std::array<cplx, N> out;
    for (std::size_t j = 0; j < N; ++j)
        out[j] = y[j] + (h / 6.0) * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    return out;
}

template <class Cell>
void local_update(SystemState& st, const ControlProfile& profile, const PhysicalParams& params,
                  double t0, double span, Cell cell)
{
    ControlSlice c0 = sample_controls(profile, st.grid, t0);
    ControlSlice c_end = sample_controls(profile, st.grid, t0 + span);
    const double bound = rate_bound(params, std::max(c0.max_total, c_end.max_total));
    const auto m = static_cast<std::size_t>(std::max(1.0, std::ceil(span * bound / kStageRate)));
    const double h = span / static_cast<double>(m);
    const std::size_t n = st.grid.n_points;
    for (std::size_t k = 0; k < m; ++k) {
        const double ta = t0 + static_cast<double>(k) * h;
        ControlSlice c1 = sample_controls(profile, st.grid, ta + 0.5 * h);
        ControlSlice c2 = (k + 1 == m) ? c_end : sample_controls(profile, st.grid, ta + h);
        for (std::size_t i = 0; i < n; ++i) cell(i, h, c0, c1, c2);
        c0 = std::move(c2);
    }
}

void local_full(SystemState& st, const ControlProfile& profile, const PhysicalParams& params,
                double t0, double span)
{
    const Rates r = make_rates(params);
    local_update(st, profile, params, t0, span,
                 [&](std::size_t i, double h, const ControlSlice& a, const ControlSlice& b,
                     const ControlSlice& c) {
                     Full5 y{st.e_plus[i], st.e_minus[i], st.p_plus[i], st.p_minus[i], st.s[i]};
                     y = rk4(y, h, a.op(i), a.om(i), b.op(i), b.om(i), c.op(i), c.om(i), r,
                             rhs_full);
                     st.e_plus[i] = y[0];
                     st.e_minus[i] = y[1];
                     st.p_plus[i] = y[2];
                     st.p_minus[i] = y[3];
                     st.s[i] = y[4];
                 });
}

void local_adiabatic(SystemState& st, const ControlProfile& profile,
                     const PhysicalParams& params, double t0, double span)
{
    const Rates r = make_rates(params);
    local_update(st, profile, params, t0, span,
                 [&](std::size_t i, double h, const ControlSlice& a, const ControlSlice& b,
                     const ControlSlice& c) {
                     Adia3 y{st.e_plus[i], st.e_minus[i], st.s[i]};
                     y = rk4(y, h, a.op(i), a.om(i), b.op(i), b.om(i), c.op(i), c.om(i), r,
                             rhs_adiabatic);
                     st.e_plus[i] = y[0];
                     st.e_minus[i] = y[1];
                     st.s[i] = y[2];
                 });
}

// E+ moves one cell towards +z, E- one cell towards -z; nothing flows in.
void shift_fields(SystemState& st)
{
    auto& ep = st.e_plus;
    auto& em = st.e_minus;
    const std::size_t n = ep.size();
    std::move_backward(ep.begin(), ep.end() - 1, ep.end());
    ep[0] = cplx{};
    std::move(em.begin() + 1, em.end(), em.begin());
    em[n - 1] = cplx{};
}

void check_step(const SystemState& st, const PhysicalParams& params, double dt)
{
    st.grid.validate(params.light_speed);
    const double dz = st.grid.dz();
    if (std::abs(params.light_speed * dt - dz) > 1e-9 * dz) {
        std::ostringstream os;
        os << "step: exact-shift transport needs c*dt == dz (c*dt=" << params.light_speed * dt
           << ", dz=" << dz << ")";
        throw ConfigError(os.str());
    }
    const std::size_t n = st.grid.n_points;
    if (st.e_plus.size() != n || st.e_minus.size() != n || st.p_plus.size() != n ||
        st.p_minus.size() != n || st.s.size() != n)
        throw ConfigError("step: field arrays do not match the grid length");
}

} // namespace

SystemState step_full(const SystemState& state, const ControlProfile& profile,
                      const PhysicalParams& params, double dt)
{
    check_step(state, params, dt);
    SystemState next = state;
    local_full(next, profile, params, state.t, 0.5 * dt);
    shift_fields(next);
    local_full(next, profile, params, state.t + 0.5 * dt, 0.5 * dt);
    next.t = state.t + dt;
    next.check_finite();
    return next;
}

SystemState step_adiabatic(const SystemState& state, const ControlProfile& profile,
                           const PhysicalParams& params, double dt)
{
    check_step(state, params, dt);
    SystemState next = state;
    local_adiabatic(next, profile, params, state.t, 0.5 * dt);
    shift_fields(next);
    local_adiabatic(next, profile, params, state.t + 0.5 * dt, 0.5 * dt);
    next.t = state.t + dt;
    reconstruct_polarization(next, profile, params);
    next.check_finite();
    return next;
}

SystemState step(Scheme scheme, const SystemState& state, const ControlProfile& profile,
                 const PhysicalParams& params, double dt)
{
    return scheme == Scheme::Full ? step_full(state, profile, params, dt)
                                  : step_adiabatic(state, profile, params, dt);
}

void reconstruct_polarization(SystemState& state, const ControlProfile& profile,
                              const PhysicalParams& params)
{
    const ControlSlice c = sample_controls(profile, state.grid, state.t);
    const cplx big_gamma = params.optical_decay();
    const double g = params.coupling;
    for (std::size_t i = 0; i < state.grid.n_points; ++i) {
        state.p_plus[i] = I * (g * state.e_plus[i] + c.op(i) * state.s[i]) / big_gamma;
        state.p_minus[i] = I * (g * state.e_minus[i] + c.om(i) * state.s[i]) / big_gamma;
    }
}

Observables observables(const SystemState& state, const std::vector<double>& phi, double center)
{
    const std::size_t n = state.grid.n_points;
    if (phi.size() != n) throw ConfigError("observables: phi field does not match the grid");
    const double dz = state.grid.dz();
    const std::size_t skip = std::min(kBoundaryBuffer, n / 4);

    Field es(n), ed(n), zes(n), z2es(n), s_z2(n);
    std::vector<double> abs_es(n), density(n), es2(n), ed2(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double c = std::cos(phi[i]);
        const double s = std::sin(phi[i]);
        const double z = state.grid.z(i);
        es[i] = c * state.e_plus[i] + s * state.e_minus[i];
        ed[i] = s * state.e_plus[i] - c * state.e_minus[i];
        zes[i] = z * es[i];
        z2es[i] = (z - center) * (z - center) * es[i];
        s_z2[i] = (z - center) * (z - center) * state.s[i];
        abs_es[i] = std::abs(es[i]);
        es2[i] = std::norm(es[i]);
        ed2[i] = std::norm(ed[i]);
        density[i] = std::norm(state.e_plus[i]) + std::norm(state.e_minus[i]) + std::norm(state.s[i]);
    }

    Observables o;
    o.t = state.t;
    o.n_tot = numerics::integrate(std::span<const double>(density), dz, skip);
    o.sum_integral = numerics::integrate(std::span<const cplx>(es), dz, skip);
    o.sum_norm = std::sqrt(numerics::integrate(std::span<const double>(es2), dz, skip));
    o.diff_norm = std::sqrt(numerics::integrate(std::span<const double>(ed2), dz, skip));

    double abs_int = numerics::integrate(std::span<const double>(abs_es), dz, skip);
    double spin_mass = 0.0;
    for (std::size_t i = skip; i + skip < n; ++i) spin_mass += std::abs(state.s[i]) * dz;
    o.moments_defined = std::abs(o.sum_integral) > 1e-9 * (abs_int + spin_mass) && abs_int > 0.0;
    if (o.moments_defined) {
        o.first_moment = (numerics::integrate(std::span<const cplx>(zes), dz, skip) / o.sum_integral).real();
        o.width_sq = (numerics::integrate(std::span<const cplx>(z2es), dz, skip) / o.sum_integral).real();
    }
    const cplx s_int = numerics::integrate(std::span<const cplx>(state.s), dz, skip);
    if (std::abs(s_int) > 0.0)
        o.spin_width_sq = (numerics::integrate(std::span<const cplx>(s_z2), dz, skip) / s_int).real();

    std::size_t arg = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (abs_es[i] > abs_es[arg]) arg = i;
    o.peak_z = state.grid.z(arg);
    const cplx em = state.e_minus[arg];
    o.ratio = em != cplx{} ? state.e_plus[arg] / em
                           : cplx{std::numeric_limits<double>::infinity(), 0.0};

    o.peak = *std::max_element(density.begin(), density.end());

    double field_max = 0.0, edge_max = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double a = std::max(std::abs(state.e_plus[i]), std::abs(state.e_minus[i]));
        field_max = std::max(field_max, a);
        if (i < kBoundaryBuffer || i + kBoundaryBuffer >= n) edge_max = std::max(edge_max, a);
    }
    o.edge_ratio = field_max > 0.0 ? edge_max / field_max : 0.0;
    return o;
}

RunResult run(const SystemState& initial, const ControlProfile& profile,
              const PhysicalParams& params, const RunOptions& options)
{
    const double dt = initial.grid.dt;
    if (options.t_end < initial.t) throw ConfigError("run: t_end precedes the initial time");
    if (options.observe_every == 0) throw ConfigError("run: observe_every must be >= 1");
    const auto steps = static_cast<std::size_t>(std::llround((options.t_end - initial.t) / dt));

    RunResult result;
    if (options.scheme == Scheme::Adiabatic && dt * params.gamma >= 1.0)
        result.warnings.emplace_back("adiabatic scheme with dt*gamma >= 1; elimination of P is not resolved");

    std::vector<std::size_t> snap_steps;
    if (steps == 0 || options.n_snapshots == 1) {
        snap_steps.push_back(steps);
    } else if (options.n_snapshots >= 2) {
        const std::size_t k = options.n_snapshots - 1;
        for (std::size_t j = 0; j <= k; ++j) snap_steps.push_back((j * steps + k / 2) / k);
        snap_steps.erase(std::unique(snap_steps.begin(), snap_steps.end()), snap_steps.end());
    }

    auto record = [&](const SystemState& st, std::size_t n_step) {
        if (n_step % options.observe_every == 0 || n_step == steps)
            result.series.push_back(
                observables(st, phi_field(profile, st.grid, st.t), options.center));
        if (std::binary_search(snap_steps.begin(), snap_steps.end(), n_step))
            result.snapshots.push_back(st);
    };

    SystemState st = initial;
    record(st, 0);
    for (std::size_t k = 1; k <= steps; ++k) {
        try {
            st = step(options.scheme, st, profile, params, dt);
        } catch (const NumericalError& e) {
            result.failure = e.what();
            return result;
        }
        st.t = initial.t + static_cast<double>(k) * dt;
        record(st, k);
    }
    return result;
}

Field gaussian_envelope(const Grid& grid, double width, double center, double amplitude)
{
    if (!(width > 0.0)) throw ConfigError("gaussian_envelope: width must be > 0");
    Field f(grid.n_points);
    for (std::size_t i = 0; i < grid.n_points; ++i) {
        const double u = (grid.z(i) - center) / width;
        f[i] = amplitude * std::exp(-0.5 * u * u);
    }
    return f;
}

SystemState stored_gaussian(const Grid& grid, double width, double center, double amplitude,
                            double t0)
{
    SystemState st = SystemState::zeros(grid, t0);
    st.s = gaussian_envelope(grid, width, center, amplitude);
    return st;
}

SystemState polariton(const Grid& grid, const PhysicalParams& params,
                      const ControlProfile& profile, const Field& psi, double t0)
{
    if (psi.size() != grid.n_points) throw ConfigError("polariton: envelope length mismatch");
    SystemState st = SystemState::zeros(grid, t0);
    const double g = params.coupling;
    for (std::size_t i = 0; i < grid.n_points; ++i) {
        const auto a = profile.at(grid.z(i), t0);
        const double o0 = std::sqrt(a.total_intensity());
        const double sin_theta = g / std::hypot(g, o0);
        st.s[i] = -sin_theta * psi[i];
        st.e_plus[i] = -a.plus * st.s[i] / g;
        st.e_minus[i] = -a.minus * st.s[i] / g;
    }
    return st;
}

} // namespace slp
