#include "slp/comb.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "slp/errors.hpp"

namespace slp {

CombState comb_initial(const Grid& grid, const CombControl& control, const Field& spin,
                       double t0)
{
    control.validate();
    if (spin.size() != grid.n_points) throw ConfigError("comb_initial: spin length mismatch");
    CombState st;
    st.grid = grid;
    st.t = t0;
    st.s = spin;
    const Field zero(grid.n_points, cplx{});
    for (const auto& line : control.lines)
        st.components.push_back({line.detuning, line.omega_plus, line.omega_minus, zero, zero,
                                  zero, zero});
    return st;
}

namespace {

const cplx I{0.0, 1.0};

// Per-cell generator; y = [E+_0, E-_0, P+_0, P-_0, E+_1, ..., S].
struct CombCell {
    const std::vector<CombComponent>& comps;
    double gamma;
    double gamma0;
    double g;

    void operator()(const std::vector<cplx>& y, std::vector<cplx>& dy) const
    {
        const std::size_t k_n = comps.size();
        const cplx s = y[4 * k_n];
        cplx ds = -gamma0 * s;
        for (std::size_t k = 0; k < k_n; ++k) {
            const auto& c = comps[k];
            const cplx decay{gamma, c.detuning};
            const cplx ep = y[4 * k], em = y[4 * k + 1], pp = y[4 * k + 2], pm = y[4 * k + 3];
            dy[4 * k] = I * g * pp;
            dy[4 * k + 1] = I * g * pm;
            dy[4 * k + 2] = -decay * pp + I * g * ep + I * c.omega_plus * s;
            dy[4 * k + 3] = -decay * pm + I * g * em + I * c.omega_minus * s;
            ds += I * (std::conj(c.omega_plus) * pp + std::conj(c.omega_minus) * pm);
        }
        dy[4 * k_n] = ds;
    }
};

void comb_local(CombState& st, const PhysicalParams& params, double span)
{
    const std::size_t k_n = st.components.size();
    double omega_sq = 0.0, detuning_max = 0.0;
    for (const auto& c : st.components) {
        omega_sq += std::norm(c.omega_plus) + std::norm(c.omega_minus);
        detuning_max = std::max(detuning_max, std::abs(c.detuning));
    }
    const double bound = params.gamma + detuning_max + params.gamma0 +
                         std::sqrt(omega_sq + params.coupling * params.coupling);
    const auto m = static_cast<std::size_t>(std::max(1.0, std::ceil(span * bound / 0.25)));
    const double h = span / static_cast<double>(m);

    const CombCell rhs{st.components, params.gamma, params.gamma0, params.coupling};
    const std::size_t dim = 4 * k_n + 1;
    std::vector<cplx> y(dim), tmp(dim), k1(dim), k2(dim), k3(dim), k4(dim);
    for (std::size_t i = 0; i < st.grid.n_points; ++i) {
        for (std::size_t k = 0; k < k_n; ++k) {
            const auto& c = st.components[k];
            y[4 * k] = c.e_plus[i];
            y[4 * k + 1] = c.e_minus[i];
            y[4 * k + 2] = c.p_plus[i];
            y[4 * k + 3] = c.p_minus[i];
        }
        y[4 * k_n] = st.s[i];
        for (std::size_t sub = 0; sub < m; ++sub) {
            rhs(y, k1);
            for (std::size_t j = 0; j < dim; ++j) tmp[j] = y[j] + 0.5 * h * k1[j];
            rhs(tmp, k2);
            for (std::size_t j = 0; j < dim; ++j) tmp[j] = y[j] + 0.5 * h * k2[j];
            rhs(tmp, k3);
            for (std::size_t j = 0; j < dim; ++j) tmp[j] = y[j] + h * k3[j];
            rhs(tmp, k4);
            for (std::size_t j = 0; j < dim; ++j)
                y[j] += (h / 6.0) * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        }
        for (std::size_t k = 0; k < k_n; ++k) {
            auto& c = st.components[k];
            c.e_plus[i] = y[4 * k];
            c.e_minus[i] = y[4 * k + 1];
            c.p_plus[i] = y[4 * k + 2];
            c.p_minus[i] = y[4 * k + 3];
        }
        st.s[i] = y[4 * k_n];
    }
}

void comb_shift(CombState& st)
{
    const std::size_t n = st.grid.n_points;
    for (auto& c : st.components) {
        std::move_backward(c.e_plus.begin(), c.e_plus.end() - 1, c.e_plus.end());
        c.e_plus[0] = cplx{};
        std::move(c.e_minus.begin() + 1, c.e_minus.end(), c.e_minus.begin());
        c.e_minus[n - 1] = cplx{};
    }
}

void comb_check_finite(const CombState& st)
{
    auto bad = [](const Field& f) {
        return std::any_of(f.begin(), f.end(),
                           [](const cplx& v) { return !std::isfinite(v.real()) || !std::isfinite(v.imag()); });
    };
    if (bad(st.s)) throw NumericalError("comb_evolve: non-finite S at t=" + std::to_string(st.t));
    for (std::size_t k = 0; k < st.components.size(); ++k) {
        const auto& c = st.components[k];
        if (bad(c.e_plus) || bad(c.e_minus) || bad(c.p_plus) || bad(c.p_minus)) {
            std::ostringstream os;
            os << "comb_evolve: non-finite amplitude in line " << k << " (Delta=" << c.detuning
               << ") at t=" << st.t;
            throw NumericalError(os.str());
        }
    }
}

} // namespace

CombState comb_evolve(const CombState& state, const PhysicalParams& params, double dt)
{
    const double dz = state.grid.dz();
    if (std::abs(params.light_speed * dt - dz) > 1e-9 * dz)
        throw ConfigError("comb_evolve: exact-shift transport needs c*dt == dz");
    CombState next = state;
    comb_local(next, params, 0.5 * dt);
    comb_shift(next);
    comb_local(next, params, 0.5 * dt);
    next.t = state.t + dt;
    comb_check_finite(next);
    return next;
}

Field comb_total_field(const CombState& state, double light_speed)
{
    Field out(state.grid.n_points, cplx{});
    for (const auto& c : state.components) {
        for (std::size_t i = 0; i < state.grid.n_points; ++i) {
            const double z = state.grid.z(i);
            out[i] += c.e_plus[i] * std::polar(1.0, -c.detuning * (state.t - z / light_speed)) +
                      c.e_minus[i] * std::polar(1.0, -c.detuning * (state.t + z / light_speed));
        }
    }
    return out;
}

double comb_photon_number(const CombState& state)
{
    double sum = 0.0;
    for (const auto& c : state.components)
        for (std::size_t i = 0; i < state.grid.n_points; ++i)
            sum += std::norm(c.e_plus[i]) + std::norm(c.e_minus[i]);
    return sum * state.grid.dz();
}

SlavedPair adiabatic_offresonant(const Field& spin, const CombLine& line,
                                 const PhysicalParams& params)
{
    SlavedPair out{Field(spin.size()), Field(spin.size())};
    for (std::size_t i = 0; i < spin.size(); ++i) {
        out.plus[i] = -line.omega_plus * spin[i] / params.coupling;
        out.minus[i] = -line.omega_minus * spin[i] / params.coupling;
    }
    return out;
}

Field matched_field(const Field& spin, const CombControl& control, const PhysicalParams& params,
                    const Grid& grid, double t)
{
    if (spin.size() != grid.n_points) throw ConfigError("matched_field: spin length mismatch");
    const ControlProfile profile(control);
    Field out(grid.n_points);
    for (std::size_t i = 0; i < grid.n_points; ++i) {
        const auto a = profile.at(grid.z(i), t);
        out[i] = -(a.plus + a.minus) * spin[i] / params.coupling;
    }
    return out;
}

double comb_bandwidth(const PhysicalParams& params, double length)
{
    if (!(length > 0.0)) throw DomainError("comb_bandwidth: length must be > 0");
    return params.gamma * length / params.absorption_length();
}

Field spin_diffusion_step(const Field& spin, double dz, double diffusivity, double dt)
{
    if (diffusivity < 0.0 || dt < 0.0) throw ConfigError("spin_diffusion_step: D and dt must be >= 0");
    if (diffusivity * dt > 0.5 * dz * dz * (1.0 + 1e-12)) {
        std::ostringstream os;
        os << "spin_diffusion_step: dt=" << dt << " exceeds the explicit limit dz^2/(2D)="
           << 0.5 * dz * dz / diffusivity;
        throw ConfigError(os.str());
    }
    const std::size_t n = spin.size();
    Field out(spin);
    if (n < 2) return out;
    const double r = diffusivity * dt / (dz * dz);
    for (std::size_t i = 0; i < n; ++i) {
        const cplx left = spin[i == 0 ? 1 : i - 1];
        const cplx right = spin[i + 1 == n ? n - 2 : i + 1];
        out[i] = spin[i] + r * (left - 2.0 * spin[i] + right);
    }
    return out;
}

CombControl equally_spaced_comb(std::size_t half_lines, double spacing, double amplitude,
                                double light_speed)
{
    CombControl c;
    c.light_speed = light_speed;
    const auto m = static_cast<long>(half_lines);
    for (long k = -m; k <= m; ++k)
        c.lines.push_back({static_cast<double>(k) * spacing, cplx{amplitude, 0.0},
                           cplx{amplitude, 0.0}});
    return c;
}

double intensity_fwhm(const Field& f, const Grid& grid)
{
    const std::size_t n = f.size();
    if (n < 3) throw DomainError("intensity_fwhm: field too short");
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = std::norm(f[i]);
    const auto peak_it = std::max_element(w.begin(), w.end());
    const auto p = static_cast<std::size_t>(peak_it - w.begin());
    const double half = 0.5 * *peak_it;
    if (!(half > 0.0)) throw DomainError("intensity_fwhm: zero field");
    std::size_t lo = p, hi = p;
    while (lo > 0 && w[lo] > half) --lo;
    while (hi + 1 < n && w[hi] > half) ++hi;
    if (w[lo] > half || w[hi] > half)
        throw DomainError("intensity_fwhm: half maximum not reached inside the grid");
    const double dz = grid.dz();
    const double zl = grid.z(lo) + dz * (half - w[lo]) / (w[lo + 1] - w[lo]);
    const double zr = grid.z(hi) - dz * (half - w[hi]) / (w[hi - 1] - w[hi]);
    return zr - zl;
}

} // namespace slp
