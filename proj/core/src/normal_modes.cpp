#include "slp/normal_modes.hpp"

#include <algorithm>
#include <cmath>

#include "slp/errors.hpp"
#include "slp/numerics.hpp"

namespace slp {

NormalModes to_normal_modes(const Field& e_plus, const Field& e_minus,
                            const std::vector<double>& phi)
{
    const std::size_t n = phi.size();
    if (e_plus.size() != n || e_minus.size() != n)
        throw ConfigError("to_normal_modes: length mismatch");
    NormalModes m{Field(n), Field(n)};
    for (std::size_t i = 0; i < n; ++i) {
        const double c = std::cos(phi[i]), s = std::sin(phi[i]);
        m.sum[i] = c * e_plus[i] + s * e_minus[i];
        m.diff[i] = s * e_plus[i] - c * e_minus[i];
    }
    return m;
}

TravellingFields from_normal_modes(const Field& sum, const Field& diff,
                                   const std::vector<double>& phi)
{
    const std::size_t n = phi.size();
    if (sum.size() != n || diff.size() != n)
        throw ConfigError("from_normal_modes: length mismatch");
    TravellingFields f{Field(n), Field(n)};
    for (std::size_t i = 0; i < n; ++i) {
        const double c = std::cos(phi[i]), s = std::sin(phi[i]);
        f.plus[i] = c * sum[i] + s * diff[i];
        f.minus[i] = s * sum[i] - c * diff[i];
    }
    return f;
}

namespace {

struct ModeCoefficients {
    std::vector<double> v, c2, s2, dphi;
};

struct ModeRhs {
    const ModeCoefficients& k;
    double c;
    cplx damping; // g_p^2 / Gamma
    double dz;

    void operator()(const Field& es, const Field& ed, Field& des, Field& ded) const
    {
        const auto des_dz = numerics::derivative(std::span<const cplx>(es), dz);
        const auto ded_dz = numerics::derivative(std::span<const cplx>(ed), dz);
        const std::size_t n = es.size();
        for (std::size_t i = 0; i < n; ++i) {
            const double v = k.v[i], c2 = k.c2[i], s2 = k.s2[i], p = k.dphi[i];
            des[i] = -v * c2 * des_dz[i] - v * s2 * ded_dz[i] + v * p * (s2 * es[i] - c2 * ed[i]);
            ded[i] = c * c2 * ded_dz[i] - c * s2 * des_dz[i] - damping * ed[i] -
                     c * p * (c2 * es[i] + s2 * ed[i]);
        }
    }
};

} // namespace

NormalModeState evolve_normal_modes(const NormalModeState& state, const PhysicalParams& params,
                                    double duration)
{
    const std::size_t n = state.grid.n_points;
    if (state.sum.size() != n || state.diff.size() != n || state.phi.size() != n ||
        state.theta.size() != n)
        throw ConfigError("evolve_normal_modes: array length mismatch");
    if (duration < 0.0) throw ConfigError("evolve_normal_modes: negative duration");

    const double dz = state.grid.dz();
    const double c = params.light_speed;
    ModeCoefficients k;
    k.v.resize(n);
    k.c2.resize(n);
    k.s2.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double ct = std::cos(state.theta[i]);
        k.v[i] = c * ct * ct;
        k.c2[i] = std::cos(2.0 * state.phi[i]);
        k.s2[i] = std::sin(2.0 * state.phi[i]);
    }
    k.dphi = numerics::derivative(std::span<const double>(state.phi), dz);
    const cplx damping = params.coupling * params.coupling / params.optical_decay();
    const ModeRhs rhs{k, c, damping, dz};

    // stability: advection at speed c and damping at rate |g^2 / Gamma|
    const double dt_max = std::min(0.5 * dz / c, 0.5 / std::abs(damping));
    const auto steps = static_cast<std::size_t>(std::ceil(duration / dt_max - 1e-12));
    NormalModeState out = state;
    if (steps == 0) return out;
    const double h = duration / static_cast<double>(steps);

    Field k1s(n), k1d(n), k2s(n), k2d(n), k3s(n), k3d(n), k4s(n), k4d(n), ts(n), td(n);
    for (std::size_t s = 0; s < steps; ++s) {
        auto& es = out.sum;
        auto& ed = out.diff;
        rhs(es, ed, k1s, k1d);
        for (std::size_t i = 0; i < n; ++i) {
            ts[i] = es[i] + 0.5 * h * k1s[i];
            td[i] = ed[i] + 0.5 * h * k1d[i];
        }
        rhs(ts, td, k2s, k2d);
        for (std::size_t i = 0; i < n; ++i) {
            ts[i] = es[i] + 0.5 * h * k2s[i];
            td[i] = ed[i] + 0.5 * h * k2d[i];
        }
        rhs(ts, td, k3s, k3d);
        for (std::size_t i = 0; i < n; ++i) {
            ts[i] = es[i] + h * k3s[i];
            td[i] = ed[i] + h * k3d[i];
        }
        rhs(ts, td, k4s, k4d);
        for (std::size_t i = 0; i < n; ++i) {
            es[i] += (h / 6.0) * (k1s[i] + 2.0 * k2s[i] + 2.0 * k3s[i] + k4s[i]);
            ed[i] += (h / 6.0) * (k1d[i] + 2.0 * k2d[i] + 2.0 * k3d[i] + k4d[i]);
            if (!std::isfinite(std::norm(es[i])) || !std::isfinite(std::norm(ed[i])))
                throw NumericalError("evolve_normal_modes: non-finite mode amplitude at z=" +
                                     std::to_string(out.grid.z(i)) +
                                     ", t=" + std::to_string(out.t + static_cast<double>(s + 1) * h));
        }
    }
    out.t = state.t + duration;
    return out;
}

AdiabaticDiff adiabatic_E_D(const Field& sum, const std::vector<double>& phi,
                            const PhysicalParams& params, double dz, double tolerance)
{
    const std::size_t n = sum.size();
    if (phi.size() != n) throw ConfigError("adiabatic_E_D: length mismatch");
    const cplx length = params.light_speed * params.optical_decay() /
                        (params.coupling * params.coupling);
    const auto d_sum = numerics::derivative(std::span<const cplx>(sum), dz);
    const auto d_phi = numerics::derivative(std::span<const double>(phi), dz);

    AdiabaticDiff out;
    out.diff.resize(n);
    double max_sum = 0.0, max_grad = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double s2 = std::sin(2.0 * phi[i]), c2 = std::cos(2.0 * phi[i]);
        out.diff[i] = -s2 * length * d_sum[i] - c2 * length * d_phi[i] * sum[i];
        max_sum = std::max(max_sum, std::abs(sum[i]));
        max_grad = std::max(max_grad, std::abs(length * d_sum[i]));
        out.gradient_ratio = std::max(out.gradient_ratio, std::abs(length * d_phi[i] * s2));
    }
    out.envelope_ratio = max_sum > 0.0 ? max_grad / max_sum : 0.0;
    out.valid = out.envelope_ratio < tolerance && out.gradient_ratio < tolerance;
    return out;
}

Field diffusion_evolve(const Field& sum0, double dz, double diffusivity, double t)
{
    if (t < 0.0 || diffusivity < 0.0)
        throw ConfigError("diffusion_evolve: t and D must be non-negative");
    return numerics::heat_kernel_convolve(sum0, dz, 2.0 * diffusivity * t);
}

double width_law(double d0, double diffusivity, double t, double t0)
{
    return d0 + 2.0 * diffusivity * (t - t0);
}

double diffusive_decay(double n0, double width0, double diffusivity, double t)
{
    return n0 * width0 / std::sqrt(width0 * width0 + 2.0 * diffusivity * t);
}

double exact_width(double d0, double g0, double diffusivity, double l_abs, double light_speed,
                   double t)
{
    const double tau = l_abs / light_speed;
    return d0 + 2.0 * diffusivity * t +
           2.0 * diffusivity * tau * (1.0 - g0 / l_abs) * std::expm1(-t / tau);
}

std::vector<double> exact_width_series(double d0, double g0,
                                       const std::function<double(double)>& v_gr, double l_abs,
                                       double light_speed, double t0,
                                       const std::vector<double>& times)
{
    std::vector<double> out;
    out.reserve(times.size());
    const double rate = light_speed / l_abs;
    const double h_max = 0.05 / rate;
    double t = t0, d = d0, g = g0;
    // g' is linear and autonomous: g(t) = l + (g_a - l) exp(-rate (t - t_a))
    auto g_at = [&](double g_a, double dt) { return l_abs + (g_a - l_abs) * std::exp(-rate * dt); };
    for (double target : times) {
        if (target < t - 1e-12) throw ConfigError("exact_width_series: times must be ascending and >= t0");
        while (t < target) {
            const double h = std::min(h_max, target - t);
            // Simpson on d' = 2 v g with g known in closed form
            const double gm = g_at(g, 0.5 * h), ge = g_at(g, h);
            d += (h / 6.0) * 2.0 * (v_gr(t) * g + 4.0 * v_gr(t + 0.5 * h) * gm + v_gr(t + h) * ge);
            g = ge;
            t += h;
        }
        out.push_back(d);
    }
    return out;
}

DriftParameters drift_parameters(double phi, double theta, const PhysicalParams& params)
{
    const double v = group_velocity(params, theta);
    const double s2 = std::sin(2.0 * phi);
    return {v * std::cos(2.0 * phi), v * params.absorption_length() * s2 * s2};
}

} // namespace slp
