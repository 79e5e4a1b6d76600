#include "slp/fokker_planck.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "slp/errors.hpp"
#include "slp/numerics.hpp"

namespace slp {

FpeLocal fpe_coefficients_at(double phi, double dphi, double ddphi, double v_gr, double l_abs)
{
    const double s = std::sin(2.0 * phi);
    const double k = std::cos(2.0 * phi);
    const double p2 = dphi * dphi;
    FpeLocal c;
    c.a0 = -v_gr * (s * dphi + 2.0 * l_abs * s * s * p2 - l_abs * k * k * p2 -
                    l_abs * s * k * ddphi);
    c.a1 = -v_gr * k * (1.0 + 4.0 * l_abs * s * dphi);
    c.diffusion = v_gr * l_abs * s * s;
    return c;
}

FpeCoefficients fpe_coefficients(const std::vector<double>& phi, const std::vector<double>& v_gr,
                                 double dz, const PhysicalParams& params)
{
    const std::size_t n = phi.size();
    if (v_gr.size() != n) throw ConfigError("fpe_coefficients: length mismatch");
    const auto d1 = numerics::derivative(std::span<const double>(phi), dz);
    const auto d2 = numerics::second_derivative(std::span<const double>(phi), dz);
    const double l_abs = params.absorption_length();
    FpeCoefficients out;
    out.a0.resize(n);
    out.a1.resize(n);
    out.diffusion.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto c = fpe_coefficients_at(phi[i], d1[i], d2[i], v_gr[i], l_abs);
        out.a0[i] = c.a0;
        out.a1[i] = c.a1;
        out.diffusion[i] = c.diffusion;
        if (std::abs(d1[i]) * dz > 0.1) out.smooth = false;
    }
    return out;
}

void OUParams::validate() const
{
    if (!(l > 0.0) || !(l_abs > 0.0) || !(v_gr > 0.0))
        throw ConfigError("OU parameters: l, l_abs and v_gr must be > 0");
}

double OUParams::oscillator_length() const { return std::sqrt(l * l_abs); }
double OUParams::hermite_scale() const { return std::sqrt(2.0 * l * l_abs); }

double ou_stationary(const OUParams& p, double z, double t)
{
    return std::exp(-z * z / (2.0 * p.l * p.l_abs)) * std::exp(-p.v_gr * t / (2.0 * p.l));
}

Field ou_stationary(const OUParams& p, const Grid& grid, double t)
{
    Field f(grid.n_points);
    for (std::size_t i = 0; i < grid.n_points; ++i) f[i] = ou_stationary(p, grid.z(i), t);
    return f;
}

HermiteMode::HermiteMode(std::size_t n, const OUParams& params)
    : n_(n), p_(params), lambda_(static_cast<double>(n) * params.v_gr / params.l)
{
    p_.validate();
}

std::vector<double> HermiteMode::scaled(double x) const
{
    auto h = numerics::scaled_hermite(n_, x);
    for (double v : h) {
        if (!std::isfinite(v)) {
            std::ostringstream os;
            os << "Hermite recurrence overflow for n=" << n_ << " at x=" << x;
            throw NumericalError(os.str());
        }
    }
    return h;
}

double HermiteMode::operator()(double z) const
{
    return scaled(z / p_.hermite_scale())[n_];
}

// h_n'(x) = sqrt(2n) h_{n-1}(x)
double HermiteMode::derivative(double z) const
{
    if (n_ == 0) return 0.0;
    const double a = p_.hermite_scale();
    const auto h = scaled(z / a);
    return std::sqrt(2.0 * static_cast<double>(n_)) * h[n_ - 1] / a;
}

double HermiteMode::second_derivative(double z) const
{
    if (n_ < 2) return 0.0;
    const double a = p_.hermite_scale();
    const auto h = scaled(z / a);
    const double dn = static_cast<double>(n_);
    return 2.0 * std::sqrt(dn * (dn - 1.0)) * h[n_ - 2] / (a * a);
}

double HermiteMode::backward_residual(double z) const
{
    const double d = p_.diffusivity();
    const double f = (*this)(z);
    const double t2 = d * second_derivative(z);
    const double t1 = p_.v_gr * (z / p_.l) * derivative(z);
    const double t0 = lambda_ * f;
    const double scale = std::max({std::abs(t0), std::abs(t1), std::abs(t2), p_.v_gr / p_.l});
    return std::abs(t2 - t1 + t0) / scale;
}

double HermiteMode::profile(double z) const
{
    const double a = p_.hermite_scale();
    const double x = z / a;
    // h_n(x) exp(-x^2) = pi^{1/4} psi_n(x) exp(-x^2 / 2)
    const auto psi = numerics::hermite_functions(n_, x);
    return std::pow(std::numbers::pi, 0.25) * psi[n_] * std::exp(-0.5 * x * x) /
           (std::sqrt(std::numbers::pi) * a);
}

HermiteMode hermite_modes(std::size_t n, const OUParams& params)
{
    return HermiteMode(n, params);
}

namespace {

double l2_norm(const Field& f, double dz)
{
    double s = 0.0;
    for (const auto& v : f) s += std::norm(v);
    return std::sqrt(s * dz);
}

double relative_difference(const Field& a, const Field& b, double dz)
{
    Field d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
    const double na = l2_norm(a, dz);
    return na > 0.0 ? l2_norm(d, dz) / na : l2_norm(d, dz);
}

} // namespace

OUExpansion ou_project(const Field& sum0, const Grid& grid, const OUParams& params,
                       std::size_t order)
{
    params.validate();
    const std::size_t n = grid.n_points;
    if (sum0.size() != n) throw ConfigError("ou_project: length mismatch");

    double peak = 0.0;
    for (const auto& v : sum0) peak = std::max(peak, std::abs(v));
    const double edge = std::max(std::abs(sum0.front()), std::abs(sum0.back()));
    if (peak > 0.0 && edge > 1e-8 * peak) {
        std::ostringstream os;
        os << "ou_project: initial envelope has not decayed at the grid edges (|edge|/peak = "
           << edge / peak << "); widen the grid";
        throw NumericalError(os.str());
    }

    const double a = params.hermite_scale();
    const double dz = grid.dz();
    OUExpansion out;
    out.coefficients.assign(order + 1, cplx{});
    for (std::size_t i = 0; i < n; ++i) {
        if (sum0[i] == cplx{}) continue;
        const auto h = numerics::scaled_hermite(order, grid.z(i) / a);
        for (std::size_t k = 0; k <= order; ++k) out.coefficients[k] += sum0[i] * h[k] * dz;
    }
    for (const auto& c : out.coefficients)
        if (!std::isfinite(std::abs(c)))
            throw NumericalError("ou_project: Hermite overflow; reduce the grid extent or order");
    out.residual = relative_difference(sum0, ou_reconstruct(out.coefficients, grid, params, 0.0), dz);
    out.suggested_order = order;
    return out;
}

std::vector<cplx> ou_project_gauss_hermite(const std::function<cplx(double)>& sum0,
                                           const OUParams& params, std::size_t order,
                                           std::size_t nodes)
{
    params.validate();
    const auto rule = numerics::gauss_hermite(nodes);
    const double a = params.hermite_scale();
    std::vector<cplx> c(order + 1, cplx{});
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
        const double x = rule.nodes[j];
        // exp(x^2) h_n(x) = pi^{1/4} psi_n(x) exp(3 x^2 / 2)
        const auto psi = numerics::hermite_functions(order, x);
        const cplx f = sum0(a * x) * std::exp(1.5 * x * x) * std::pow(std::numbers::pi, 0.25);
        for (std::size_t k = 0; k <= order; ++k) c[k] += rule.weights[j] * a * f * psi[k];
    }
    return c;
}

Field ou_reconstruct(const std::vector<cplx>& coefficients, const Grid& grid,
                     const OUParams& params, double t)
{
    params.validate();
    if (coefficients.empty()) return Field(grid.n_points, cplx{});
    const std::size_t order = coefficients.size() - 1;
    const double a = params.hermite_scale();
    const double norm = std::pow(std::numbers::pi, 0.25) / (std::sqrt(std::numbers::pi) * a);
    std::vector<cplx> weighted(order + 1);
    for (std::size_t k = 0; k <= order; ++k)
        weighted[k] = coefficients[k] *
                      std::exp(-params.v_gr * (static_cast<double>(k) + 0.5) * t / params.l);
    Field out(grid.n_points);
    for (std::size_t i = 0; i < grid.n_points; ++i) {
        const double x = grid.z(i) / a;
        const auto psi = numerics::hermite_functions(order, x);
        const double g = std::exp(-0.5 * x * x) * norm;
        cplx s{};
        for (std::size_t k = 0; k <= order; ++k) s += weighted[k] * psi[k];
        out[i] = s * g;
    }
    return out;
}

Field ou_initial_value(const Field& sum0, const Grid& grid, const OUParams& params, double t,
                       std::size_t order, double tolerance)
{
    if (t < 0.0) throw ConfigError("ou_initial_value: t must be >= 0");
    const auto exp = ou_project(sum0, grid, params, order);
    if (exp.residual > tolerance) {
        std::size_t suggestion = 0;
        for (std::size_t trial = order + 1; trial <= std::max<std::size_t>(4 * order, 200);
             trial += std::max<std::size_t>(1, trial / 8)) {
            if (ou_project(sum0, grid, params, trial).residual <= tolerance) {
                suggestion = trial;
                break;
            }
        }
        std::ostringstream os;
        os << "ou_initial_value: truncation at N=" << order << " leaves relative residual "
           << exp.residual << " > " << tolerance;
        if (suggestion > 0)
            os << "; N=" << suggestion << " suffices";
        else
            os << "; no order up to 200 suffices (input too narrow for the grid)";
        throw NumericalError(os.str());
    }
    return ou_reconstruct(exp.coefficients, grid, params, t);
}

double cavity_decay(double n0, const OUParams& params, double t)
{
    return n0 * std::exp(-gamma_eff(params) * t);
}

double gamma_eff(const OUParams& params)
{
    return params.v_gr / params.l;
}

double fit_linear_scale(const ControlProfile& profile, double t, double center,
                        double initial_guess)
{
    auto cos2phi = [&](double z) {
        const auto a = profile.at(z, t);
        const double ip = std::norm(a.plus), im = std::norm(a.minus);
        if (!(ip + im > 0.0)) throw DomainError("fit_linear_scale: control vanishes at z=" + std::to_string(z));
        return (ip - im) / (ip + im);
    };
    double l = initial_guess;
    if (!(l > 0.0)) {
        const double h = 1e-3;
        const double slope = (cos2phi(center + h) - cos2phi(center - h)) / (2.0 * h);
        if (!(slope < 0.0))
            throw DomainError("fit_linear_scale: cos 2phi does not decrease through the center");
        l = -1.0 / slope;
    }
    constexpr std::size_t samples = 201;
    for (int iter = 0; iter < 50; ++iter) {
        std::vector<double> xs(samples), ys(samples);
        const double half = 0.25 * l;
        for (std::size_t i = 0; i < samples; ++i) {
            const double u = -half + 2.0 * half * static_cast<double>(i) / (samples - 1);
            xs[i] = u;
            ys[i] = cos2phi(center + u);
        }
        const auto fit = numerics::fit_line(xs, ys);
        if (!(fit.slope < 0.0)) throw DomainError("fit_linear_scale: fitted slope is not negative");
        const double next = -1.0 / fit.slope;
        if (std::abs(next - l) <= 1e-10 * l) return next;
        l = next;
    }
    return l;
}

double foci_linear_scale(double half_separation, double rayleigh_range)
{
    if (!(half_separation > 0.0)) throw DomainError("foci_linear_scale: separation must be > 0");
    return (rayleigh_range * rayleigh_range + half_separation * half_separation) /
           (2.0 * half_separation);
}

} // namespace slp
