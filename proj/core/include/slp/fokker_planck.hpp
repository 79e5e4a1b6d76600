#pragma once

#include <functional>
#include <vector>

#include "slp/core_model.hpp"

namespace slp {

/// Drift-diffusion coefficients of
///   dE_S/dt = A0 E_S + d/dz [A1 E_S] + d^2/dz^2 [D E_S]
/// obtained after eliminating E_D with static mixing angles.
struct FpeCoefficients {
    std::vector<double> a0;
    std::vector<double> a1;
    std::vector<double> diffusion;
    bool smooth = true; ///< false when phi changes by more than 0.1 rad per cell
};

/// Pointwise coefficients from phi, phi', phi'' and the local group velocity.
struct FpeLocal {
    double a0 = 0.0;
    double a1 = 0.0;
    double diffusion = 0.0;
};
[[nodiscard]] FpeLocal fpe_coefficients_at(double phi, double dphi, double ddphi, double v_gr,
                                           double l_abs);

/// Grid version; phi derivatives by 4th-order finite differences, v_gr(z)
/// supplied per cell.
[[nodiscard]] FpeCoefficients fpe_coefficients(const std::vector<double>& phi,
                                               const std::vector<double>& v_gr, double dz,
                                               const PhysicalParams& params);

struct OUParams {
    double l = 1.0;     ///< cos 2phi ~ -z / l
    double l_abs = 1.0;
    double v_gr = 1.0;

    void validate() const;
    [[nodiscard]] double oscillator_length() const; ///< sqrt(l l_abs)
    [[nodiscard]] double hermite_scale() const;     ///< sqrt(2 l l_abs)
    [[nodiscard]] double diffusivity() const { return v_gr * l_abs; }
};

/// exp(-z^2 / (2 l l_abs)) exp(-v_gr t / (2 l))
[[nodiscard]] double ou_stationary(const OUParams& p, double z, double t);
[[nodiscard]] Field ou_stationary(const OUParams& p, const Grid& grid, double t);

/// Phi_n(z) = (2^n n!)^{-1/2} H_n(z / sqrt(2 l l_abs)) with eigenvalue
/// lambda_n = n v_gr / l of D Phi'' - v_gr (z/l) Phi' + lambda Phi = 0.
class HermiteMode {
public:
    HermiteMode(std::size_t n, const OUParams& params);

    [[nodiscard]] std::size_t index() const { return n_; }
    [[nodiscard]] double eigenvalue() const { return lambda_; }

    /// Throws NumericalError if the recurrence overflows at z.
    [[nodiscard]] double operator()(double z) const;
    [[nodiscard]] double derivative(double z) const;
    [[nodiscard]] double second_derivative(double z) const;

    /// |D Phi'' - v (z/l) Phi' + lambda Phi| / max(|lambda Phi|, |D Phi''|, 1)
    [[nodiscard]] double backward_residual(double z) const;

    /// Forward eigenfunction (normalized so that int Phi_n * profile dz = 1):
    /// h_n(x) exp(-x^2) / sqrt(2 pi l l_abs).
    [[nodiscard]] double profile(double z) const;

private:
    std::size_t n_;
    OUParams p_;
    double lambda_;
    [[nodiscard]] std::vector<double> scaled(double x) const;
};

[[nodiscard]] HermiteMode hermite_modes(std::size_t n, const OUParams& params);

struct OUExpansion {
    std::vector<cplx> coefficients; ///< c_n, n = 0..N
    double residual = 0.0;          ///< ||E_S0 - reconstruction(0)|| / ||E_S0||
    std::size_t suggested_order = 0;
};

/// c_n = int E_S0(z) h_n(z / a) dz by grid midpoint sums. Throws
/// NumericalError if the integrand has not decayed at the grid edges.
[[nodiscard]] OUExpansion ou_project(const Field& sum0, const Grid& grid, const OUParams& params,
                                     std::size_t order);

/// Same projection by Gauss-Hermite quadrature of f(z) exp(x^2) h_n(x).
[[nodiscard]] std::vector<cplx> ou_project_gauss_hermite(const std::function<cplx(double)>& sum0,
                                                         const OUParams& params,
                                                         std::size_t order,
                                                         std::size_t nodes = 160);

/// Sum_n c_n h_n(x) exp(-x^2) / sqrt(2 pi l l_abs) exp(-v (n + 1/2) t / l).
[[nodiscard]] Field ou_reconstruct(const std::vector<cplx>& coefficients, const Grid& grid,
                                   const OUParams& params, double t);

/// Projects, checks the t = 0 reconstruction against `tolerance` and
/// evolves. Throws NumericalError naming a sufficient order when the
/// truncation is too coarse.
[[nodiscard]] Field ou_initial_value(const Field& sum0, const Grid& grid, const OUParams& params,
                                     double t, std::size_t order, double tolerance = 1e-2);

/// n0 exp(-v_gr t / l)
[[nodiscard]] double cavity_decay(double n0, const OUParams& params, double t);
[[nodiscard]] double gamma_eff(const OUParams& params);

/// Fits cos 2phi(z) = -(z - center) / l over |z - center| <= l / 4 by least
/// squares, iterating on l until the window is self-consistent.
[[nodiscard]] double fit_linear_scale(const ControlProfile& profile, double t, double center = 0.0,
                                      double initial_guess = 0.0);

/// Analytic l for paraxial foci at -a (forward beam) and +a (backward beam)
/// with equal Rayleigh range z_R: (z_R^2 + a^2) / (2 a).
[[nodiscard]] double foci_linear_scale(double half_separation, double rayleigh_range);

} // namespace slp
