#pragma once

#include <functional>
#include <vector>

#include "slp/core_model.hpp"

namespace slp {

struct NormalModes {
    Field sum;  ///< E_S = cos(phi) E+ + sin(phi) E-
    Field diff; ///< E_D = sin(phi) E+ - cos(phi) E-
};

struct TravellingFields {
    Field plus;
    Field minus;
};

[[nodiscard]] NormalModes to_normal_modes(const Field& e_plus, const Field& e_minus,
                                          const std::vector<double>& phi);
[[nodiscard]] TravellingFields from_normal_modes(const Field& sum, const Field& diff,
                                                 const std::vector<double>& phi);

/// E_S and E_D with static mixing angles phi(z) and theta(z), assumed
/// phase matched.
struct NormalModeState {
    Grid grid;
    double t = 0.0;
    Field sum;
    Field diff;
    std::vector<double> phi;
    std::vector<double> theta;
};

/// Integrates the coupled sum/difference mode equations over `duration` by
/// the method of lines (4th-order central differences, RK4, c dt = dz / 2).
[[nodiscard]] NormalModeState evolve_normal_modes(const NormalModeState& state,
                                                  const PhysicalParams& params, double duration);

struct AdiabaticDiff {
    Field diff;
    bool valid = true;        ///< false when the thick-medium assumptions fail
    double envelope_ratio = 0.0; ///< max |l_abs dE_S/dz| / max |E_S|
    double gradient_ratio = 0.0; ///< max |l_abs phi' sin 2phi|
};

/// E_D = -sin(2phi) L dE_S/dz - cos(2phi) L phi' E_S with L = c Gamma / g_p^2.
[[nodiscard]] AdiabaticDiff adiabatic_E_D(const Field& sum, const std::vector<double>& phi,
                                          const PhysicalParams& params, double dz,
                                          double tolerance = 0.1);

/// Heat-kernel convolution of E_S0 with variance 2 D t.
[[nodiscard]] Field diffusion_evolve(const Field& sum0, double dz, double diffusivity, double t);

/// d0 + 2 D (t - t0)
[[nodiscard]] double width_law(double d0, double diffusivity, double t, double t0 = 0.0);

/// n0 dz0 / sqrt(dz0^2 + 2 D t), with dz0 the initial width (not squared).
[[nodiscard]] double diffusive_decay(double n0, double width0, double diffusivity, double t);

/// d(t) = d0 + 2Dt + 2D (l/c)(1 - g0/l)(exp(-c t / l) - 1) with D = v_gr l_abs.
[[nodiscard]] double exact_width(double d0, double g0, double diffusivity, double l_abs,
                                 double light_speed, double t);

/// Moment equations d' = 2 v(t) g, g' = -(c/l_abs) g + c integrated from t0
/// and sampled at `times` (ascending, all >= t0).
[[nodiscard]] std::vector<double> exact_width_series(double d0, double g0,
                                                     const std::function<double(double)>& v_gr,
                                                     double l_abs, double light_speed, double t0,
                                                     const std::vector<double>& times);

struct DriftParameters {
    double speed = 0.0;       ///< v_gr cos(2 phi)
    double diffusivity = 0.0; ///< v_gr l_abs sin^2(2 phi)
};

[[nodiscard]] DriftParameters drift_parameters(double phi, double theta,
                                               const PhysicalParams& params);

} // namespace slp
