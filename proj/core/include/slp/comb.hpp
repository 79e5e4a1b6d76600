#pragma once

#include <vector>

#include "slp/core_model.hpp"

namespace slp {

/// One comb line with its probe envelopes and polarizations, all in the
/// line's own rotating frame exp(-i Delta_k (t -+ z/c)).
struct CombComponent {
    double detuning = 0.0;
    cplx omega_plus{};
    cplx omega_minus{};
    Field e_plus;
    Field e_minus;
    Field p_plus;
    Field p_minus;
};

struct CombState {
    Grid grid;
    double t = 0.0;
    std::vector<CombComponent> components;
    Field s;
};

/// Stored spin `spin`, every probe envelope and polarization zero.
[[nodiscard]] CombState comb_initial(const Grid& grid, const CombControl& control,
                                     const Field& spin, double t0 = 0.0);

/// One split step of
///   dP+-k/dt = -(i Delta_k + gamma) P+-k + i g_p E+-k + i Omega+-k S
///   dS/dt    = sum_k i (Omega+k* P+k + Omega-k* P-k) - gamma0 S
///   (d_t +- c d_z) E+-k = i g_p P+-k
/// with the same exact-shift transport as step_full (c dt == dz).
[[nodiscard]] CombState comb_evolve(const CombState& state, const PhysicalParams& params,
                                    double dt);

/// Lab-frame total envelope sum_k E+k e^{-i D_k (t - z/c)} + E-k e^{-i D_k (t + z/c)}.
[[nodiscard]] Field comb_total_field(const CombState& state, double light_speed);

/// sum_k int |E+k|^2 + |E-k|^2 dz
[[nodiscard]] double comb_photon_number(const CombState& state);

struct SlavedPair {
    Field plus;
    Field minus;
};

/// E+-k = -Omega+-k S / g_p for an off-resonant line.
[[nodiscard]] SlavedPair adiabatic_offresonant(const Field& spin, const CombLine& line,
                                               const PhysicalParams& params);

/// E(z, t) = -Omega(z, t) S(z) / g_p with Omega the full comb sum.
[[nodiscard]] Field matched_field(const Field& spin, const CombControl& control,
                                  const PhysicalParams& params, const Grid& grid, double t);

/// gamma * OD with OD = L / l_abs.
[[nodiscard]] double comb_bandwidth(const PhysicalParams& params, double length);

/// Explicit step of dS/dt = D d^2S/dz^2 with zero-flux ends. Requires
/// dt <= dz^2 / (2 D).
[[nodiscard]] Field spin_diffusion_step(const Field& spin, double dz, double diffusivity,
                                        double dt);

/// Equally spaced comb: lines k = -m..m at Delta_k = k * spacing, all with
/// amplitude `amplitude` in both directions.
[[nodiscard]] CombControl equally_spaced_comb(std::size_t half_lines, double spacing,
                                              double amplitude, double light_speed = 1.0);

/// Full width at half maximum of |f|^2, by linear interpolation between
/// cells around the global maximum.
[[nodiscard]] double intensity_fwhm(const Field& f, const Grid& grid);

} // namespace slp
