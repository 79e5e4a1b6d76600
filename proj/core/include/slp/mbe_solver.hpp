#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "slp/core_model.hpp"

namespace slp {

// Field normalization: P = sqrt(N) sigma_ba and S = sqrt(N) sigma_bc, so that
//
//   dP+-/dt = -(i(delta + Delta) + gamma) P+- + i g_p E+- + i Omega+- S
//   dS/dt   = -i delta S + i Omega+*  P+ + i Omega-* P- - gamma0 S
//   (d_t +- c d_z) E+- = -i Delta_omega E+- + i g_p P+-
//
// and sum |E|^2 + |P|^2 + |S|^2 counts excitations without further factors.

struct SystemState {
    Grid grid;
    double t = 0.0;
    Field e_plus;
    Field e_minus;
    Field p_plus;
    Field p_minus;
    Field s;

    static SystemState zeros(const Grid& grid, double t = 0.0);

    /// Throws NumericalError naming the first non-finite entry.
    void check_finite() const;
};

enum class Scheme { Full, Adiabatic };

/// Advance by one time step `dt`. The transport is an exact one-cell shift,
/// so c * dt must equal the grid spacing (ConfigError otherwise).
[[nodiscard]] SystemState step_full(const SystemState& state, const ControlProfile& profile,
                                    const PhysicalParams& params, double dt);
[[nodiscard]] SystemState step_adiabatic(const SystemState& state, const ControlProfile& profile,
                                         const PhysicalParams& params, double dt);
[[nodiscard]] SystemState step(Scheme scheme, const SystemState& state,
                               const ControlProfile& profile, const PhysicalParams& params,
                               double dt);

/// P+- = i (g_p E+- + Omega+- S) / Gamma at every cell.
void reconstruct_polarization(SystemState& state, const ControlProfile& profile,
                              const PhysicalParams& params);

struct Observables {
    double t = 0.0;
    bool moments_defined = false;
    double width_sq = 0.0;     ///< Re int (z - center)^2 E_S / int E_S
    double first_moment = 0.0; ///< Re int z E_S / int E_S
    double n_tot = 0.0;        ///< int |E+|^2 + |E-|^2 + |S|^2
    double peak = 0.0;         ///< max_z |E+|^2 + |E-|^2 + |S|^2
    cplx ratio{};              ///< E+/E- at argmax |E_S|
    double peak_z = 0.0;
    cplx sum_integral{};       ///< int E_S
    double sum_norm = 0.0;     ///< L2 norm of E_S
    double diff_norm = 0.0;    ///< L2 norm of E_D
    double spin_width_sq = 0.0;
    double edge_ratio = 0.0;   ///< max |E| in boundary buffers / max |E|
};

inline constexpr std::size_t kBoundaryBuffer = 4;

[[nodiscard]] Observables observables(const SystemState& state, const std::vector<double>& phi,
                                      double center = 0.0);

struct RunOptions {
    Scheme scheme = Scheme::Full;
    double t_end = 0.0;
    std::size_t n_snapshots = 2;   ///< including the initial and final states
    std::size_t observe_every = 1; ///< steps between observable samples
    double center = 0.0;
};

struct RunResult {
    std::vector<SystemState> snapshots;
    std::vector<Observables> series;
    std::vector<std::string> warnings;
    std::optional<std::string> failure; ///< set when a step threw NumericalError
};

/// Integrates from `initial` to options.t_end with the grid's dt. Partial
/// results are kept when a step fails; `failure` carries the message.
[[nodiscard]] RunResult run(const SystemState& initial, const ControlProfile& profile,
                            const PhysicalParams& params, const RunOptions& options);

// Initial conditions.

/// Stored spin S(z) = amplitude * exp(-(z - center)^2 / (2 width^2)), fields zero.
[[nodiscard]] SystemState stored_gaussian(const Grid& grid, double width, double center = 0.0,
                                          double amplitude = 1.0, double t0 = 0.0);

/// Dark-state polariton with envelope psi: S = -sin(theta) psi and
/// E+- = -Omega+- S / g_p, P = 0, evaluated with the controls at t0.
[[nodiscard]] SystemState polariton(const Grid& grid, const PhysicalParams& params,
                                    const ControlProfile& profile, const Field& psi,
                                    double t0 = 0.0);

[[nodiscard]] Field gaussian_envelope(const Grid& grid, double width, double center = 0.0,
                                      double amplitude = 1.0);

} // namespace slp
