#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "slp/core_model.hpp"

namespace slp {

// Susceptibilities are reported in units where 2 g^2 N / (gamma omega_0) = 1,
// with Gamma = gamma - i omega and Gamma0 = gamma0 - i omega.

/// Standing-wave control Omega(z) = Omega_+ e^{i k_c z} + Omega_- e^{-i k_c z}.
struct StandingWave {
    cplx plus{1.0, 0.0};
    cplx minus{1.0, 0.0};

    [[nodiscard]] double total_intensity() const { return std::norm(plus) + std::norm(minus); }
};

/// Row-major [[chi_++, chi_+-], [chi_-+, chi_--]].
using ChiMatrix = std::array<std::array<cplx, 2>, 2>;

/// i gamma Gamma0 / (Gamma Gamma0 + |Omega|^2). Throws DomainError at a pole.
[[nodiscard]] cplx eit_chi(double omega, double omega_sq, const PhysicalParams& params);

/// chi_n = (1/2pi) int_0^2pi chi(z, omega) e^{-i n u} du, u = k_c z, by the
/// periodic midpoint rule with doubling until successive values agree to
/// `tolerance`. Throws NumericalError if 2^22 nodes do not suffice.
[[nodiscard]] std::vector<cplx> chi_fourier_components(double omega, const StandingWave& wave,
                                                       const PhysicalParams& params,
                                                       const std::vector<int>& harmonics,
                                                       double tolerance = 1e-12);
[[nodiscard]] cplx chi_fourier_component(double omega, const StandingWave& wave,
                                         const PhysicalParams& params, int harmonic,
                                         double tolerance = 1e-12);

/// chi_++ = chi_-- = chi_0, chi_+- = chi_2, chi_-+ = chi_-2.
[[nodiscard]] ChiMatrix coupled_mode_chi(double omega, const StandingWave& wave,
                                         const PhysicalParams& params);

/// Response of the grating ladder P_{2n+1} (n = -(n_max+1)..n_max),
/// S_{2n} (n = -n_max..n_max) to unit drive in E_+ and then E_-:
///   (Gamma)  P_{2n+1} = i Omega_+ S_{2n} + i Omega_- S_{2n+2} + i g_p E drive
///   (Gamma0) S_{2n}   = i (Omega_+* P_{2n+1} + Omega_-* P_{2n-1})
/// chi_{s s'} = gamma P_s / (g_p E_s'). Throws DomainError at a pole.
[[nodiscard]] ChiMatrix multi_component_chi(double omega, const StandingWave& wave,
                                            const PhysicalParams& params, std::size_t n_max);

/// n_max = 0 closed form (i gamma / Gamma) [I - v v^dagger / (Gamma Gamma0 + Omega_0^2)].
[[nodiscard]] ChiMatrix secular_chi(double omega, const StandingWave& wave,
                                    const PhysicalParams& params);

enum class ChiMethod { Truncated, CoupledMode, SingleBeamEIT };

[[nodiscard]] const char* method_name(ChiMethod m);
[[nodiscard]] ChiMethod parse_method(const std::string& name);

struct SpectrumResult {
    ChiMethod method = ChiMethod::Truncated;
    std::size_t n_max = 0;
    std::vector<double> omega;
    std::vector<ChiMatrix> chi;
    std::vector<bool> pole;
};

/// Uniform samples omega_min + k (omega_max - omega_min) / (samples - 1);
/// a single sample sits at omega_min. Poles are flagged, entries set to NaN.
[[nodiscard]] SpectrumResult spectrum_scan(ChiMethod method, double omega_min, double omega_max,
                                           std::size_t samples, const StandingWave& wave,
                                           const PhysicalParams& params, std::size_t n_max = 0);

/// Header `omega,re_pp,im_pp,re_pm,im_pm,re_mp,im_mp,re_mm,im_mm,method,nmax`.
void write_spectrum_csv(std::ostream& os, const std::vector<SpectrumResult>& results);

/// max_k max_entries |a_k - b_k| over samples where neither is a pole.
[[nodiscard]] double max_entry_difference(const SpectrumResult& a, const SpectrumResult& b);

} // namespace slp
