#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

namespace slp {

using cplx = std::complex<double>;
using Field = std::vector<cplx>;

// Simulation units: coupling g_p = g*sqrt(N) and light speed c are both 1 in
// every canned scenario, so times are in 1/g_p and the absorption length
// equals gamma. Nothing in the code assumes this; the values are parameters.

struct PhysicalParams {
    double coupling = 1.0;            ///< g_p = g sqrt(N), rate
    double gamma = 1.0;               ///< optical coherence decay rate
    double gamma0 = 0.0;              ///< ground-state (spin) decay rate
    double light_speed = 1.0;         ///< c
    double one_photon_detuning = 0.0; ///< Delta
    double two_photon_detuning = 0.0; ///< delta
    double carrier_offset = 0.0;      ///< Delta omega = omega - omega_c
    double wavevector_mismatch = 0.0; ///< Delta K = k_c - k

    /// Throws ConfigError unless gamma, c, g_p > 0 and gamma0 >= 0.
    void validate() const;

    /// l_abs = c gamma / g_p^2
    [[nodiscard]] double absorption_length() const;

    /// Gamma = gamma + i (Delta + delta)
    [[nodiscard]] cplx optical_decay() const;
};

/// Uniform spatial grid with a fixed time step.
struct Grid {
    double z_min = -1.0;
    double z_max = 1.0;
    std::size_t n_points = 3;
    double dt = 0.0;

    /// Grid with dt chosen so that one step advects exactly one cell.
    static Grid with_unit_cfl(double z_min, double z_max, std::size_t n_points,
                              double light_speed);

    [[nodiscard]] double dz() const { return (z_max - z_min) / static_cast<double>(n_points - 1); }
    [[nodiscard]] double z(std::size_t i) const { return z_min + static_cast<double>(i) * dz(); }
    [[nodiscard]] double cfl(double light_speed) const { return light_speed * dt / dz(); }
    [[nodiscard]] std::vector<double> coordinates() const;

    /// n_points >= 3, z_max > z_min, dt > 0 and c dt / dz <= 1.
    void validate(double light_speed) const;
};

struct MixingAngles {
    double theta = 0.0; ///< tan^2 theta = g_p^2 / Omega_0^2
    double phi = 0.0;   ///< tan^2 phi = |Omega_-|^2 / |Omega_+|^2
};

struct ControlAmplitudes {
    cplx plus;
    cplx minus;

    [[nodiscard]] double total_intensity() const { return std::norm(plus) + std::norm(minus); }
};

/// Smooth switch applied to the control intensity:
/// |Omega|^2 -> |Omega|^2 * 0.5 * (1 + tanh(rate * (t - time))).
struct SwitchOn {
    double time = 0.0;
    double rate = 0.1;

    [[nodiscard]] double intensity_factor(double t) const;
};

/// Two constant plane-wave controls.
struct HomogeneousControl {
    cplx omega_plus{1.0, 0.0};
    cplx omega_minus{1.0, 0.0};
    std::optional<SwitchOn> switch_on;
};

/// Storage / retrieval schedule written in terms of cos^2 theta_{+-}(t):
///
///   cos^2 theta_+ = 0.5 [1 - tanh(rate (t - store_time))]
///                 + 0.5 retrieve_level [1 + tanh(rate (t - retrieve_time))]
///   cos^2 theta_- = 0.5 retrieve_level [1 + tanh(rate (t - retrieve_time))]
///
/// with tan^2 theta_{+-} = g_p^2 / Omega_{+-}^2. The amplitude diverges as
/// cos^2 -> 1 and is capped at omega_max.
struct TanhSchedule {
    double store_time = 65.0;
    double retrieve_time = 300.0;
    double rate = 0.1;
    double retrieve_level = 1.0 / 3.0;
    double coupling = 1.0;
    double omega_max = 1.0e3;

    [[nodiscard]] double cos2_theta_plus(double t) const;
    [[nodiscard]] double cos2_theta_minus(double t) const;
    [[nodiscard]] double amplitude_from_cos2(double cos2) const;
};

/// Focal position z_f(t) = start + (end - start) * 0.5 [1 + tanh(rate (t - time))].
/// rate == 0 keeps the focus at `start`.
struct FocusTrack {
    double start = 0.0;
    double end = 0.0;
    double move_time = 0.0;
    double move_rate = 0.0;

    [[nodiscard]] double at(double t) const;
};

enum class BeamLaw {
    Paraxial, ///< w(z) = sqrt(1 + ((z - z_f) / z_R)^2)
    Literal,  ///< w(z) = sqrt(1 - 2 (z - z_f) / pi), only inside a declared window
};

/// Two focused counter-propagating beams, Omega_{+-}(z) = A / w_{+-}(z).
struct GaussianFoci {
    FocusTrack plus_focus;
    FocusTrack minus_focus;
    double focus_amplitude = 1.0;
    double rayleigh_range = 1.0;
    BeamLaw law = BeamLaw::Paraxial;
    std::optional<std::pair<double, double>> validity_window;
    std::optional<SwitchOn> switch_on;
};

/// Constant total intensity Omega_total^2 with
/// cos 2phi = clamp(-(z - center) / length_scale, -1, 1).
struct LinearRatioControl {
    double omega_total = 1.0;
    double length_scale = 100.0;
    double center = 0.0;
    std::optional<SwitchOn> switch_on;
};

struct CombLine {
    double detuning = 0.0; ///< Delta_k
    cplx omega_plus{1.0, 0.0};
    cplx omega_minus{1.0, 0.0};
};

/// Frequency comb. Evaluation returns the full space-time sums
///   Omega_+(z,t) = sum_k Omega_{+k} exp(-i Delta_k (t - z/c))
///   Omega_-(z,t) = sum_k Omega_{-k} exp(-i Delta_k (t + z/c)).
struct CombControl {
    std::vector<CombLine> lines;
    double light_speed = 1.0;

    /// |Omega_{+k}| == |Omega_{-k}| for every line and exactly one line at
    /// Delta = 0.
    void validate() const;
    [[nodiscard]] const CombLine& resonant_line() const;
};

class ControlProfile {
public:
    using Variant = std::variant<HomogeneousControl, TanhSchedule, GaussianFoci,
                                 LinearRatioControl, CombControl>;

    ControlProfile() = default;
    template <class T>
    ControlProfile(T spec) : spec_(std::move(spec)) {}

    [[nodiscard]] ControlAmplitudes at(double z, double t) const;

    /// at(z_i, t) for every grid point; a single entry when homogeneous().
    void sample(const Grid& grid, double t, std::vector<cplx>& plus,
                std::vector<cplx>& minus) const;

    /// True when the amplitudes do not depend on z.
    [[nodiscard]] bool homogeneous() const;

    [[nodiscard]] const Variant& spec() const { return spec_; }
    [[nodiscard]] const char* kind_name() const;

private:
    Variant spec_{HomogeneousControl{}};
};

[[nodiscard]] MixingAngles mixing_angles(const PhysicalParams& params, cplx omega_plus,
                                         cplx omega_minus);
[[nodiscard]] double group_velocity(const PhysicalParams& params, double theta);
[[nodiscard]] double phase_matched_detuning(const PhysicalParams& params, double theta);
[[nodiscard]] ControlAmplitudes control_field_at(const ControlProfile& profile, double z,
                                                 double t);

/// phi(z) on the grid at time t; cells with no control get phi = 0.
[[nodiscard]] std::vector<double> phi_field(const ControlProfile& profile, const Grid& grid,
                                            double t);
/// v_gr(z) = c cos^2 theta(z) on the grid at time t.
[[nodiscard]] std::vector<double> group_velocity_field(const PhysicalParams& params,
                                                       const ControlProfile& profile,
                                                       const Grid& grid, double t);

} // namespace slp
