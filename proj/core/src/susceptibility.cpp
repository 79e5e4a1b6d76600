#include "slp/susceptibility.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include <Eigen/Dense>

#include "slp/errors.hpp"

namespace slp {

namespace {

const cplx I{0.0, 1.0};

cplx optical(double omega, const PhysicalParams& p) { return {p.gamma, -omega}; }
cplx spin(double omega, const PhysicalParams& p) { return {p.gamma0, -omega}; }

} // namespace

cplx eit_chi(double omega, double omega_sq, const PhysicalParams& params)
{
    const cplx g = optical(omega, params);
    const cplx g0 = spin(omega, params);
    const cplx denom = g * g0 + omega_sq;
    if (denom == cplx{}) {
        std::ostringstream os;
        os << "eit_chi: pole at omega=" << omega << " (|Omega|^2=" << omega_sq << ")";
        throw DomainError(os.str());
    }
    return I * params.gamma * g0 / denom;
}

std::vector<cplx> chi_fourier_components(double omega, const StandingWave& wave,
                                         const PhysicalParams& params,
                                         const std::vector<int>& harmonics, double tolerance)
{
    const cplx g = optical(omega, params);
    const cplx g0 = spin(omega, params);
    const double base = wave.total_intensity();
    const cplx cross = 2.0 * wave.plus * std::conj(wave.minus);

    // |Omega(u)|^2 = |O+|^2 + |O-|^2 + 2 Re(O+ O-* e^{2iu}). The sweep covers
    // the full 2 pi so that odd harmonics cancel node by node.
    auto sweep = [&](std::size_t m) {
        std::vector<cplx> acc(harmonics.size(), cplx{});
        const double du = 2.0 * std::numbers::pi / static_cast<double>(m);
        for (std::size_t j = 0; j < m; ++j) {
            const double u = (static_cast<double>(j) + 0.5) * du;
            const double o2 = base + (cross * std::polar(1.0, 2.0 * u)).real();
            const cplx chi = g0 == cplx{} ? cplx{} : I * params.gamma * g0 / (g * g0 + o2);
            for (std::size_t h = 0; h < harmonics.size(); ++h)
                acc[h] += chi * std::polar(1.0, -static_cast<double>(harmonics[h]) * u);
        }
        for (auto& a : acc) a /= static_cast<double>(m);
        return acc;
    };

    std::size_t m = 64;
    auto prev = sweep(m);
    while (m < (std::size_t{1} << 22)) {
        m *= 2;
        auto next = sweep(m);
        double diff = 0.0, scale = 0.0;
        for (std::size_t h = 0; h < next.size(); ++h) {
            diff = std::max(diff, std::abs(next[h] - prev[h]));
            scale = std::max(scale, std::abs(next[h]));
        }
        if (diff <= tolerance * std::max(scale, 1.0)) return next;
        prev = std::move(next);
    }
    std::ostringstream os;
    os << "chi_fourier_components: quadrature not converged at omega=" << omega << " with " << m
       << " nodes; the control has a node where |Omega|^2 ~ gamma |omega|, sample away from omega=0 "
          "or raise the tolerance";
    throw NumericalError(os.str());
}

cplx chi_fourier_component(double omega, const StandingWave& wave, const PhysicalParams& params,
                           int harmonic, double tolerance)
{
    return chi_fourier_components(omega, wave, params, {harmonic}, tolerance)[0];
}

ChiMatrix coupled_mode_chi(double omega, const StandingWave& wave, const PhysicalParams& params)
{
    const auto c = chi_fourier_components(omega, wave, params, {0, 2, -2});
    return {{{c[0], c[1]}, {c[2], c[0]}}};
}

ChiMatrix multi_component_chi(double omega, const StandingWave& wave,
                              const PhysicalParams& params, std::size_t n_max)
{
    const int nm = static_cast<int>(n_max);
    const int n_p = 2 * nm + 2; // P_{2n+1}, n = -(nm+1)..nm
    const int n_s = 2 * nm + 1; // S_{2n},   n = -nm..nm
    const int dim = n_p + n_s;
    auto p_index = [&](int n) { return n + nm + 1; };
    auto s_index = [&](int n) { return n_p + n + nm; };
    auto has_s = [&](int n) { return n >= -nm && n <= nm; };
    auto has_p = [&](int n) { return n >= -(nm + 1) && n <= nm; };

    const cplx g = optical(omega, params);
    const cplx g0 = spin(omega, params);
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
    for (int n = -(nm + 1); n <= nm; ++n) {
        a(p_index(n), p_index(n)) = g;
        if (has_s(n)) a(p_index(n), s_index(n)) -= I * wave.plus;
        if (has_s(n + 1)) a(p_index(n), s_index(n + 1)) -= I * wave.minus;
    }
    for (int n = -nm; n <= nm; ++n) {
        a(s_index(n), s_index(n)) = g0;
        if (has_p(n)) a(s_index(n), p_index(n)) -= I * std::conj(wave.plus);
        if (has_p(n - 1)) a(s_index(n), p_index(n - 1)) -= I * std::conj(wave.minus);
    }

    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
    const double scale = std::max({std::abs(g), std::abs(g0), wave.total_intensity(), 1e-300});
    if (!(std::abs(lu.determinant()) > std::pow(1e-14 * scale, dim)) ||
        lu.rcond() < 1e-14) {
        std::ostringstream os;
        os << "multi_component_chi: pole (singular grating system) at omega=" << omega;
        throw DomainError(os.str());
    }

    const double k = params.coupling;
    ChiMatrix chi{};
    for (int col = 0; col < 2; ++col) {
        Eigen::VectorXcd b = Eigen::VectorXcd::Zero(dim);
        b(p_index(col == 0 ? 0 : -1)) = I * k;
        const Eigen::VectorXcd x = lu.solve(b);
        chi[0][static_cast<std::size_t>(col)] = params.gamma * x(p_index(0)) / k;
        chi[1][static_cast<std::size_t>(col)] = params.gamma * x(p_index(-1)) / k;
    }
    return chi;
}

ChiMatrix secular_chi(double omega, const StandingWave& wave, const PhysicalParams& params)
{
    const cplx g = optical(omega, params);
    const cplx g0 = spin(omega, params);
    const cplx denom = g * g0 + wave.total_intensity();
    if (g == cplx{} || denom == cplx{}) throw DomainError("secular_chi: pole");
    const cplx pre = I * params.gamma / g;
    const std::array<cplx, 2> v{wave.plus, wave.minus};
    ChiMatrix chi{};
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c)
            chi[r][c] = pre * ((r == c ? 1.0 : 0.0) - v[r] * std::conj(v[c]) / denom);
    return chi;
}

const char* method_name(ChiMethod m)
{
    switch (m) {
    case ChiMethod::Truncated: return "truncated";
    case ChiMethod::CoupledMode: return "coupled-mode";
    case ChiMethod::SingleBeamEIT: return "single-beam-EIT";
    }
    return "unknown";
}

ChiMethod parse_method(const std::string& name)
{
    if (name == "truncated") return ChiMethod::Truncated;
    if (name == "coupled-mode") return ChiMethod::CoupledMode;
    if (name == "single-beam-EIT") return ChiMethod::SingleBeamEIT;
    throw ConfigError("unknown susceptibility method '" + name +
                      "' (expected truncated, coupled-mode or single-beam-EIT)");
}

SpectrumResult spectrum_scan(ChiMethod method, double omega_min, double omega_max,
                             std::size_t samples, const StandingWave& wave,
                             const PhysicalParams& params, std::size_t n_max)
{
    if (samples == 0) throw ConfigError("spectrum_scan: samples must be >= 1");
    if (omega_max < omega_min) throw ConfigError("spectrum_scan: omega_max < omega_min");
    SpectrumResult r;
    r.method = method;
    r.n_max = n_max;
    r.omega.resize(samples);
    r.chi.resize(samples);
    r.pole.assign(samples, false);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t k = 0; k < samples; ++k) {
        const double w = samples == 1 ? omega_min
                                      : omega_min + (omega_max - omega_min) *
                                                        static_cast<double>(k) /
                                                        static_cast<double>(samples - 1);
        r.omega[k] = w;
        try {
            switch (method) {
            case ChiMethod::Truncated:
                r.chi[k] = multi_component_chi(w, wave, params, n_max);
                break;
            case ChiMethod::CoupledMode:
                r.chi[k] = coupled_mode_chi(w, wave, params);
                break;
            case ChiMethod::SingleBeamEIT: {
                const cplx c = eit_chi(w, wave.total_intensity(), params);
                r.chi[k] = {{{c, cplx{}}, {cplx{}, c}}};
                break;
            }
            }
        } catch (const DomainError&) {
            r.pole[k] = true;
            r.chi[k] = {{{cplx{nan, nan}, cplx{nan, nan}}, {cplx{nan, nan}, cplx{nan, nan}}}};
        }
    }
    return r;
}

void write_spectrum_csv(std::ostream& os, const std::vector<SpectrumResult>& results)
{
    os << "omega,re_pp,im_pp,re_pm,im_pm,re_mp,im_mp,re_mm,im_mm,method,nmax\n";
    os << std::setprecision(17);
    for (const auto& r : results) {
        for (std::size_t k = 0; k < r.omega.size(); ++k) {
            const auto& c = r.chi[k];
            os << r.omega[k] << ',' << c[0][0].real() << ',' << c[0][0].imag() << ','
               << c[0][1].real() << ',' << c[0][1].imag() << ',' << c[1][0].real() << ','
               << c[1][0].imag() << ',' << c[1][1].real() << ',' << c[1][1].imag() << ','
               << method_name(r.method) << ',' << r.n_max << '\n';
        }
    }
}

double max_entry_difference(const SpectrumResult& a, const SpectrumResult& b)
{
    if (a.omega.size() != b.omega.size()) throw ConfigError("max_entry_difference: sample mismatch");
    double m = 0.0;
    for (std::size_t k = 0; k < a.omega.size(); ++k) {
        if (a.pole[k] || b.pole[k]) continue;
        for (std::size_t r = 0; r < 2; ++r)
            for (std::size_t c = 0; c < 2; ++c)
                m = std::max(m, std::abs(a.chi[k][r][c] - b.chi[k][r][c]));
    }
    return m;
}

} // namespace slp
