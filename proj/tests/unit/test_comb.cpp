#include <doctest.h>

#include <cmath>
#include <numbers>

#include "slp/comb.hpp"
#include "slp/errors.hpp"
#include "slp/mbe_solver.hpp"
#include "slp/normal_modes.hpp"

using namespace slp;

namespace {

double max_abs(const Field& a)
{
    double m = 0.0;
    for (const auto& v : a) m = std::max(m, std::abs(v));
    return m;
}

double spin_width_sq(const Field& f, const Grid& g)
{
    cplx m0{}, m2{};
    for (std::size_t i = 0; i < g.n_points; ++i) {
        m0 += f[i];
        m2 += g.z(i) * g.z(i) * f[i];
    }
    return (m2 / m0).real();
}

} // namespace

TEST_SUITE("comb") {

TEST_CASE("a single resonant line is the resonant Maxwell-Bloch system")
{
    const PhysicalParams p;
    const Grid g = Grid::with_unit_cfl(-40.0, 40.0, 801, 1.0);
    CombControl c;
    c.lines = {{0.0, cplx{0.8, 0.0}, cplx{0.8, 0.0}}};
    HomogeneousControl h;
    h.omega_plus = 0.8;
    h.omega_minus = 0.8;

    const auto spin = gaussian_envelope(g, 6.0);
    CombState cs = comb_initial(g, c, spin);
    SystemState ms = stored_gaussian(g, 6.0);
    for (int k = 0; k < 200; ++k) {
        cs = comb_evolve(cs, p, g.dt);
        ms = step_full(ms, h, p, g.dt);
    }
    const auto& comp = cs.components[0];
    for (std::size_t i = 0; i < g.n_points; ++i) {
        CHECK(std::abs(comp.e_plus[i] - ms.e_plus[i]) < 1e-12);
        CHECK(std::abs(comp.e_minus[i] - ms.e_minus[i]) < 1e-12);
        CHECK(std::abs(cs.s[i] - ms.s[i]) < 1e-12);
    }
}

TEST_CASE("dark comb leaves the spin frozen")
{
    const PhysicalParams p;
    const Grid g = Grid::with_unit_cfl(-40.0, 40.0, 801, 1.0);
    const auto c = equally_spaced_comb(2, 5.0, 0.0);
    const auto spin = gaussian_envelope(g, 6.0);
    CombState cs = comb_initial(g, c, spin);
    for (int k = 0; k < 100; ++k) cs = comb_evolve(cs, p, g.dt);
    CHECK(cs.s == spin);
    CHECK(comb_photon_number(cs) == 0.0);
}

TEST_CASE("slaved off-resonant envelopes")
{
    const PhysicalParams p;
    const CombLine line{3.0, cplx{0.5, 0.0}, cplx{0.5, 0.0}};
    const Field zero(10, cplx{});
    const auto z = adiabatic_offresonant(zero, line, p);
    CHECK(max_abs(z.plus) == 0.0);

    const Grid g = Grid::with_unit_cfl(-10.0, 10.0, 201, 1.0);
    const auto spin = gaussian_envelope(g, 2.0);
    const auto e = adiabatic_offresonant(spin, line, p);
    for (std::size_t i = 0; i < g.n_points; ++i) {
        CHECK(e.plus[i].real() <= 0.0);
        CHECK(std::abs(e.plus[i] + 0.5 * spin[i]) < 1e-15);
    }
}

TEST_CASE("off-resonant line relaxes to the slaved envelope")
{
    // Delta = 20 gamma with a medium that is thick for the detuned line:
    // the slaving length c (gamma^2 + Delta^2) / (g_p^2 gamma) is 8 here.
    PhysicalParams p;
    p.gamma = 0.02;
    const Grid g = Grid::with_unit_cfl(-150.0, 150.0, 3001, 1.0);
    CombControl c;
    c.lines = {{0.0, cplx{0.05, 0.0}, cplx{0.05, 0.0}}, {20.0 * p.gamma, cplx{0.3, 0.0}, cplx{0.3, 0.0}}};
    CombState cs = comb_initial(g, c, gaussian_envelope(g, 35.0));
    for (int k = 0; k < 7500; ++k) cs = comb_evolve(cs, p, g.dt);
    const auto slaved = adiabatic_offresonant(cs.s, c.lines[1], p);
    const auto& comp = cs.components[1];
    const double peak = max_abs(slaved.plus);
    double worst = 0.0;
    for (std::size_t i = 0; i < g.n_points; ++i) {
        if (std::abs(slaved.plus[i]) < 0.2 * peak) continue;
        worst = std::max(worst, std::abs(comp.e_plus[i] - slaved.plus[i]) / std::abs(slaved.plus[i]));
        worst = std::max(worst, std::abs(comp.e_minus[i] - slaved.minus[i]) / std::abs(slaved.minus[i]));
    }
    CHECK(worst < 0.03);
}

TEST_CASE("matched field")
{
    const PhysicalParams p;
    const Grid g = Grid::with_unit_cfl(-40.0, 40.0, 801, 1.0);
    const auto spin = gaussian_envelope(g, 10.0);

    CombControl pair;
    pair.lines = {{0.0, cplx{0.6, 0.0}, cplx{0.6, 0.0}}};
    auto e = matched_field(spin, pair, p, g, 3.0);
    for (std::size_t i = 0; i < g.n_points; ++i) CHECK(std::abs(e[i] + 1.2 * spin[i]) < 1e-15);

    e = matched_field(Field(g.n_points), equally_spaced_comb(3, 0.2, 0.1), p, g, 0.0);
    CHECK(max_abs(e) == 0.0);
}

TEST_CASE("comb localization grows with the number of lines")
{
    const PhysicalParams p;
    const Grid g = Grid::with_unit_cfl(-15.0, 15.0, 3001, 1.0);
    const Field flat(g.n_points, cplx{1.0, 0.0});
    const double spacing = 0.2;
    for (std::size_t m : {1, 2, 3, 5}) {
        const auto c = equally_spaced_comb(m, spacing, 0.1);
        const auto e = matched_field(flat, c, p, g, 0.0);
        const double nc = 2.0 * static_cast<double>(m) + 1.0;
        // direct summation of the series at t = 0: sum_k 2 A cos(k Delta z)
        for (std::size_t i = 0; i < g.n_points; ++i) {
            double direct = 0.0;
            for (long k = -static_cast<long>(m); k <= static_cast<long>(m); ++k)
                direct += 2 * 0.1 * std::cos(k * spacing * g.z(i));
            CHECK(std::abs(e[i] + direct) < 1e-12);
        }
        // peak intensity over the period-averaged intensity is N_c
        const Grid period = Grid::with_unit_cfl(-std::numbers::pi / spacing, std::numbers::pi / spacing,
                                                4001, 1.0);
        const auto ep = matched_field(Field(period.n_points, cplx{1.0, 0.0}), c, p, period, 0.0);
        double ms = 0.0;
        for (std::size_t i = 0; i + 1 < period.n_points; ++i) ms += std::norm(ep[i]);
        ms /= static_cast<double>(period.n_points - 1);
        const double peak = std::abs(ep[period.n_points / 2]);
        CHECK(peak * peak / ms == doctest::Approx(nc).epsilon(1e-9));
    }
}

TEST_CASE("bandwidth")
{
    PhysicalParams p;
    CHECK(comb_bandwidth(p, p.absorption_length()) == doctest::Approx(p.gamma));
    CHECK(comb_bandwidth(p, 100.0 * p.absorption_length()) == doctest::Approx(100.0));
    CHECK_THROWS_AS((void)comb_bandwidth(p, 0.0), DomainError);
}

TEST_CASE("explicit spin diffusion")
{
    const Grid g = Grid::with_unit_cfl(-100.0, 100.0, 801, 1.0);
    const double dz = g.dz(), D = 0.5;
    const Field flat(g.n_points, cplx{0.3, 0.1});
    CHECK(spin_diffusion_step(flat, dz, D, 0.04) == flat);
    CHECK_NOTHROW((void)spin_diffusion_step(flat, dz, D, dz * dz / (2 * D)));
    CHECK_THROWS_AS((void)spin_diffusion_step(flat, dz, D, 1.01 * dz * dz / (2 * D)), ConfigError);

    const auto s0 = gaussian_envelope(g, 10.0);
    const double t_end = 50.0;
    auto integrate = [&](int steps) {
        Field s = s0;
        for (int k = 0; k < steps; ++k) s = spin_diffusion_step(s, dz, D, t_end / steps);
        return s;
    };
    // time error against a fine-step reference is first order in dt;
    // the heat kernel bounds the total error including the spatial part
    const auto exact = diffusion_evolve(s0, dz, D, t_end);
    const auto reference = integrate(32000);
    double prev_err = 1e300;
    for (int steps : {1000, 2000, 4000}) {
        const auto s = integrate(steps);
        CHECK(spin_width_sq(s, g) == doctest::Approx(width_law(100.0, D, t_end)).epsilon(1e-3));
        double err = 0.0, total = 0.0;
        for (std::size_t i = 0; i < g.n_points; ++i) {
            err = std::max(err, std::abs(s[i] - reference[i]));
            total = std::max(total, std::abs(s[i] - exact[i]));
        }
        CHECK(err < 0.6 * prev_err);
        CHECK(total < 1e-3);
        prev_err = err;
    }
}

TEST_CASE("intensity full width")
{
    const Grid g = Grid::with_unit_cfl(-40.0, 40.0, 8001, 1.0);
    const auto f = gaussian_envelope(g, 5.0);
    CHECK(intensity_fwhm(f, g) == doctest::Approx(2 * 5.0 * std::sqrt(std::log(2.0))).epsilon(1e-5));
    CHECK_THROWS_AS((void)intensity_fwhm(Field(g.n_points), g), DomainError);
}

}
