#include <doctest.h>

#include <cmath>
#include <numbers>

#include "slp/errors.hpp"
#include "slp/mbe_solver.hpp"
#include "slp/normal_modes.hpp"

using namespace slp;

namespace {

double max_abs_diff(const Field& a, const Field& b)
{
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

double max_abs(const Field& a)
{
    double m = 0.0;
    for (const auto& v : a) m = std::max(m, std::abs(v));
    return m;
}

ControlProfile equal_beams(double amplitude, double switch_time)
{
    HomogeneousControl h;
    h.omega_plus = amplitude;
    h.omega_minus = amplitude;
    h.switch_on = SwitchOn{switch_time, 0.5};
    return h;
}

std::vector<double> width_series(const RunResult& r)
{
    std::vector<double> w;
    for (const auto& o : r.series) w.push_back(o.width_sq);
    return w;
}

} // namespace

TEST_SUITE("mbe_solver") {

TEST_CASE("zero is a fixed point")
{
    const PhysicalParams p;
    const Grid g = Grid::with_unit_cfl(-20.0, 20.0, 401, 1.0);
    SystemState st = SystemState::zeros(g);
    for (int k = 0; k < 50; ++k) st = step_full(st, equal_beams(1.0, 0.0), p, g.dt);
    CHECK(max_abs(st.e_plus) == 0.0);
    CHECK(max_abs(st.s) == 0.0);
}

TEST_CASE("stored excitation is stationary with controls off")
{
    const PhysicalParams p;
    const Grid g = Grid::with_unit_cfl(-50.0, 50.0, 1001, 1.0);
    HomogeneousControl off;
    off.omega_plus = 0.0;
    off.omega_minus = 0.0;
    const SystemState init = stored_gaussian(g, 10.0);
    SystemState st = init;
    for (int k = 0; k < 200; ++k) st = step_full(st, off, p, g.dt);
    CHECK(max_abs_diff(st.s, init.s) == 0.0);
    CHECK(max_abs(st.e_plus) == 0.0);

    st = init;
    for (int k = 0; k < 200; ++k) st = step_adiabatic(st, off, p, g.dt);
    CHECK(max_abs_diff(st.s, init.s) < 1e-14);
}

TEST_CASE("adiabatic step with zero drive only rotates by the two-photon detuning")
{
    PhysicalParams p;
    p.two_photon_detuning = 0.03;
    const Grid g = Grid::with_unit_cfl(-50.0, 50.0, 1001, 1.0);
    HomogeneousControl off;
    off.omega_plus = 0.0;
    off.omega_minus = 0.0;
    SystemState st = stored_gaussian(g, 10.0);
    for (int k = 0; k < 100; ++k) st = step_adiabatic(st, off, p, g.dt);
    const cplx phase = std::exp(cplx{0.0, -0.03 * st.t});
    const auto ref = gaussian_envelope(g, 10.0);
    double worst = 0.0;
    for (std::size_t i = 0; i < g.n_points; ++i)
        worst = std::max(worst, std::abs(st.s[i] - phase * ref[i]));
    CHECK(worst < 1e-10);
}

TEST_CASE("reconstructed polarization at resonance")
{
    PhysicalParams p;
    p.gamma = 2.0;
    const Grid g = Grid::with_unit_cfl(-5.0, 5.0, 11, 1.0);
    HomogeneousControl h;
    h.omega_plus = 0.7;
    h.omega_minus = 0.4;
    SystemState st = SystemState::zeros(g);
    for (std::size_t i = 0; i < g.n_points; ++i) {
        st.e_plus[i] = cplx(0.1 * i, 0.2);
        st.e_minus[i] = cplx(-0.3, 0.05 * i);
        st.s[i] = cplx(1.0, -0.5 * i);
    }
    reconstruct_polarization(st, h, p);
    const cplx I{0.0, 1.0};
    for (std::size_t i = 0; i < g.n_points; ++i) {
        CHECK(std::abs(st.p_plus[i] - I * (st.e_plus[i] + 0.7 * st.s[i]) / 2.0) < 1e-15);
        CHECK(std::abs(st.p_minus[i] - I * (st.e_minus[i] + 0.4 * st.s[i]) / 2.0) < 1e-15);
    }
}

TEST_CASE("CFL and length mismatch are rejected")
{
    const PhysicalParams p;
    Grid g = Grid::with_unit_cfl(-5.0, 5.0, 11, 1.0);
    const SystemState st = SystemState::zeros(g);
    CHECK_THROWS_AS((void)step_full(st, HomogeneousControl{}, p, 0.5 * g.dt), ConfigError);
    SystemState bad = st;
    bad.s.pop_back();
    CHECK_THROWS_AS((void)step_full(bad, HomogeneousControl{}, p, g.dt), ConfigError);
}

TEST_CASE("non-finite values are reported by field and position")
{
    const Grid g = Grid::with_unit_cfl(-5.0, 5.0, 11, 1.0);
    SystemState st = SystemState::zeros(g);
    st.e_minus[3] = cplx(std::nan(""), 0.0);
    try {
        st.check_finite();
        FAIL("expected NumericalError");
    } catch (const NumericalError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("E-") != std::string::npos);
        CHECK(msg.find("z=") != std::string::npos);
    }
}

TEST_CASE("linearity in the initial spin")
{
    const PhysicalParams p;
    const Grid g = Grid::with_unit_cfl(-60.0, 60.0, 1201, 1.0);
    const auto prof = equal_beams(1.0, 5.0);
    const cplx alpha{0.3, -1.7};
    SystemState a = stored_gaussian(g, 8.0);
    SystemState b = stored_gaussian(g, 8.0);
    for (auto& v : b.s) v *= alpha;
    for (int k = 0; k < 300; ++k) {
        a = step_full(a, prof, p, g.dt);
        b = step_full(b, prof, p, g.dt);
    }
    const double scale = max_abs(a.e_plus) * std::abs(alpha);
    for (std::size_t i = 0; i < g.n_points; ++i) {
        CHECK(std::abs(b.e_plus[i] - alpha * a.e_plus[i]) <= 1e-10 * scale);
        CHECK(std::abs(b.s[i] - alpha * a.s[i]) <= 1e-10 * std::abs(alpha));
    }
}

TEST_CASE("observables on symmetric and matched fields")
{
    const Grid g = Grid::with_unit_cfl(-50.0, 50.0, 1001, 1.0);
    SystemState st = SystemState::zeros(g);
    st.e_plus = gaussian_envelope(g, 5.0);
    st.e_minus = st.e_plus;
    const std::vector<double> phi(g.n_points, std::numbers::pi / 4);
    const auto o = observables(st, phi);
    REQUIRE(o.moments_defined);
    CHECK(std::abs(o.first_moment) < 1e-12);
    CHECK(o.width_sq == doctest::Approx(25.0).epsilon(1e-6));
    CHECK(std::abs(o.ratio - 1.0) < 1e-15);
    CHECK(o.diff_norm < 1e-15);
    CHECK(o.n_tot == doctest::Approx(2 * 5.0 * std::sqrt(std::numbers::pi)).epsilon(1e-6));

    const auto zero = observables(SystemState::zeros(g), phi);
    CHECK_FALSE(zero.moments_defined);
    CHECK(zero.n_tot == 0.0);
}

TEST_CASE("zero-duration run returns the initial state")
{
    const PhysicalParams p;
    const Grid g = Grid::with_unit_cfl(-50.0, 50.0, 1001, 1.0);
    const auto init = stored_gaussian(g, 10.0);
    RunOptions opt;
    opt.t_end = 0.0;
    const auto r = run(init, equal_beams(1.0, 0.0), p, opt);
    REQUIRE(r.snapshots.size() == 1);
    CHECK(r.snapshots[0].s == init.s);
    CHECK(r.series.size() == 1);
    CHECK_FALSE(r.failure);
}

TEST_CASE("adiabatic and full schemes agree on the width after the transient")
{
    PhysicalParams p;
    p.gamma = 2.0;
    const Grid g = Grid::with_unit_cfl(-100.0, 100.0, 2001, 1.0);
    const auto prof = equal_beams(1.0, 10.0);
    RunOptions opt;
    opt.t_end = 150.0;
    opt.observe_every = 50;
    const auto full = run(stored_gaussian(g, 10.0), prof, p, opt);
    opt.scheme = Scheme::Adiabatic;
    const auto adia = run(stored_gaussian(g, 10.0), prof, p, opt);
    const auto wf = width_series(full);
    const auto wa = width_series(adia);
    REQUIRE(wf.size() == wa.size());
    for (std::size_t k = 0; k < wf.size(); ++k) {
        if (full.series[k].t < 40.0) continue;
        CHECK(std::abs(wa[k] - wf[k]) / wf[k] < 0.02);
    }
}

TEST_CASE("halving the grid spacing changes the width by less than 1%")
{
    const PhysicalParams p;
    const auto prof = equal_beams(1.0, 10.0);
    RunOptions opt;
    opt.t_end = 120.0;
    const Grid coarse = Grid::with_unit_cfl(-100.0, 100.0, 1001, 1.0);
    const Grid fine = Grid::with_unit_cfl(-100.0, 100.0, 2001, 1.0);
    opt.observe_every = 50;
    const auto a = run(stored_gaussian(coarse, 10.0), prof, p, opt);
    opt.observe_every = 100;
    const auto b = run(stored_gaussian(fine, 10.0), prof, p, opt);
    REQUIRE(a.series.size() == b.series.size());
    for (std::size_t k = 0; k < a.series.size(); ++k) {
        CHECK(a.series[k].t == doctest::Approx(b.series[k].t));
        CHECK(a.series[k].moments_defined == b.series[k].moments_defined);
        if (!b.series[k].moments_defined) continue;
        CHECK(std::abs(a.series[k].width_sq - b.series[k].width_sq) / b.series[k].width_sq < 0.01);
    }
}

TEST_CASE("polariton launch puts the excitation in the dark state")
{
    const PhysicalParams p;
    const Grid g = Grid::with_unit_cfl(-30.0, 30.0, 601, 1.0);
    HomogeneousControl h;
    h.omega_plus = 1.0;
    h.omega_minus = 0.0;
    const auto psi = gaussian_envelope(g, 5.0);
    const auto st = polariton(g, p, h, psi);
    const double sin_theta = 1.0 / std::sqrt(2.0);
    for (std::size_t i = 0; i < g.n_points; i += 37) {
        CHECK(std::abs(st.s[i] + sin_theta * psi[i]) < 1e-15);
        CHECK(std::abs(st.e_plus[i] - sin_theta * psi[i]) < 1e-15);
        CHECK(st.e_minus[i] == cplx{});
    }
}

}
