#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "slp/core_model.hpp"
#include "slp/errors.hpp"

using namespace slp;
using std::numbers::pi;

TEST_SUITE("core_model") {

TEST_CASE("params validation and absorption length")
{
    PhysicalParams p;
    p.gamma = 2.0;
    p.coupling = 0.5;
    p.light_speed = 3.0;
    CHECK(p.absorption_length() == doctest::Approx(24.0));
    CHECK_NOTHROW(p.validate());

    PhysicalParams bad = p;
    bad.gamma = 0.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = p;
    bad.gamma0 = -1e-3;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = p;
    bad.coupling = -1.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("grid spacing and CFL check")
{
    const Grid g = Grid::with_unit_cfl(-10.0, 10.0, 201, 1.0);
    CHECK(g.dz() == doctest::Approx(0.1));
    CHECK(g.dt == doctest::Approx(0.1));
    CHECK(g.cfl(1.0) == doctest::Approx(1.0));
    CHECK(g.z(200) == doctest::Approx(10.0));
    CHECK_NOTHROW(g.validate(1.0));
    CHECK_THROWS_AS(g.validate(2.0), ConfigError);

    Grid tiny = g;
    tiny.n_points = 2;
    CHECK_THROWS_AS(tiny.validate(1.0), ConfigError);
}

TEST_CASE("mixing angles: worked values")
{
    PhysicalParams p;
    auto a = mixing_angles(p, 1.0, 1.0);
    CHECK(a.phi == doctest::Approx(pi / 4));
    CHECK(std::cos(2 * a.phi) == doctest::Approx(0.0).epsilon(1e-15));

    a = mixing_angles(p, 1.0, 0.0);
    CHECK(a.phi == 0.0);
    CHECK(std::cos(2 * a.phi) == 1.0);

    a = mixing_angles(p, 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0));
    CHECK(a.theta == doctest::Approx(pi / 4));

    CHECK_THROWS_AS((void)mixing_angles(p, 0.0, 0.0), DomainError);
}

TEST_CASE("mixing angles: cos 2phi identity on random pairs")
{
    PhysicalParams p;
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const cplx op{u(rng), u(rng)};
        const cplx om{u(rng), u(rng)};
        const auto a = mixing_angles(p, op, om);
        REQUIRE(a.theta >= 0.0);
        REQUIRE(a.theta <= pi / 2);
        REQUIRE(a.phi >= 0.0);
        REQUIRE(a.phi <= pi / 2);
        const double o2 = std::norm(op) + std::norm(om);
        const double expect = (std::norm(op) - std::norm(om)) / o2;
        worst = std::max(worst, std::abs(std::cos(2 * a.phi) - expect));
    }
    CHECK(worst < 1e-14);
}

TEST_CASE("group velocity")
{
    PhysicalParams p;
    CHECK(group_velocity(p, 0.0) == doctest::Approx(1.0));
    CHECK(group_velocity(p, pi / 2) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(group_velocity(p, pi / 4) == doctest::Approx(0.5));

    // monotone in Omega_0^2 at fixed coupling
    double prev = -1.0;
    for (double o2 = 0.01; o2 < 100.0; o2 *= 1.3) {
        const double v = group_velocity(p, mixing_angles(p, std::sqrt(o2), 0.0).theta);
        CHECK(v > prev);
        prev = v;
    }
}

TEST_CASE("phase matched detuning")
{
    PhysicalParams p;
    CHECK(phase_matched_detuning(p, pi / 4) == 0.0);
    p.carrier_offset = 0.1;
    CHECK(phase_matched_detuning(p, pi / 4) == doctest::Approx(-0.1));
    CHECK(std::abs(phase_matched_detuning(p, pi / 2)) < 1e-30);
    CHECK_THROWS_AS((void)phase_matched_detuning(p, 0.0), DomainError);
}

TEST_CASE("tanh schedule limits")
{
    TanhSchedule s;
    s.omega_max = 1e3;
    CHECK(s.cos2_theta_plus(-1e4) == doctest::Approx(1.0));
    CHECK(std::abs(control_field_at(s, 0.0, -1e4).plus) == doctest::Approx(1e3));

    const auto mid = control_field_at(s, 0.0, 150.0);
    CHECK(s.cos2_theta_plus(150.0) < 1e-5);
    CHECK(std::abs(mid.plus) < 5e-3);
    CHECK(std::abs(mid.minus) < 5e-3);

    // retrieval: both cos^2 settle at retrieve_level, so equal amplitudes
    const auto late = control_field_at(s, 0.0, 1e4);
    const double expect = std::sqrt((1.0 / 3.0) / (1.0 - 1.0 / 3.0));
    CHECK(std::abs(late.plus) == doctest::Approx(expect));
    CHECK(std::abs(late.minus) == doctest::Approx(expect));
}

TEST_CASE("gaussian foci normalization and literal law window")
{
    GaussianFoci f;
    f.plus_focus.start = -5.0;
    f.minus_focus.start = 5.0;
    f.rayleigh_range = 3.0;
    CHECK(std::abs(control_field_at(f, -5.0, 0.0).plus) == doctest::Approx(1.0));
    CHECK(std::abs(control_field_at(f, 5.0, 0.0).minus) == doctest::Approx(1.0));
    CHECK(std::abs(control_field_at(f, -2.0, 0.0).plus) == doctest::Approx(1.0 / std::sqrt(2.0)));

    GaussianFoci lit = f;
    lit.law = BeamLaw::Literal;
    CHECK_THROWS_AS((void)control_field_at(lit, 0.0, 0.0), DomainError);
    lit.validity_window = std::pair{-6.0, -4.0};
    CHECK(std::abs(control_field_at(lit, -5.0, 0.0).plus) == doctest::Approx(1.0));
    // 1 - 2 (z - z_f)/pi <= 0 is outside the law
    CHECK_THROWS_AS((void)control_field_at(lit, -5.0 + pi / 2 + 0.1, 0.0), DomainError);
}

TEST_CASE("control evaluation is pure")
{
    GaussianFoci f;
    f.plus_focus = {-20.0, -10.0, 700.0, 0.0125};
    f.minus_focus = {20.0, 10.0, 700.0, 0.0125};
    f.rayleigh_range = pi / 2;
    f.switch_on = SwitchOn{300.0, 0.1};
    const ControlProfile prof{f};
    for (double z : {-30.0, -1.0, 0.0, 7.5}) {
        const auto a = control_field_at(prof, z, 812.25);
        const auto b = control_field_at(prof, z, 812.25);
        CHECK(a.plus == b.plus);
        CHECK(a.minus == b.minus);
    }
}

TEST_CASE("grid sampling matches pointwise evaluation")
{
    GaussianFoci f;
    f.plus_focus = {-20.0, -10.0, 700.0, 0.0125};
    f.minus_focus = {20.0, 10.0, 700.0, 0.0125};
    f.rayleigh_range = pi / 2;
    f.switch_on = SwitchOn{300.0, 0.1};
    const ControlProfile prof{f};
    const Grid g = Grid::with_unit_cfl(-40.0, 40.0, 161, 1.0);
    std::vector<cplx> plus, minus;
    prof.sample(g, 650.0, plus, minus);
    REQUIRE(plus.size() == g.n_points);
    for (std::size_t i = 0; i < g.n_points; ++i) {
        const auto a = control_field_at(prof, g.z(i), 650.0);
        CHECK(std::abs(plus[i] - a.plus) <= 1e-14 * (1.0 + std::abs(a.plus)));
        CHECK(std::abs(minus[i] - a.minus) <= 1e-14 * (1.0 + std::abs(a.minus)));
    }

    const ControlProfile homog{HomogeneousControl{}};
    homog.sample(g, 0.0, plus, minus);
    CHECK(plus.size() == 1);
    CHECK(homog.homogeneous());
}

TEST_CASE("comb validation")
{
    CombControl c;
    c.lines = {{0.0, 1.0, 1.0}, {0.5, 0.3, cplx{0.0, 0.3}}};
    CHECK_NOTHROW(c.validate());
    CHECK(c.resonant_line().detuning == 0.0);

    c.lines[1].omega_minus = 0.2;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c.lines = {{0.1, 1.0, 1.0}};
    CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("linear ratio control")
{
    LinearRatioControl lin;
    lin.omega_total = 2.0;
    lin.length_scale = 50.0;
    const ControlProfile prof{lin};
    for (double z : {-80.0, -20.0, 0.0, 10.0, 49.0}) {
        const auto a = control_field_at(prof, z, 0.0);
        CHECK(a.total_intensity() == doctest::Approx(4.0));
        const double c2 = (std::norm(a.plus) - std::norm(a.minus)) / a.total_intensity();
        CHECK(c2 == doctest::Approx(std::clamp(-z / 50.0, -1.0, 1.0)));
    }
}

}
