#include <doctest.h>

#include <cmath>
#include <numbers>

#include "slp/numerics.hpp"

using namespace slp;
using namespace slp::numerics;

TEST_SUITE("numerics") {

TEST_CASE("derivatives of a polynomial are exact to 4th order")
{
    const double dz = 0.01;
    std::vector<double> f(201);
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double z = -1.0 + dz * static_cast<double>(i);
        f[i] = z * z * z - 2 * z;
    }
    const auto d1 = derivative(std::span<const double>(f), dz);
    const auto d2 = second_derivative(std::span<const double>(f), dz);
    for (std::size_t i = 2; i + 2 < f.size(); ++i) {
        const double z = -1.0 + dz * static_cast<double>(i);
        CHECK(d1[i] == doctest::Approx(3 * z * z - 2).epsilon(1e-10));
        CHECK(d2[i] == doctest::Approx(6 * z).epsilon(1e-8).scale(1.0));
    }
}

TEST_CASE("line fit recovers slope and intercept")
{
    std::vector<double> x, y;
    for (int k = 0; k < 50; ++k) {
        x.push_back(k * 0.5);
        y.push_back(-1.25 * k * 0.5 + 3.0);
    }
    const auto fit = fit_line(x, y);
    CHECK(fit.slope == doctest::Approx(-1.25));
    CHECK(fit.intercept == doctest::Approx(3.0));
    CHECK(fit.r2 == doctest::Approx(1.0));
}

TEST_CASE("heat kernel of a gaussian widens by the kernel variance")
{
    const double dz = 0.1;
    const std::size_t n = 2001;
    std::vector<cplx> f(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double z = -100.0 + dz * static_cast<double>(i);
        f[i] = std::exp(-z * z / 200.0);
    }
    const auto g = heat_kernel_convolve(f, dz, 100.0);
    for (std::size_t i = 0; i < n; i += 50) {
        const double z = -100.0 + dz * static_cast<double>(i);
        const double expect = std::sqrt(100.0 / 200.0) * std::exp(-z * z / 400.0);
        CHECK(std::abs(g[i] - expect) < 1e-10);
    }
}

TEST_CASE("hermite orthogonality under exp(-x^2)")
{
    const auto rule = gauss_hermite(40);
    double worst = 0.0;
    for (std::size_t m = 0; m <= 10; ++m)
        for (std::size_t n = 0; n <= 10; ++n) {
            double acc = 0.0;
            for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
                const auto h = scaled_hermite(10, rule.nodes[k]);
                acc += rule.weights[k] * h[m] * h[n];
            }
            // scaled h_n = (2^n n!)^{-1/2} H_n, so the norm is sqrt(pi)
            const double expect = m == n ? std::sqrt(std::numbers::pi) : 0.0;
            worst = std::max(worst, std::abs(acc - expect));
        }
    CHECK(worst < 1e-10);
}

TEST_CASE("hermite functions survive large orders and arguments")
{
    const auto psi = hermite_functions(200, 15.0);
    for (double v : psi) CHECK(std::isfinite(v));
    const auto psi0 = hermite_functions(3, 0.0);
    CHECK(psi0[0] == doctest::Approx(std::pow(std::numbers::pi, -0.25)));
    CHECK(psi0[1] == 0.0);
}

}
