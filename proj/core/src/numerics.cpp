#include "slp/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <fftw3.h>

#include "slp/errors.hpp"

namespace slp::numerics {

namespace {

template <class T>
T integrate_impl(std::span<const T> f, double dz, std::size_t skip)
{
    T sum{};
    if (f.size() <= 2 * skip) return sum;
    for (std::size_t i = skip; i < f.size() - skip; ++i) sum += f[i];
    return sum * dz;
}

template <class T>
std::vector<T> derivative_impl(std::span<const T> f, double dz)
{
    const std::size_t n = f.size();
    std::vector<T> d(n);
    if (n < 3) return d;
    const double inv = 1.0 / dz;
    d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) * (0.5 * inv);
    d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) * (0.5 * inv);
    if (n < 5) {
        for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - f[i - 1]) * (0.5 * inv);
        return d;
    }
    d[1] = (f[2] - f[0]) * (0.5 * inv);
    d[n - 2] = (f[n - 1] - f[n - 3]) * (0.5 * inv);
    const double c = inv / 12.0;
    for (std::size_t i = 2; i + 2 < n; ++i)
        d[i] = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) * c;
    return d;
}

template <class T>
std::vector<T> second_derivative_impl(std::span<const T> f, double dz)
{
    const std::size_t n = f.size();
    std::vector<T> d(n);
    if (n < 4) return d;
    const double inv2 = 1.0 / (dz * dz);
    d[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) * inv2;
    d[n - 1] = (2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]) * inv2;
    if (n < 5) {
        for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - 2.0 * f[i] + f[i - 1]) * inv2;
        return d;
    }
    d[1] = (f[2] - 2.0 * f[1] + f[0]) * inv2;
    d[n - 2] = (f[n - 1] - 2.0 * f[n - 2] + f[n - 3]) * inv2;
    const double c = inv2 / 12.0;
    for (std::size_t i = 2; i + 2 < n; ++i)
        d[i] = (-f[i - 2] + 16.0 * f[i - 1] - 30.0 * f[i] + 16.0 * f[i + 1] - f[i + 2]) * c;
    return d;
}

} // namespace

double integrate(std::span<const double> f, double dz, std::size_t skip)
{
    return integrate_impl(f, dz, skip);
}

cplx integrate(std::span<const cplx> f, double dz, std::size_t skip)
{
    return integrate_impl(f, dz, skip);
}

std::vector<double> derivative(std::span<const double> f, double dz) { return derivative_impl(f, dz); }
std::vector<cplx> derivative(std::span<const cplx> f, double dz) { return derivative_impl(f, dz); }

std::vector<double> second_derivative(std::span<const double> f, double dz)
{
    return second_derivative_impl(f, dz);
}

std::vector<cplx> second_derivative(std::span<const cplx> f, double dz)
{
    return second_derivative_impl(f, dz);
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y)
{
    const std::size_t n = std::min(x.size(), y.size());
    if (n < 2) throw NumericalError("fit_line: need at least two points");
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) throw NumericalError("fit_line: degenerate abscissae");
    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return fit;
}

std::vector<cplx> heat_kernel_convolve(std::span<const cplx> f, double dz, double variance)
{
    const std::size_t n = f.size();
    std::vector<cplx> out(f.begin(), f.end());
    if (n == 0 || variance <= 0.0) return out;

    // pad far enough that the kernel tail (10 sigma) never wraps around
    const double sigma = std::sqrt(variance);
    const auto pad = static_cast<std::size_t>(std::ceil(10.0 * sigma / dz)) + 1;
    std::size_t m = 1;
    while (m < n + 2 * pad) m <<= 1;

    auto* buf = fftw_alloc_complex(m);
    fftw_plan fwd = fftw_plan_dft_1d(static_cast<int>(m), buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
    fftw_plan bwd = fftw_plan_dft_1d(static_cast<int>(m), buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    for (std::size_t i = 0; i < m; ++i) buf[i][0] = buf[i][1] = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        buf[i][0] = f[i].real();
        buf[i][1] = f[i].imag();
    }
    fftw_execute(fwd);
    const double dk = 2.0 * std::numbers::pi / (static_cast<double>(m) * dz);
    for (std::size_t j = 0; j < m; ++j) {
        const double idx = j <= m / 2 ? static_cast<double>(j) : static_cast<double>(j) - static_cast<double>(m);
        const double k = idx * dk;
        const double damp = std::exp(-0.5 * variance * k * k) / static_cast<double>(m);
        buf[j][0] *= damp;
        buf[j][1] *= damp;
    }
    fftw_execute(bwd);
    for (std::size_t i = 0; i < n; ++i) out[i] = {buf[i][0], buf[i][1]};
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
    fftw_free(buf);
    return out;
}

QuadratureRule gauss_hermite(std::size_t order)
{
    if (order == 0) throw NumericalError("gauss_hermite: order must be positive");
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(order),
                                                static_cast<Eigen::Index>(order));
    for (std::size_t i = 1; i < order; ++i) {
        const double b = std::sqrt(0.5 * static_cast<double>(i));
        jac(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = b;
        jac(static_cast<Eigen::Index>(i - 1), static_cast<Eigen::Index>(i)) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jac);
    QuadratureRule rule;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    const double mu0 = std::sqrt(std::numbers::pi);
    for (std::size_t i = 0; i < order; ++i) {
        const auto k = static_cast<Eigen::Index>(i);
        rule.nodes[i] = eig.eigenvalues()(k);
        const double v0 = eig.eigenvectors()(0, k);
        rule.weights[i] = mu0 * v0 * v0;
    }
    return rule;
}

std::vector<double> hermite_functions(std::size_t n_max, double x)
{
    std::vector<double> psi(n_max + 1);
    psi[0] = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
    if (n_max >= 1) psi[1] = std::sqrt(2.0) * x * psi[0];
    for (std::size_t n = 1; n < n_max; ++n) {
        const double dn = static_cast<double>(n);
        psi[n + 1] = std::sqrt(2.0 / (dn + 1.0)) * x * psi[n] - std::sqrt(dn / (dn + 1.0)) * psi[n - 1];
    }
    return psi;
}

std::vector<double> scaled_hermite(std::size_t n_max, double x)
{
    std::vector<double> h(n_max + 1);
    h[0] = 1.0;
    if (n_max >= 1) h[1] = std::sqrt(2.0) * x;
    for (std::size_t n = 1; n < n_max; ++n) {
        const double dn = static_cast<double>(n);
        h[n + 1] = std::sqrt(2.0 / (dn + 1.0)) * x * h[n] - std::sqrt(dn / (dn + 1.0)) * h[n - 1];
    }
    return h;
}

} // namespace slp::numerics
