#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace slp::numerics {

using cplx = std::complex<double>;

/// Midpoint-rule integral sum_i f_i dz over [skip, n - skip).
double integrate(std::span<const double> f, double dz, std::size_t skip = 0);
cplx integrate(std::span<const cplx> f, double dz, std::size_t skip = 0);

/// First derivative, 4th-order central in the interior, one-sided 2nd order at
/// the two end cells.
std::vector<double> derivative(std::span<const double> f, double dz);
std::vector<cplx> derivative(std::span<const cplx> f, double dz);
std::vector<double> second_derivative(std::span<const double> f, double dz);
std::vector<cplx> second_derivative(std::span<const cplx> f, double dz);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

/// Ordinary least squares y = slope * x + intercept.
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

/// Convolution of f with the heat kernel of variance `variance`, computed
/// with a zero-padded FFT so that no periodic wrap-around occurs.
std::vector<cplx> heat_kernel_convolve(std::span<const cplx> f, double dz, double variance);

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Gauss-Hermite rule for weight exp(-x^2) (Golub-Welsch).
QuadratureRule gauss_hermite(std::size_t order);

/// Normalized Hermite functions psi_n(x) = (2^n n! sqrt(pi))^{-1/2} H_n(x) e^{-x^2/2}
/// for n = 0..n_max, by the stable three-term recurrence.
std::vector<double> hermite_functions(std::size_t n_max, double x);

/// h_n(x) = (2^n n!)^{-1/2} H_n(x) for n = 0..n_max.
std::vector<double> scaled_hermite(std::size_t n_max, double x);

} // namespace slp::numerics
