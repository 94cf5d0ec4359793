#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace rieszwell {

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

GaussRule gauss_legendre(int n);

struct AdaptiveOptions {
    double abs_tol = 1e-13;
    double rel_tol = 1e-11;
    int max_intervals = 4000;
};

template <class T>
struct QuadResult {
    T value{};
    double error = 0.0;
    bool converged = false;
};

/// Globally adaptive 15-point Gauss-Kronrod quadrature on [a, b].
QuadResult<double> integrate(const std::function<double(double)>& f, double a, double b,
                             const AdaptiveOptions& options = {});
QuadResult<std::complex<double>> integrate_complex(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    const AdaptiveOptions& options = {});

/// Integral over [a, inf) through the map x = a + t / (1 - t).
QuadResult<double> integrate_to_infinity(const std::function<double(double)>& f, double a,
                                         const AdaptiveOptions& options = {});
QuadResult<std::complex<double>> integrate_complex_to_infinity(
    const std::function<std::complex<double>(double)>& f, double a,
    const AdaptiveOptions& options = {});

struct Extrapolation {
    std::complex<double> value;
    /// |difference| between the highest-order estimate and the one before it.
    double increment = 0.0;
};

/// Neville polynomial extrapolation of samples v(h_i) to h = 0.
Extrapolation extrapolate_to_zero(std::span<const double> h,
                                  std::span<const std::complex<double>> v);

}  // namespace rieszwell
