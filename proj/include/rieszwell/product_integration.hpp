#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace rieszwell {

/// Cell moments of the kernel s^(q-1) against the two linear hat functions:
///   A_m = integral_m^(m+1) s^(q-1) (m+1-s) ds,  B_m = integral_m^(m+1) s^(q-1) (s-m) ds.
/// Integrating a piecewise-linear interpolant against s^(q-1) reduces to sums of these.
class PowerKernelMoments {
public:
    PowerKernelMoments(double q, std::size_t cells);

    double q() const noexcept { return q_; }
    std::size_t cells() const noexcept { return a_.size(); }
    double a(std::size_t m) const noexcept { return a_[m]; }
    double b(std::size_t m) const noexcept { return b_[m]; }

    /// Node weight at lag m for an integral spanning `span` cells (0 <= m <= span).
    double node_weight(std::size_t m, std::size_t span) const noexcept;

private:
    double q_;
    std::vector<double> a_;
    std::vector<double> b_;
};

/// out[j] = (1/Gamma(q)) integral_{x_0}^{x_j} (x_j - t)^(q-1) f(t) dt for the
/// piecewise-linear interpolant of `f` on a grid of spacing dx; out[0] = 0.
std::vector<std::complex<double>> left_power_integral(std::span<const std::complex<double>> f,
                                                      double dx, double q);

/// Mirror image: out[j] = (1/Gamma(q)) integral_{x_j}^{x_last} (t - x_j)^(q-1) f(t) dt.
std::vector<std::complex<double>> right_power_integral(std::span<const std::complex<double>> f,
                                                       double dx, double q);

}  // namespace rieszwell
