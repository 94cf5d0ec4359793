#pragma once

#include <utility>
#include <vector>

#include "rieszwell/grid.hpp"
#include "rieszwell/riesz.hpp"

namespace rieszwell {

enum class Parity { Odd, Even };

/// The well's pole integral after the substitution p = (n pi hbar / 2a) q:
///
///   odd n:  I = PV integral |q|^alpha cos(n pi q / 2) cos(theta q) / (q^2 - 1) dq
///   even n: I = PV integral |q|^alpha sin(n pi q / 2) sin(theta q) / (q^2 - 1) dq
///
/// over the real line, with theta = n pi x / 2a and simple poles at q = +-1.
/// The (+-i)^alpha branch factors are normalized out, so I is real.
struct PoleIntegrand {
    double alpha;
    int n;
    double theta;

    static PoleIntegrand for_well(int n, double x, double a, double alpha);
    Parity parity() const { return n % 2 == 1 ? Parity::Odd : Parity::Even; }
    /// The two phases theta + n pi / 2 and theta - n pi / 2 of the folded form.
    std::pair<double, double> phases() const;
};

struct PVResult {
    complex value{};
    /// (eta, regulated value) for each completed regulator level.
    std::vector<std::pair<double, complex>> regulator_values;
    double extrapolation_error = 0.0;
    /// Change of the pole contribution when the excision radius is halved.
    double pole_error = 0.0;
    bool converged = false;
};

struct PVOptions {
    double excision = 1e-3;
    int max_levels = 10;
    /// Regulator levels completed before the extrapolation increment is trusted.
    int min_levels = 4;
};

/// Principal value of the pole integral by residue subtraction on [0.5, 1.5],
/// exp(-eta q) tail regularization and polynomial extrapolation to eta = 0.
/// Requires 1 < alpha < 2, tolerance >= 1e-6 and both phases nonzero.
PVResult pv_oscillatory(const PoleIntegrand& integrand, double tolerance, const PVOptions& options = {});

/// -pi sin(n pi/2) cos(n pi x/2a) for odd n, -pi cos(n pi/2) sin(n pi x/2a) for even n.
double pv_closed_form(int n, double x, double a, Parity parity);

/// integral of h+(x) exp(-i w x) (h- mirrored) with h+(x) = x^(alpha-1)/Gamma(alpha) on x > 0,
/// regularized by exp(-eta |x|) and extrapolated to eta = 0.
PVResult numeric_kernel_transform(KernelSide side, double alpha, double omega, double tolerance,
                                  int max_levels = 10);

}  // namespace rieszwell
