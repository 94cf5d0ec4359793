#pragma once

#include <span>
#include <string>
#include <vector>

#include "rieszwell/grid.hpp"
#include "rieszwell/transform.hpp"

namespace rieszwell {

enum class RieszRepresentation { Spectral, CaputoForm, RLForm, SecondDifference };

enum class KernelSide { HPlus, HMinus };

std::string to_string(RieszRepresentation rep);
/// Accepts spectral, caputo, rl, second-difference (case-sensitive).
RieszRepresentation parse_representation(const std::string& name);

struct RieszOptions {
    TransformOptions transform{};
    /// Order of the exponential low-pass filter applied to spectral multipliers
    /// (0 disables it). Removes Gibbs ringing for inputs with kinks, such as
    /// the well eigenfunctions.
    int filter_order = 8;
    double filter_strength = 36.0;
    /// Configuration-space forms reject inputs larger than this fraction of
    /// max|f| at either grid edge.
    double decay_tolerance = 1e-8;
};

/// Gamma(1 + alpha) sin(alpha pi / 2) / pi, the weight of the singular-kernel form.
double second_difference_weight(double alpha);

/// Riesz fractional integral: (1/(2 Gamma(alpha) cos(alpha pi/2))) integral |x-y|^(alpha-1) f(y) dy.
GridFunction riesz_potential(const GridFunction& f, double alpha, const RieszOptions& options = {});

/// Fourier transform of h+ (x^(alpha-1)/Gamma(alpha) for x > 0) or its mirror h-:
/// (i w)^(-alpha) or (-i w)^(-alpha) on the principal branch.
complex kernel_transform(KernelSide side, double alpha, double omega);

/// Riesz derivative with Fourier multiplier -|w|^alpha. Spectral output lives on
/// f's grid; the one-sided forms trim the stencil half-width at each end.
GridFunction riesz_derivative(const GridFunction& f, double alpha, RieszRepresentation rep,
                              const RieszOptions& options = {});

/// (-hbar^2 Laplacian)^(alpha/2): multiplier hbar^alpha |w|^alpha, 1 < alpha <= 2.
GridFunction quantum_riesz(const GridFunction& psi, double alpha, double hbar,
                           const RieszOptions& options = {});

/// Same operator evaluated at arbitrary points by direct inverse summation.
std::vector<complex> quantum_riesz_at(const GridFunction& psi, double alpha, double hbar,
                                      std::span<const double> xs, const RieszOptions& options = {});

}  // namespace rieszwell
