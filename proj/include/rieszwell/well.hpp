#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rieszwell/grid.hpp"
#include "rieszwell/principal_value.hpp"

namespace rieszwell {

struct WellParams {
    double hbar = 1.0;
    double d_alpha = 1.0;
    double a = 1.0;
    double amplitude = 1.0;

    /// hbar, d_alpha and a must be positive; amplitude zero gives the trivial state.
    void validate() const;
    /// Amplitude 1/sqrt(a), which normalizes every eigenfunction.
    static WellParams normalized(double a);
};

struct WellState {
    int n = 1;
    WellParams params{};

    WellState() = default;
    WellState(int n, WellParams params);
    Parity parity() const { return n % 2 == 1 ? Parity::Odd : Parity::Even; }
    /// n pi hbar / 2a, the momentum at which phi_n has its removable poles.
    double pole_momentum() const;
};

enum class Region { LeftExterior, Interior, RightExterior };

Region region_of(double x, double a);
std::string to_string(Region region);
Region parse_region(const std::string& name);

/// A cos(n pi x/2a) for odd n and A sin(n pi x/2a) for even n inside the well, 0 outside.
double eigenfunction(const WellState& state, double x);
/// A sin(n pi (x + a)/2a) inside, 0 outside. Differs from eigenfunction() by the sign
/// sin(n pi/2) or cos(n pi/2).
double eigenfunction_shifted_form(const WellState& state, double x);

/// D_alpha (hbar n pi / 2a)^alpha for 1 < alpha <= 2.
double eigenvalue(const WellState& state, double alpha);

/// integral psi_n(x) exp(-i p x / hbar) dx in closed form; the removable points
/// p = +-n pi hbar/2a are handled by an exact rearrangement.
complex momentum_wavefunction(const WellState& state, double p);

enum class ReconstructMethod { AnalyticPV, NumericPV };
std::string to_string(ReconstructMethod method);
ReconstructMethod parse_method(const std::string& name);

struct Reconstruction {
    double value = 0.0;
    /// Principal value of the pole integral that fed the reconstruction.
    double pole_integral = 0.0;
    /// Extrapolation error of the numeric principal value, 0 for the closed form.
    double pv_error = 0.0;
};

/// Rebuilds psi_n(x) from momentum space, E^-1 D (-hbar^2 Laplacian)^(alpha/2) psi_n = psi_n,
/// with the pole integral from the closed form or the numerical engine. The numeric
/// path needs |x| <= 0.95a; at alpha = 2 it uses the spectral operator instead.
/// Throws ConvergenceError when the numeric principal value does not converge.
Reconstruction reconstruct(const WellState& state, double alpha, double x, ReconstructMethod method,
                           double tolerance = 1e-6);

struct ResidualReport {
    GridFunction residual;
    std::vector<bool> interior;  ///< |x| <= 0.95a
    std::vector<bool> exterior;  ///< |x| >= 1.05a
    double interior_max = 0.0;
    double exterior_max = 0.0;
};

/// D quantum_riesz(psi_n) - E_n psi_n on [-4a, 4a] with spacing a/512.
ResidualReport schrodinger_residual(const WellState& state, double alpha);

/// Segmented configuration-space values F1 (x >= a), F2 (x <= -a) and F3 (|x| < a).
/// Exterior points closer than 2% of a to the walls, and interior points within 2% of
/// the walls, are refused.
double controversy_derivative(const WellState& state, double alpha, double x, Region region);

/// exp(-i E_n t / hbar) psi_n(x).
complex stationary_state(const WellState& state, double alpha, double x, double t);

struct SweepRow {
    int n;
    double alpha;
    double x;
    double expected;
    double reconstructed;
    double abs_error;
    ReconstructMethod method;
};

/// Reconstruction at `points` uniform x in [-span a, span a] for every (n, alpha).
std::vector<SweepRow> consistency_sweep(const WellParams& params, const std::vector<int>& ns,
                                        const std::vector<double>& alphas, int points, double span,
                                        ReconstructMethod method, double tolerance = 1e-6);

/// CSV with header n,alpha,x,expected,reconstructed,abs_error,method.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace rieszwell
