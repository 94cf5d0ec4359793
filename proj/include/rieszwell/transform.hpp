#pragma once

#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "rieszwell/grid.hpp"

namespace rieszwell {

struct TransformOptions {
    /// Zero padding: the FFT length is the smallest power of two >= pad * count.
    int pad = 4;
    /// Lower bound on the FFT length (rounded up to a power of two).
    std::size_t min_length = 0;
    /// End samples above this fraction of max|f| set SpectralDensity::truncation_warning.
    double truncation_tolerance = 1e-10;
};

/// F(w) = integral f(x) exp(-i w x) dx by the trapezoidal rule on the zero-padded
/// grid. Frequencies are w_k = (k - M/2) dw, dw = 2 pi / (M dx), k = 0..M-1.
SpectralDensity forward_transform(const GridFunction& f, const TransformOptions& options = {});

/// (1/2 pi) integral F(w) exp(i w x) dw on `grid`. The grid spacing must satisfy
/// dx * dw * M = 2 pi (as produced by forward_transform) and count <= M.
GridFunction inverse_transform(const SpectralDensity& F, const UniformGrid& grid);

/// Same integral evaluated by direct summation at arbitrary points.
std::vector<complex> inverse_transform_at(const SpectralDensity& F, std::span<const double> xs);

/// Applies the Fourier multiplier m(w) to f and returns the result on f's grid.
GridFunction apply_multiplier(const GridFunction& f, const std::function<complex(double)>& m,
                              const TransformOptions& options = {});

/// Exponential low-pass filter exp(-strength (|w| / w_max)^order); order 0 means no filtering.
double exponential_filter(double omega, double omega_max, int order, double strength = 36.0);

/// E(w) = integral_L^inf s^(-p) exp(-i w s) ds for L > 0, p > 0 and w != 0
/// (w = 0 is allowed when p > 1).
complex power_tail_transform(double p, double L, double omega);

/// Adds to `core` the transform of the algebraic tails of f beyond the grid,
/// modelled on each side as c1 s^(-p) + c2 s^(-p-2) with s = |x - center| and
/// the coefficients fitted to the outermost samples. Only |w| <= omega_max is
/// updated; w = 0 is skipped when p <= 1.
SpectralDensity complete_power_tails(const GridFunction& f, SpectralDensity core, double p,
                                     double center, double omega_max);

struct MultiplierCheckOptions {
    TransformOptions transform{};
    /// Frequencies with |F(w)| <= band_threshold * max|F| are ignored.
    double band_threshold = 1e-6;
    /// Optional extra band restriction on |w|.
    double omega_low = 0.0;
    double omega_high = std::numeric_limits<double>::infinity();
    /// Algebraic decay exponent of the output's tails; 0 disables tail completion.
    double tail_exponent = 0.0;
    double tail_center = 0.0;
};

struct MultiplierDeviation {
    /// max |G/F - m| / |m| over the band, G and F the transforms of output and input.
    double max_relative = 0.0;
    /// Frequency at which the maximum occurs.
    double worst_omega = 0.0;
    /// Largest |w| in the band.
    double band_limit = 0.0;
    std::size_t samples = 0;
};

/// Measures how well output = T(input) realizes the Fourier multiplier m.
/// Both functions must share the grid spacing; frequencies where m = 0 are skipped.
MultiplierDeviation multiplier_deviation(const GridFunction& input, const GridFunction& output,
                                         const std::function<complex(double)>& m,
                                         const MultiplierCheckOptions& options = {});

}  // namespace rieszwell
