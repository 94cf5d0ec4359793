#pragma once

#include <complex>

namespace rieszwell {

/// Gamma function on the real line. Throws GammaPoleError at 0, -1, -2, ...
double gamma_function(double x);

/// Complex gamma function. Throws GammaPoleError at non-positive integers.
std::complex<double> gamma_function(std::complex<double> z);

/// 1/Gamma(x), entire; returns exactly 0 at the poles of Gamma.
double reciprocal_gamma(double x);

}  // namespace rieszwell
