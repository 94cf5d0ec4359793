#include "rieszwell/gamma.hpp"

#include <array>
#include <cmath>

#include "rieszwell/errors.hpp"

namespace rieszwell {
namespace {

// Lanczos approximation, g = 7, n = 9.
constexpr double lanczos_g = 7.0;
constexpr std::array<double, 9> lanczos_coef = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

constexpr double sqrt_two_pi = 2.5066282746310005024;

bool is_pole(double x) { return x <= 0.0 && x == std::floor(x); }

// sin(pi x) with exact zeros at integers and argument reduction to [-1/2, 1/2].
double sin_pi(double x) {
    double r = std::fmod(x, 2.0);
    if (r > 1.0) {
        r -= 2.0;
    } else if (r < -1.0) {
        r += 2.0;
    }
    if (r > 0.5) {
        r = 1.0 - r;
    } else if (r < -0.5) {
        r = -1.0 - r;
    }
    return std::sin(M_PI * r);
}

template <class T>
T lanczos(T z) {
    // Valid for Re z >= 1/2.
    z -= 1.0;
    T sum = lanczos_coef[0];
    for (std::size_t i = 1; i < lanczos_coef.size(); ++i) {
        sum += lanczos_coef[i] / (z + static_cast<double>(i));
    }
    const T t = z + lanczos_g + 0.5;
    return sqrt_two_pi * std::pow(t, z + 0.5) * std::exp(-t) * sum;
}

}  // namespace

double gamma_function(double x) {
    if (std::isnan(x)) {
        throw NonFiniteError("gamma: NaN argument");
    }
    if (is_pole(x)) {
        throw GammaPoleError(x);
    }
    if (x == std::floor(x) && x <= 20.0) {
        double r = 1.0;
        for (int k = 2; k < static_cast<int>(x); ++k) {
            r *= k;
        }
        return r;
    }
    if (x < 0.5) {
        return M_PI / (sin_pi(x) * lanczos(1.0 - x));
    }
    return lanczos(x);
}

std::complex<double> gamma_function(std::complex<double> z) {
    if (z.imag() == 0.0) {
        return gamma_function(z.real());
    }
    if (z.real() < 0.5) {
        return M_PI / (std::sin(M_PI * z) * lanczos(1.0 - z));
    }
    return lanczos(z);
}

double reciprocal_gamma(double x) {
    if (is_pole(x)) {
        return 0.0;
    }
    return 1.0 / gamma_function(x);
}

}  // namespace rieszwell
