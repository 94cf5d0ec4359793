#include "rieszwell/transform.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>

#include "rieszwell/errors.hpp"
#include "rieszwell/quadrature.hpp"

namespace rieszwell {
namespace {

// FFTW planning is not thread-safe; execution is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

class FftBuffer {
public:
    explicit FftBuffer(std::size_t n)
        : n_(n), data_(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n))) {
        if (data_ == nullptr) {
            throw std::bad_alloc();
        }
        for (std::size_t k = 0; k < n; ++k) {
            data_[k][0] = 0.0;
            data_[k][1] = 0.0;
        }
    }
    ~FftBuffer() { fftw_free(data_); }
    FftBuffer(const FftBuffer&) = delete;
    FftBuffer& operator=(const FftBuffer&) = delete;

    complex get(std::size_t k) const { return {data_[k][0], data_[k][1]}; }
    void set(std::size_t k, complex v) {
        data_[k][0] = v.real();
        data_[k][1] = v.imag();
    }
    fftw_complex* raw() { return data_; }
    std::size_t size() const { return n_; }

private:
    std::size_t n_;
    fftw_complex* data_;
};

// In-place transform; sign is FFTW_FORWARD (exp(-i..)) or FFTW_BACKWARD (exp(+i..)).
void fft_in_place(FftBuffer& buf, int sign) {
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        plan = fftw_plan_dft_1d(static_cast<int>(buf.size()), buf.raw(), buf.raw(), sign,
                                FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
}

std::size_t padded_length(std::size_t n, const TransformOptions& opt) {
    if (opt.pad < 1) {
        throw DomainError("transform: pad factor must be >= 1");
    }
    std::size_t m = 1;
    while (m < n * static_cast<std::size_t>(opt.pad) || m < opt.min_length) {
        m <<= 1;
    }
    return m;
}

double alternating(std::size_t j) { return (j % 2 == 0) ? 1.0 : -1.0; }

void require_finite_density(const SpectralDensity& F) {
    if (F.values.empty()) {
        throw DomainError("inverse transform: empty spectral density");
    }
    if (!std::isfinite(F.omega_min) || !std::isfinite(F.d_omega) || !(F.d_omega > 0.0)) {
        throw DomainError("inverse transform: invalid frequency grid");
    }
    require_finite(F.values, "spectral density");
}

}  // namespace

SpectralDensity forward_transform(const GridFunction& f, const TransformOptions& options) {
    require_finite(f.values(), "forward transform");
    const std::size_t n = f.size();
    const std::size_t m = padded_length(n, options);
    const double dx = f.grid().dx();
    const double x0 = f.grid().x_min();

    FftBuffer buf(m);
    for (std::size_t j = 0; j < n; ++j) {
        const double w = (j == 0 || j == n - 1) ? 0.5 : 1.0;
        buf.set(j, w * alternating(j) * f[j]);
    }
    fft_in_place(buf, FFTW_FORWARD);

    SpectralDensity out;
    out.d_omega = 2.0 * M_PI / (static_cast<double>(m) * dx);
    out.omega_min = -static_cast<double>(m / 2) * out.d_omega;
    out.values.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
        out.values[k] = dx * std::polar(1.0, -out.omega(k) * x0) * buf.get(k);
    }
    out.truncation_warning = relative_end_magnitude(f) > options.truncation_tolerance;
    return out;
}

GridFunction inverse_transform(const SpectralDensity& F, const UniformGrid& grid) {
    require_finite_density(F);
    const std::size_t m = F.size();
    const double product = grid.dx() * F.d_omega * static_cast<double>(m);
    if (std::abs(product - 2.0 * M_PI) > 1e-9 * 2.0 * M_PI) {
        throw DomainError("inverse transform: grid spacing incompatible with frequency grid");
    }
    if (grid.count() > m) {
        throw DomainError("inverse transform: grid longer than the frequency grid");
    }
    const double shift = F.omega_min + static_cast<double>(m / 2) * F.d_omega;
    if (std::abs(shift) > 1e-9 * F.d_omega) {
        throw DomainError("inverse transform: frequency grid must be centred as w_k = (k - M/2) dw");
    }
    const double x0 = grid.x_min();
    FftBuffer buf(m);
    for (std::size_t k = 0; k < m; ++k) {
        buf.set(k, F.values[k] * std::polar(1.0, F.omega(k) * x0));
    }
    fft_in_place(buf, FFTW_BACKWARD);
    std::vector<complex> v(grid.count());
    const double scale = F.d_omega / (2.0 * M_PI);
    for (std::size_t j = 0; j < v.size(); ++j) {
        v[j] = scale * alternating(j) * buf.get(j);
    }
    return GridFunction(grid, std::move(v));
}

std::vector<complex> inverse_transform_at(const SpectralDensity& F, std::span<const double> xs) {
    require_finite_density(F);
    std::vector<complex> out(xs.size());
    const double scale = F.d_omega / (2.0 * M_PI);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        complex sum = 0.0;
        for (std::size_t k = 0; k < F.size(); ++k) {
            sum += F.values[k] * std::polar(1.0, F.omega(k) * xs[i]);
        }
        out[i] = scale * sum;
    }
    return out;
}

GridFunction apply_multiplier(const GridFunction& f, const std::function<complex(double)>& m,
                              const TransformOptions& options) {
    SpectralDensity F = forward_transform(f, options);
    for (std::size_t k = 0; k < F.size(); ++k) {
        F.values[k] *= m(F.omega(k));
    }
    return inverse_transform(F, f.grid());
}

double exponential_filter(double omega, double omega_max, int order, double strength) {
    if (order <= 0) {
        return 1.0;
    }
    return std::exp(-strength * std::pow(std::abs(omega) / omega_max, order));
}

complex power_tail_transform(double p, double L, double omega) {
    if (!(p > 0.0) || !(L > 0.0)) {
        throw DomainError("power tail: need p > 0 and L > 0");
    }
    if (omega == 0.0) {
        if (!(p > 1.0)) {
            throw DomainError("power tail: divergent at w = 0 for p <= 1");
        }
        return std::pow(L, 1.0 - p) / (p - 1.0);
    }
    if (omega < 0.0) {
        return std::conj(power_tail_transform(p, L, -omega));
    }
    // Rotate s = L - i t/omega onto the steepest-descent ray.
    const std::function<complex(double)> g = [p, L, omega](double u) -> complex {
        return std::pow(complex(L, -u / omega), -p) * std::exp(-u);
    };
    const auto r = integrate_complex_to_infinity(g, 0.0, AdaptiveOptions{1e-16, 1e-12, 2000});
    return complex(0.0, -1.0) * std::polar(1.0, -omega * L) * r.value / omega;
}

SpectralDensity complete_power_tails(const GridFunction& f, SpectralDensity core, double p,
                                     double center, double omega_max) {
    const UniformGrid& g = f.grid();
    const double s_right = g.x_max() - center;
    const double s_left = center - g.x_min();
    if (!(s_right > 0.0) || !(s_left > 0.0)) {
        throw DomainError("power tails: centre must lie strictly inside the grid");
    }
    struct Tail {
        double L;
        complex c1;
        complex c2;
    };
    auto fit = [&](std::size_t outer, double sign) {
        const double s1 = sign * (g.x(outer) - center);
        const std::size_t inner = g.nearest_index(center + sign * 0.75 * s1);
        const double s2 = sign * (g.x(inner) - center);
        const double a11 = std::pow(s1, -p), a12 = std::pow(s1, -p - 2.0);
        const double a21 = std::pow(s2, -p), a22 = std::pow(s2, -p - 2.0);
        const double det = a11 * a22 - a12 * a21;
        const complex c1 = (f[outer] * a22 - f[inner] * a12) / det;
        const complex c2 = (a11 * f[inner] - a21 * f[outer]) / det;
        return Tail{s1, c1, c2};
    };
    const Tail right = fit(g.count() - 1, 1.0);
    const Tail left = fit(0, -1.0);
    // Model slope d/ds at the fitted end (s measured away from the centre).
    auto slope = [p](const Tail& t) {
        return -p * t.c1 * std::pow(t.L, -p - 1.0) - (p + 2.0) * t.c2 * std::pow(t.L, -p - 3.0);
    };
    const complex right_slope = slope(right);
    const complex left_slope = -slope(left);
    const complex f_right = f[g.count() - 1];
    const complex f_left = f[0];
    const double h2 = g.dx() * g.dx() / 12.0;
    for (std::size_t k = 0; k < core.size(); ++k) {
        const double w = core.omega(k);
        if (std::abs(w) > omega_max || (w == 0.0 && p <= 1.0)) {
            continue;
        }
        const complex r = right.c1 * power_tail_transform(p, right.L, w) +
                          right.c2 * power_tail_transform(p + 2.0, right.L, w);
        const complex l = left.c1 * power_tail_transform(p, left.L, -w) +
                          left.c2 * power_tail_transform(p + 2.0, left.L, -w);
        core.values[k] += std::polar(1.0, -w * center) * (r + l);
        // The trapezoidal core is biased by (dx^2/12) [g'(b) - g'(a)], g = f exp(-i w x),
        // once f no longer vanishes at the grid ends.
        const complex iw(0.0, w);
        const complex gb = (right_slope - iw * f_right) * std::polar(1.0, -w * g.x_max());
        const complex ga = (left_slope - iw * f_left) * std::polar(1.0, -w * g.x_min());
        core.values[k] -= h2 * (gb - ga);
    }
    return core;
}

MultiplierDeviation multiplier_deviation(const GridFunction& input, const GridFunction& output,
                                         const std::function<complex(double)>& m,
                                         const MultiplierCheckOptions& options) {
    if (std::abs(input.grid().dx() - output.grid().dx()) > 1e-12 * input.grid().dx()) {
        throw DomainError("multiplier check: input and output grids differ in spacing");
    }
    TransformOptions topt = options.transform;
    topt.min_length = std::max(topt.min_length, std::max(input.size(), output.size()) *
                                                    static_cast<std::size_t>(std::max(topt.pad, 1)));
    const SpectralDensity Fm = forward_transform(input, topt);
    SpectralDensity G = forward_transform(output, topt);

    const double threshold = options.band_threshold * Fm.max_abs();
    MultiplierDeviation out;
    auto in_band = [&](std::size_t k) {
        const double w = std::abs(Fm.omega(k));
        return std::abs(Fm.values[k]) > threshold && w >= options.omega_low &&
               w <= options.omega_high;
    };
    for (std::size_t k = 0; k < Fm.size(); ++k) {
        if (in_band(k)) {
            out.band_limit = std::max(out.band_limit, std::abs(Fm.omega(k)));
        }
    }
    if (options.tail_exponent > 0.0) {
        G = complete_power_tails(output, std::move(G), options.tail_exponent, options.tail_center,
                                 out.band_limit);
    }
    for (std::size_t k = 0; k < Fm.size(); ++k) {
        if (!in_band(k)) {
            continue;
        }
        const double w = Fm.omega(k);
        const complex expected = m(w);
        if (std::abs(expected) == 0.0 || (w == 0.0 && options.tail_exponent > 0.0 &&
                                          options.tail_exponent <= 1.0)) {
            continue;
        }
        const double dev = std::abs(G.values[k] / Fm.values[k] - expected) / std::abs(expected);
        ++out.samples;
        if (dev > out.max_relative) {
            out.max_relative = dev;
            out.worst_omega = w;
        }
    }
    return out;
}

}  // namespace rieszwell
