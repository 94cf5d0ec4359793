#include "rieszwell/principal_value.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "rieszwell/errors.hpp"
#include "rieszwell/gamma.hpp"
#include "rieszwell/quadrature.hpp"

namespace rieszwell {
namespace {

// Regulated integrals complete once exp(-eta q) has fallen below e^-40.
constexpr double kDecayExponent = 40.0;
constexpr int kPanelOrder = 8;

const GaussRule& panel_rule() {
    static const GaussRule rule = gauss_legendre(kPanelOrder);
    return rule;
}

double regulator(double eta0, int level) { return std::ldexp(eta0, -level); }

// Integrates g(q) exp(-eta_j q) over [start, 40/eta_j] for every level j in one
// pass of fixed-width panels, skipping [skip_lo, skip_hi]. Each time the lowest
// open level completes, `on_level(j, value)` decides whether to continue.
void regulated_sweep(const std::function<complex(double)>& g, double start, double step,
                     double skip_lo, double skip_hi, double eta0, int levels,
                     const std::function<bool(int, complex)>& on_level) {
    const GaussRule& rule = panel_rule();
    std::vector<complex> acc(static_cast<std::size_t>(levels), complex(0.0));
    const double eta_min = regulator(eta0, levels - 1);
    int open = 0;
    for (long panel = 0;; ++panel) {
        const double lo = start + static_cast<double>(panel) * step;
        const double hi = lo + step;
        while (open < levels && lo >= kDecayExponent / regulator(eta0, open)) {
            if (!on_level(open, acc[static_cast<std::size_t>(open)])) {
                return;
            }
            ++open;
        }
        if (open == levels) {
            return;
        }
        if (hi <= skip_lo + 1e-12 * step || lo >= skip_hi - 1e-12 * step) {
            const double mid = 0.5 * (lo + hi), half = 0.5 * step;
            for (int i = 0; i < kPanelOrder; ++i) {
                const double q = mid + half * rule.nodes[i];
                const complex v = half * rule.weights[i] * g(q);
                double w = std::exp(-eta_min * q);
                for (int j = levels - 1; j >= open; --j) {
                    acc[static_cast<std::size_t>(j)] += w * v;
                    w *= w;
                }
            }
        }
    }
}

template <class F>
complex gauss_panels(const F& f, double lo, double hi, int panels) {
    const GaussRule& rule = panel_rule();
    const double step = (hi - lo) / panels, half = 0.5 * step;
    complex sum = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double mid = lo + (p + 0.5) * step;
        for (int i = 0; i < kPanelOrder; ++i) {
            sum += half * rule.weights[i] * f(mid + half * rule.nodes[i]);
        }
    }
    return sum;
}

// PV integral of g over [1 - w, 1 + w] for a simple pole at q = 1. The residue
// comes from a cubic through (q - 1) g at 1 +- eps, 1 +- 2 eps; the subtracted
// integrand is integrated outside (1 - eps, 1 + eps) and the gap is filled with
// the derivative of the same cubic.
complex pole_window(const std::function<complex(double)>& g, double width, double eps, int panels) {
    auto r = [&g](double q) { return (q - 1.0) * g(q); };
    const complex rm2 = r(1.0 - 2.0 * eps), rm1 = r(1.0 - eps);
    const complex rp1 = r(1.0 + eps), rp2 = r(1.0 + 2.0 * eps);
    const complex residue = (-rp2 + 4.0 * rp1 + 4.0 * rm1 - rm2) / 6.0;
    const complex slope = (-rp2 + 8.0 * rp1 - 8.0 * rm1 + rm2) / (12.0 * eps);
    auto smooth = [&](double q) { return g(q) - residue / (q - 1.0); };
    return gauss_panels(smooth, 1.0 - width, 1.0 - eps, panels) +
           gauss_panels(smooth, 1.0 + eps, 1.0 + width, panels) + 2.0 * eps * slope;
}

// Shared driver: records each completed level, extrapolates, stops on tolerance.
struct LevelTracker {
    double eta0;
    double tolerance;
    int min_levels;
    PVResult& out;
    std::vector<double> etas{};
    std::vector<complex> values{};

    bool add(int level, complex value) {
        const double eta = regulator(eta0, level);
        etas.push_back(eta);
        values.push_back(value);
        out.regulator_values.emplace_back(eta, value);
        const Extrapolation ex = extrapolate_to_zero(etas, values);
        out.value = ex.value;
        out.extrapolation_error = ex.increment;
        return !(static_cast<int>(values.size()) >= min_levels && ex.increment <= tolerance);
    }
};

}  // namespace

PoleIntegrand PoleIntegrand::for_well(int n, double x, double a, double alpha) {
    if (n < 1) {
        throw DomainError("pole integrand: n must be >= 1");
    }
    if (!(a > 0.0) || !std::isfinite(x)) {
        throw DomainError("pole integrand: need a > 0 and finite x");
    }
    return PoleIntegrand{alpha, n, n * M_PI * x / (2.0 * a)};
}

std::pair<double, double> PoleIntegrand::phases() const {
    const double shift = n * M_PI / 2.0;
    return {theta + shift, theta - shift};
}

PVResult pv_oscillatory(const PoleIntegrand& integrand, double tolerance, const PVOptions& options) {
    const double alpha = integrand.alpha;
    if (!(alpha > 1.0 && alpha < 2.0)) {
        throw DomainError("pv_oscillatory: alpha must lie in (1, 2)");
    }
    if (!(tolerance >= 1e-6)) {
        throw DomainError("pv_oscillatory: tolerance must be >= 1e-6");
    }
    if (integrand.n < 1 || !std::isfinite(integrand.theta)) {
        throw DomainError("pv_oscillatory: need n >= 1 and finite theta");
    }
    const auto [phi_plus, phi_minus] = integrand.phases();
    const double min_phase = std::min(std::abs(phi_plus), std::abs(phi_minus));
    if (min_phase < 1e-3) {
        throw DomainError("pv_oscillatory: a phase vanishes (|x| = a); the tail does not converge");
    }

    // Folded to q > 0: odd n gives J(phi+) + J(phi-), even n gives J(phi+) - J(phi-), with
    // J(phi) = PV integral_0^inf q^alpha cos(phi q) / (q^2 - 1) dq.
    const double sign = integrand.parity() == Parity::Odd ? 1.0 : -1.0;
    auto base = [=](double q) -> complex {
        return std::pow(q, alpha) * (std::cos(phi_plus * q) + sign * std::cos(phi_minus * q)) /
               (q * q - 1.0);
    };

    const double step_cap = std::min(0.05, 0.2 / (1.0 + std::abs(integrand.theta) + integrand.n * M_PI / 2.0));
    const int window_panels = static_cast<int>(std::ceil(0.5 / step_cap));
    const double step = 0.5 / window_panels;
    const double eta0 = std::min(0.2, min_phase / 2.0);
    const double eps = options.excision;

    PVResult out;
    LevelTracker tracker{eta0, tolerance, options.min_levels, out};
    regulated_sweep(base, 0.0, step, 0.5, 1.5, eta0, options.max_levels, [&](int level, complex tail) {
        const double eta = regulator(eta0, level);
        auto g = [&](double q) { return base(q) * std::exp(-eta * q); };
        const complex w1 = pole_window(g, 0.5, eps, window_panels);
        const complex w2 = pole_window(g, 0.5, eps / 2.0, window_panels);
        out.pole_error = std::max(out.pole_error, std::abs(w1 - w2));
        return tracker.add(level, tail + w1);
    });
    out.converged = out.extrapolation_error <= tolerance && out.pole_error <= tolerance;
    return out;
}

double pv_closed_form(int n, double x, double a, Parity parity) {
    if (n < 1) {
        throw DomainError("pv_closed_form: n must be >= 1");
    }
    if (!(a > 0.0)) {
        throw DomainError("pv_closed_form: a must be positive");
    }
    if ((n % 2 == 1) != (parity == Parity::Odd)) {
        throw DomainError("pv_closed_form: parity does not match n");
    }
    const double theta = n * M_PI * x / (2.0 * a);
    // Exact signs: sin(n pi/2) and cos(n pi/2) are 0 or +-1.
    const int r = n % 4;
    if (parity == Parity::Odd) {
        const double s = r == 1 ? 1.0 : -1.0;
        return -M_PI * s * std::cos(theta);
    }
    const double c = r == 0 ? 1.0 : -1.0;
    return -M_PI * c * std::sin(theta);
}

PVResult numeric_kernel_transform(KernelSide side, double alpha, double omega, double tolerance,
                                  int max_levels) {
    const FractionalOrder order(alpha);
    if (!std::isfinite(omega) || omega == 0.0) {
        throw DomainError("numeric_kernel_transform: need finite nonzero w");
    }
    if (!(tolerance > 0.0)) {
        throw DomainError("numeric_kernel_transform: tolerance must be positive");
    }
    // h- at w equals h+ at -w.
    const double w = side == KernelSide::HPlus ? omega : -omega;
    const double inv_gamma = reciprocal_gamma(alpha);
    auto base = [=](double x) { return std::pow(x, alpha - 1.0) * inv_gamma * std::polar(1.0, -w * x); };

    // Head [0, X]: integral x^(alpha-1) exp(-z x) = X^alpha sum (-z X)^k / (k! (alpha + k)),
    // with X short enough that |z X| <= 1.
    const double head_end = std::min(1.0, 1.0 / std::hypot(0.2, w));
    auto head = [=](double eta) {
        const complex z = complex(eta, w) * head_end;
        complex term = 1.0, sum = 0.0;
        for (int k = 0; k < 400; ++k) {
            const complex piece = term / (alpha + k);
            sum += piece;
            if (k > 2 && std::abs(piece) < 1e-18 * std::abs(sum)) {
                break;
            }
            term *= -z / static_cast<double>(k + 1);
        }
        return sum * std::pow(head_end, alpha) * inv_gamma;
    };

    const double step = std::min(0.05, 0.2 / (1.0 + std::abs(w)));
    const double eta0 = std::min(0.2, std::abs(w) / 2.0);
    PVResult out;
    LevelTracker tracker{eta0, tolerance, 4, out};
    regulated_sweep(base, head_end, step, 0.0, 0.0, eta0, max_levels, [&](int level, complex tail) {
        return tracker.add(level, tail + head(regulator(eta0, level)));
    });
    out.converged = out.extrapolation_error <= tolerance;
    return out;
}

}  // namespace rieszwell
