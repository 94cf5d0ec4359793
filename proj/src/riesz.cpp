#include "rieszwell/riesz.hpp"

#include <cmath>

#include "rieszwell/errors.hpp"
#include "rieszwell/gamma.hpp"
#include "rieszwell/onesided.hpp"
#include "rieszwell/product_integration.hpp"

namespace rieszwell {
namespace {

void require_riesz_order(const FractionalOrder& order, const char* what) {
    if (!order.riesz_admissible()) {
        throw DomainError(std::string(what) + ": alpha = " + format_number(order.value()) +
                          " makes cos(alpha pi/2) vanish");
    }
}

void require_two_sided_decay(const GridFunction& f, const RieszOptions& opt) {
    const double peak = f.max_abs();
    if (std::abs(f[0]) > opt.decay_tolerance * peak ||
        std::abs(f[f.size() - 1]) > opt.decay_tolerance * peak) {
        throw DomainError("riesz: f has not decayed at the grid edges");
    }
}

SpectralDensity filtered_multiplier(const GridFunction& f, double alpha, double factor,
                                    const RieszOptions& opt) {
    SpectralDensity F = forward_transform(f, opt.transform);
    const double omega_max = M_PI / f.grid().dx();
    for (std::size_t k = 0; k < F.size(); ++k) {
        const double w = std::abs(F.omega(k));
        const double m = w == 0.0 ? 0.0 : factor * std::pow(w, alpha);
        F.values[k] *= m * exponential_filter(w, omega_max, opt.filter_order, opt.filter_strength);
    }
    return F;
}

GridFunction one_sided_sum(const GridFunction& f, double alpha, DerivativeKind kind,
                           const RieszOptions& opt) {
    OneSidedOptions os;
    os.decay_tolerance = opt.decay_tolerance;
    const GridFunction left = fractional_derivative(f, alpha, OperatorSide::FromLeft, kind, os);
    const GridFunction right = fractional_derivative(f, alpha, OperatorSide::FromRight, kind, os);
    return left.plus(right).scaled(-1.0 / (2.0 * std::cos(alpha * M_PI / 2.0)));
}

GridFunction second_difference(const GridFunction& f, double alpha) {
    const std::size_t n = f.size();
    const double dx = f.grid().dx();
    const PowerKernelMoments mom(2.0 - alpha, n);
    std::vector<double> inner(n);
    for (std::size_t m = 1; m < n; ++m) {
        inner[m] = mom.a(m) + mom.b(m - 1);
    }
    const auto stencil = fd_weights(2, std::vector<double>{-2, -1, 0, 1, 2});
    auto sample = [&f, n](long k) -> complex {
        return (k < 0 || k >= static_cast<long>(n)) ? complex(0.0) : f[static_cast<std::size_t>(k)];
    };
    const double scale = std::pow(dx, 2.0 - alpha);
    const double weight = second_difference_weight(alpha);
    std::vector<complex> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        const long jj = static_cast<long>(j);
        const complex fx = f[j];
        complex f2 = 0.0;
        for (long i = -2; i <= 2; ++i) {
            f2 += stencil[static_cast<std::size_t>(i + 2)] * sample(jj + i);
        }
        f2 /= dx * dx;
        // h(u) = [f(x+u) - 2 f(x) + f(x-u)] / u^2 against u^(1-alpha), h(0) = f''(x).
        const std::size_t span = std::max(j, n - 1 - j);
        complex sum = mom.a(0) * f2;
        for (std::size_t m = 1; m <= span; ++m) {
            const long mm = static_cast<long>(m);
            const double u = static_cast<double>(m) * dx;
            const complex h = (sample(jj + mm) - 2.0 * fx + sample(jj - mm)) / (u * u);
            sum += (m == span ? mom.b(m - 1) : inner[m]) * h;
        }
        // Beyond the grid both neighbours vanish and the integrand is -2 f(x) u^(-1-alpha).
        const double reach = static_cast<double>(span) * dx;
        const complex tail = -2.0 * fx * std::pow(reach, -alpha) / alpha;
        out[j] = weight * (scale * sum + tail);
    }
    return GridFunction(f.grid(), std::move(out));
}

}  // namespace

std::string to_string(RieszRepresentation rep) {
    switch (rep) {
        case RieszRepresentation::Spectral:
            return "spectral";
        case RieszRepresentation::CaputoForm:
            return "caputo";
        case RieszRepresentation::RLForm:
            return "rl";
        case RieszRepresentation::SecondDifference:
            return "second-difference";
    }
    return "unknown";
}

RieszRepresentation parse_representation(const std::string& name) {
    for (auto rep : {RieszRepresentation::Spectral, RieszRepresentation::CaputoForm,
                     RieszRepresentation::RLForm, RieszRepresentation::SecondDifference}) {
        if (to_string(rep) == name) {
            return rep;
        }
    }
    throw DomainError("unknown representation '" + name +
                      "' (expected spectral, caputo, rl or second-difference)");
}

double second_difference_weight(double alpha) {
    return gamma_function(1.0 + alpha) * std::sin(alpha * M_PI / 2.0) / M_PI;
}

GridFunction riesz_potential(const GridFunction& f, double alpha, const RieszOptions& options) {
    const FractionalOrder order(alpha);
    require_riesz_order(order, "riesz_potential");
    require_finite(f.values(), "riesz_potential");
    require_two_sided_decay(f, options);
    OneSidedOptions os;
    os.decay_tolerance = options.decay_tolerance;
    const GridFunction left = fractional_integral(f, alpha, OperatorSide::FromLeft, os);
    const GridFunction right = fractional_integral(f, alpha, OperatorSide::FromRight, os);
    return left.plus(right).scaled(1.0 / (2.0 * std::cos(alpha * M_PI / 2.0)));
}

complex kernel_transform(KernelSide side, double alpha, double omega) {
    const FractionalOrder order(alpha);
    if (!std::isfinite(omega)) {
        throw NonFiniteError("kernel_transform: non-finite frequency");
    }
    if (omega == 0.0) {
        throw DomainError("kernel_transform: w = 0 is a non-integrable singularity");
    }
    // (+-i w)^(-alpha) = |w|^(-alpha) exp(-+ i alpha pi/2 sgn w).
    const double s = (side == KernelSide::HPlus ? 1.0 : -1.0) * (omega > 0.0 ? 1.0 : -1.0);
    return std::polar(std::pow(std::abs(omega), -order.value()), -s * order.value() * M_PI / 2.0);
}

GridFunction riesz_derivative(const GridFunction& f, double alpha, RieszRepresentation rep,
                              const RieszOptions& options) {
    const FractionalOrder order(alpha);
    require_finite(f.values(), "riesz_derivative");
    switch (rep) {
        case RieszRepresentation::Spectral: {
            require_riesz_order(order, "riesz_derivative");
            return inverse_transform(filtered_multiplier(f, alpha, -1.0, options), f.grid());
        }
        case RieszRepresentation::CaputoForm:
        case RieszRepresentation::RLForm: {
            require_riesz_order(order, "riesz_derivative");
            if (order.is_integer()) {
                throw DomainError("riesz_derivative: one-sided forms need non-integer alpha; "
                                  "use the spectral representation");
            }
            require_two_sided_decay(f, options);
            const auto kind = rep == RieszRepresentation::CaputoForm ? DerivativeKind::Caputo
                                                                    : DerivativeKind::RiemannLiouville;
            return one_sided_sum(f, alpha, kind, options);
        }
        case RieszRepresentation::SecondDifference: {
            if (!(alpha < 2.0)) {
                throw DomainError("riesz_derivative: second-difference form needs 0 < alpha < 2");
            }
            require_two_sided_decay(f, options);
            return second_difference(f, alpha);
        }
    }
    throw DomainError("riesz_derivative: unknown representation");
}

GridFunction quantum_riesz(const GridFunction& psi, double alpha, double hbar,
                           const RieszOptions& options) {
    const FractionalOrder order(alpha);
    if (!order.quantum_admissible()) {
        throw DomainError("quantum_riesz: alpha must satisfy 1 < alpha <= 2");
    }
    if (!(hbar > 0.0) || !std::isfinite(hbar)) {
        throw DomainError("quantum_riesz: hbar must be positive");
    }
    require_finite(psi.values(), "quantum_riesz");
    return inverse_transform(filtered_multiplier(psi, alpha, std::pow(hbar, alpha), options),
                             psi.grid());
}

std::vector<complex> quantum_riesz_at(const GridFunction& psi, double alpha, double hbar,
                                      std::span<const double> xs, const RieszOptions& options) {
    const FractionalOrder order(alpha);
    if (!order.quantum_admissible()) {
        throw DomainError("quantum_riesz: alpha must satisfy 1 < alpha <= 2");
    }
    if (!(hbar > 0.0) || !std::isfinite(hbar)) {
        throw DomainError("quantum_riesz: hbar must be positive");
    }
    require_finite(psi.values(), "quantum_riesz");
    return inverse_transform_at(filtered_multiplier(psi, alpha, std::pow(hbar, alpha), options), xs);
}

}  // namespace rieszwell
