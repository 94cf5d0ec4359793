#include "rieszwell/product_integration.hpp"

#include <algorithm>
#include <cmath>

#include "rieszwell/errors.hpp"
#include "rieszwell/gamma.hpp"
#include "rieszwell/quadrature.hpp"

namespace rieszwell {

PowerKernelMoments::PowerKernelMoments(double q, std::size_t cells)
    : q_(q), a_(cells), b_(cells) {
    if (!(q > 0.0) || !std::isfinite(q)) {
        throw DomainError("product integration: kernel order must be positive");
    }
    static const GaussRule rule = gauss_legendre(12);
    if (cells > 0) {
        a_[0] = 1.0 / (q * (q + 1.0));
        b_[0] = 1.0 / (q + 1.0);
    }
    // Closed forms cancel badly for large m; Gauss-Legendre is exact to rounding
    // because the integrand is analytic well beyond the cell.
    for (std::size_t m = 1; m < cells; ++m) {
        double sa = 0.0;
        double sb = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const double t = 0.5 * (rule.nodes[i] + 1.0);
            const double k = 0.5 * rule.weights[i] * std::pow(static_cast<double>(m) + t, q - 1.0);
            sa += k * (1.0 - t);
            sb += k * t;
        }
        a_[m] = sa;
        b_[m] = sb;
    }
}

double PowerKernelMoments::node_weight(std::size_t m, std::size_t span) const noexcept {
    if (span == 0) {
        return 0.0;
    }
    if (m == 0) {
        return a_[0];
    }
    if (m == span) {
        return b_[m - 1];
    }
    return a_[m] + b_[m - 1];
}

std::vector<std::complex<double>> left_power_integral(std::span<const std::complex<double>> f,
                                                      double dx, double q) {
    const std::size_t n = f.size();
    std::vector<std::complex<double>> out(n);
    if (n < 2) {
        return out;
    }
    const PowerKernelMoments mom(q, n - 1);
    const double scale = std::pow(dx, q) / gamma_function(q);
    std::vector<double> inner(n - 1);
    for (std::size_t m = 1; m + 1 < n; ++m) {
        inner[m] = mom.a(m) + mom.b(m - 1);
    }
    for (std::size_t j = 1; j < n; ++j) {
        std::complex<double> s = mom.a(0) * f[j];
        for (std::size_t m = 1; m < j; ++m) {
            s += inner[m] * f[j - m];
        }
        s += mom.b(j - 1) * f[0];
        out[j] = scale * s;
    }
    return out;
}

std::vector<std::complex<double>> right_power_integral(std::span<const std::complex<double>> f,
                                                       double dx, double q) {
    std::vector<std::complex<double>> reversed(f.rbegin(), f.rend());
    auto out = left_power_integral(reversed, dx, q);
    std::reverse(out.begin(), out.end());
    return out;
}

}  // namespace rieszwell
