#include "rieszwell/onesided.hpp"

#include <cmath>
#include <limits>

#include "rieszwell/errors.hpp"
#include "rieszwell/gamma.hpp"
#include "rieszwell/product_integration.hpp"

namespace rieszwell {
namespace {

double side_sign(OperatorSide side, int n) {
    return (side == OperatorSide::FromRight && n % 2 == 1) ? -1.0 : 1.0;
}

void require_decay(const GridFunction& f, OperatorSide side, const OneSidedOptions& opt) {
    if (opt.terminal != Terminal::Weyl) {
        return;
    }
    const double peak = f.max_abs();
    const complex edge = side == OperatorSide::FromLeft ? f[0] : f[f.size() - 1];
    if (std::abs(edge) > opt.decay_tolerance * peak) {
        throw DomainError(std::string("one-sided operator: f has not decayed at the ") +
                          (side == OperatorSide::FromLeft ? "left" : "right") +
                          " grid edge (Weyl terminal)");
    }
}

std::vector<double> offsets_from(int first, int count) {
    std::vector<double> o(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        o[static_cast<std::size_t>(i)] = first + i;
    }
    return o;
}

complex apply_stencil(const GridFunction& f, std::size_t j, int first, const std::vector<double>& w) {
    complex s = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        s += w[i] * f[static_cast<std::size_t>(static_cast<long>(j) + first + static_cast<long>(i))];
    }
    return s;
}

}  // namespace

std::vector<double> fd_weights(int m, std::span<const double> x) {
    const auto n = static_cast<int>(x.size());
    if (m < 0 || n <= m) {
        throw DomainError("fd_weights: need more points than the derivative order");
    }
    // Fornberg's recursion, evaluation point 0.
    std::vector<std::vector<double>> c(static_cast<std::size_t>(n),
                                       std::vector<double>(static_cast<std::size_t>(m + 1), 0.0));
    double c1 = 1.0;
    double c4 = x[0];
    c[0][0] = 1.0;
    for (int i = 1; i < n; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        const int mn = std::min(i, m);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = x[ui];
        for (int j = 0; j < i; ++j) {
            const auto uj = static_cast<std::size_t>(j);
            const double c3 = x[ui] - x[uj];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k) {
                    const auto uk = static_cast<std::size_t>(k);
                    c[ui][uk] = c1 * (k * c[ui - 1][uk - 1] - c5 * c[ui - 1][uk]) / c2;
                }
                c[ui][0] = -c1 * c5 * c[ui - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k) {
                const auto uk = static_cast<std::size_t>(k);
                c[uj][uk] = (c4 * c[uj][uk] - k * c[uj][uk - 1]) / c3;
            }
            c[uj][0] = c4 * c[uj][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        w[static_cast<std::size_t>(i)] = c[static_cast<std::size_t>(i)][static_cast<std::size_t>(m)];
    }
    return w;
}

int central_half_width(int n) { return (n + 1) / 2 + 1; }

GridFunction classical_derivative(const GridFunction& f, int n, Terminal terminal) {
    if (n < 0) {
        throw DomainError("classical derivative: negative order");
    }
    if (n == 0) {
        return f;
    }
    const int p = central_half_width(n);
    const std::size_t count = f.size();
    const double scale = 1.0 / std::pow(f.grid().dx(), n);
    const auto central = fd_weights(n, offsets_from(-p, 2 * p + 1));

    if (terminal == Terminal::Weyl) {
        if (count < 2 * static_cast<std::size_t>(p) + UniformGrid::min_count) {
            throw DomainError("classical derivative: grid too small for the stencil");
        }
        const std::size_t first = static_cast<std::size_t>(p);
        const std::size_t len = count - 2 * first;
        std::vector<complex> v(len);
        for (std::size_t k = 0; k < len; ++k) {
            v[k] = scale * apply_stencil(f, first + k, -p, central);
        }
        return GridFunction(f.grid().subgrid(first, len), std::move(v));
    }

    const int width = n + 4;
    if (count < static_cast<std::size_t>(std::max(width, 2 * p + 1)) + 2) {
        throw DomainError("classical derivative: grid too small for the stencil");
    }
    std::vector<complex> v(count);
    for (std::size_t j = 0; j < count; ++j) {
        const auto jj = static_cast<long>(j);
        const long last = static_cast<long>(count) - 1;
        if (jj >= p && jj <= last - p) {
            v[j] = scale * apply_stencil(f, j, -p, central);
        } else if (jj < p) {
            const auto w = fd_weights(n, offsets_from(-static_cast<int>(jj), width));
            v[j] = scale * apply_stencil(f, j, -static_cast<int>(jj), w);
        } else {
            const int first = static_cast<int>(last - jj) - width + 1;
            const auto w = fd_weights(n, offsets_from(first, width));
            v[j] = scale * apply_stencil(f, j, first, w);
        }
    }
    return GridFunction(f.grid(), std::move(v));
}

GridFunction fractional_integral(const GridFunction& f, double q, OperatorSide side,
                                 const OneSidedOptions& options) {
    const FractionalOrder order(q);
    require_finite(f.values(), "fractional integral");
    require_decay(f, side, options);
    auto v = side == OperatorSide::FromLeft
                 ? left_power_integral(f.values(), f.grid().dx(), order.value())
                 : right_power_integral(f.values(), f.grid().dx(), order.value());
    return GridFunction(f.grid(), std::move(v));
}

GridFunction fractional_derivative(const GridFunction& f, double q, OperatorSide side,
                                   DerivativeKind kind, const OneSidedOptions& options) {
    const FractionalOrder order(q);
    require_finite(f.values(), "fractional derivative");
    const int n = order.ceiling();
    const double sign = side_sign(side, n);
    if (order.is_integer()) {
        return classical_derivative(f, n, options.terminal).scaled(sign);
    }
    require_decay(f, side, options);
    OneSidedOptions inner = options;
    inner.decay_tolerance = std::numeric_limits<double>::infinity();
    const double nu = n - order.value();
    if (kind == DerivativeKind::RiemannLiouville) {
        const GridFunction g = fractional_integral(f, nu, side, inner);
        return classical_derivative(g, n, options.terminal).scaled(sign);
    }
    const GridFunction d = classical_derivative(f, n, options.terminal);
    return fractional_integral(d, nu, side, inner).scaled(sign);
}

GridFunction caputo_rl_gap(const GridFunction& f, double q, double a_point) {
    const FractionalOrder order(q);
    require_finite(f.values(), "caputo_rl_gap");
    const UniformGrid& g = f.grid();
    if (!std::isfinite(a_point) || a_point < g.x_min() || a_point > g.x_max()) {
        throw DomainError("caputo_rl_gap: terminal must lie inside the grid");
    }
    const std::size_t ia = g.nearest_index(a_point);
    if (std::abs(g.x(ia) - a_point) > 1e-6 * g.dx()) {
        throw DomainError("caputo_rl_gap: terminal must coincide with a grid node");
    }
    const int n = order.ceiling();
    const std::size_t need = static_cast<std::size_t>(n + 3);
    if (ia + need >= f.size() || f.size() - ia - 1 < UniformGrid::min_count) {
        throw DomainError("caputo_rl_gap: too few nodes right of the terminal");
    }
    std::vector<complex> boundary(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        if (k == 0) {
            boundary[0] = f[ia];
            continue;
        }
        const auto w = fd_weights(k, offsets_from(0, k + 4));
        boundary[static_cast<std::size_t>(k)] = apply_stencil(f, ia, 0, w) / std::pow(g.dx(), k);
    }
    const std::size_t len = f.size() - ia - 1;
    std::vector<complex> v(len);
    for (std::size_t j = 0; j < len; ++j) {
        const double s = g.x(ia + 1 + j) - g.x(ia);
        complex sum = 0.0;
        for (int k = 0; k < n; ++k) {
            sum += std::pow(s, k - order.value()) * reciprocal_gamma(k - order.value() + 1.0) *
                   boundary[static_cast<std::size_t>(k)];
        }
        v[j] = sum;
    }
    return GridFunction(g.subgrid(ia + 1, len), std::move(v));
}

}  // namespace rieszwell
