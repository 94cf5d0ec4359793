#include "rieszwell/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>

#include "rieszwell/errors.hpp"

namespace rieszwell {
namespace {

constexpr std::array<double, 8> kronrod_x = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kronrod_w = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd-indexed Kronrod nodes 1, 3, 5, 7.
constexpr std::array<double, 4> gauss7_w = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T>
struct Segment {
    double a;
    double b;
    T value;
    double error;
};

template <class T>
Segment<T> gk15(const std::function<T(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const T fc = f(c);
    T kron = kronrod_w[7] * fc;
    T gauss = gauss7_w[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = h * kronrod_x[static_cast<std::size_t>(i)];
        const T s = f(c - dx) + f(c + dx);
        kron += kronrod_w[static_cast<std::size_t>(i)] * s;
        if (i % 2 == 1) {
            gauss += gauss7_w[static_cast<std::size_t>(i / 2)] * s;
        }
    }
    kron *= h;
    gauss *= h;
    return {a, b, kron, std::abs(kron - gauss)};
}

template <class T>
QuadResult<T> adaptive(const std::function<T(double)>& f, double a, double b,
                       const AdaptiveOptions& opt) {
    if (!std::isfinite(a) || !std::isfinite(b)) {
        throw DomainError("integrate: non-finite limits");
    }
    if (a == b) {
        return {T{}, 0.0, true};
    }
    auto worse = [](const Segment<T>& l, const Segment<T>& r) {
        if (l.error != r.error) {
            return l.error < r.error;
        }
        return l.a > r.a;
    };
    std::priority_queue<Segment<T>, std::vector<Segment<T>>, decltype(worse)> queue(worse);
    Segment<T> first = gk15(f, a, b);
    T total = first.value;
    double error = first.error;
    queue.push(first);
    int intervals = 1;
    while (error > std::max(opt.abs_tol, opt.rel_tol * std::abs(total)) &&
           intervals < opt.max_intervals) {
        const Segment<T> worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            queue.push(worst);
            break;
        }
        const Segment<T> left = gk15(f, worst.a, mid);
        const Segment<T> right = gk15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
        ++intervals;
    }
    // Re-sum in a fixed order so the result does not depend on accumulated rounding.
    std::vector<Segment<T>> segments;
    segments.reserve(queue.size());
    while (!queue.empty()) {
        segments.push_back(queue.top());
        queue.pop();
    }
    std::sort(segments.begin(), segments.end(),
              [](const Segment<T>& l, const Segment<T>& r) { return l.a < r.a; });
    QuadResult<T> out;
    out.error = 0.0;
    for (const auto& s : segments) {
        out.value += s.value;
        out.error += s.error;
    }
    out.converged = out.error <= std::max(opt.abs_tol, opt.rel_tol * std::abs(out.value));
    return out;
}

template <class T>
QuadResult<T> adaptive_infinite(const std::function<T(double)>& f, double a,
                                const AdaptiveOptions& opt) {
    const std::function<T(double)> mapped = [&f, a](double t) -> T {
        const double u = 1.0 - t;
        return f(a + t / u) / (u * u);
    };
    return adaptive(mapped, 0.0, 1.0, opt);
}

}  // namespace

GaussRule gauss_legendre(int n) {
    if (n < 1) {
        throw DomainError("gauss_legendre: n must be positive");
    }
    GaussRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) {
                p0 = 1.0;
                p1 = x;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double step = p1 / dp;
            x -= step;
            if (std::abs(step) < 1e-16) {
                break;
            }
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        const auto lo = static_cast<std::size_t>(i);
        const auto hi = static_cast<std::size_t>(n - 1 - i);
        rule.nodes[lo] = -x;
        rule.nodes[hi] = x;
        rule.weights[lo] = w;
        rule.weights[hi] = w;
    }
    if (n % 2 == 1) {
        rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
    }
    return rule;
}

QuadResult<double> integrate(const std::function<double(double)>& f, double a, double b,
                             const AdaptiveOptions& options) {
    if (a <= b) {
        return adaptive(f, a, b, options);
    }
    auto r = adaptive(f, b, a, options);
    r.value = -r.value;
    return r;
}

QuadResult<std::complex<double>> integrate_complex(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    const AdaptiveOptions& options) {
    if (a <= b) {
        return adaptive(f, a, b, options);
    }
    auto r = adaptive(f, b, a, options);
    r.value = -r.value;
    return r;
}

QuadResult<double> integrate_to_infinity(const std::function<double(double)>& f, double a,
                                         const AdaptiveOptions& options) {
    return adaptive_infinite(f, a, options);
}

QuadResult<std::complex<double>> integrate_complex_to_infinity(
    const std::function<std::complex<double>(double)>& f, double a,
    const AdaptiveOptions& options) {
    return adaptive_infinite(f, a, options);
}

Extrapolation extrapolate_to_zero(std::span<const double> h,
                                  std::span<const std::complex<double>> v) {
    if (h.size() != v.size() || h.empty()) {
        throw DomainError("extrapolate_to_zero: need matching, non-empty samples");
    }
    std::complex<double> previous = v[0];
    Extrapolation out{v[0], 0.0};
    // Full Neville tableau on the first k+1 samples; q[0] ends as P_{0..k}(0).
    for (std::size_t k = 1; k < h.size(); ++k) {
        std::vector<std::complex<double>> q(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k + 1));
        for (std::size_t m = 1; m <= k; ++m) {
            for (std::size_t i = 0; i + m <= k; ++i) {
                q[i] = (-h[i + m] * q[i] + h[i] * q[i + 1]) / (h[i] - h[i + m]);
            }
        }
        out.value = q[0];
        out.increment = std::abs(q[0] - previous);
        previous = q[0];
    }
    return out;
}

}  // namespace rieszwell
