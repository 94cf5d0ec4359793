#include "rieszwell/well.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "rieszwell/errors.hpp"
#include "rieszwell/gamma.hpp"
#include "rieszwell/quadrature.hpp"
#include "rieszwell/riesz.hpp"

namespace rieszwell {
namespace {

constexpr double kWallMargin = 0.02;
constexpr double kNumericReach = 0.95;

// n pi x / 2a, computed the same way everywhere so that the closed-form
// reconstruction reproduces eigenfunction() bit for bit.
double phase(int n, double x, double a) { return n * M_PI * x / (2.0 * a); }

// sin(n pi/2) for odd n, cos(n pi/2) for even n: always +-1.
double parity_sign(int n) {
    const int r = n % 4;
    return (r == 1 || r == 0) ? 1.0 : -1.0;
}

double require_alpha(double alpha, const char* what) {
    const FractionalOrder order(alpha);
    if (!order.quantum_admissible()) {
        throw DomainError(std::string(what) + ": alpha must satisfy 1 < alpha <= 2");
    }
    return alpha;
}

double sinc(double t) { return std::abs(t) < 1e-8 ? 1.0 - t * t / 6.0 : std::sin(t) / t; }

AdaptiveOptions tight() {
    AdaptiveOptions o;
    o.abs_tol = 1e-15;
    o.rel_tol = 1e-12;
    o.max_intervals = 8000;
    return o;
}

double checked(const QuadResult<double>& r, const char* what) {
    if (!r.converged) {
        throw ConvergenceError(std::string(what) + ": adaptive quadrature did not converge");
    }
    return r.value;
}

double exterior_integral(const WellState& s, double alpha, double x) {
    const double a = s.params.a;
    // Positive base |x - x'| on either side of the well.
    auto f = [&](double xp) { return eigenfunction(s, xp) * std::pow(std::abs(x - xp), -alpha - 1.0); };
    // Grade the panels geometrically toward the wall nearest to x.
    const double wall = x > 0.0 ? a : -a;
    const double dir = x > 0.0 ? -1.0 : 1.0;
    std::vector<double> cuts = {-a, a};
    for (double offset = std::abs(x - wall); offset < 2.0 * a; offset *= 4.0) {
        cuts.push_back(wall + dir * offset);
    }
    std::sort(cuts.begin(), cuts.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        total += checked(integrate(f, cuts[i], cuts[i + 1], tight()), "controversy_derivative");
    }
    return total;
}

// Zero-extended second-difference form at an interior point.
double interior_value(const WellState& s, double alpha, double x) {
    const double a = s.params.a;
    const double k = s.n * M_PI / (2.0 * a);
    const double psi = eigenfunction(s, x);
    const double u1 = a - std::abs(x), u2 = a + std::abs(x);

    // 0 < u < u1: psi(x+u) - 2 psi(x) + psi(x-u) = -4 psi(x) sin^2(k u / 2) exactly.
    // With u = t^m, m = 1/(2 - alpha), the weight u^(-1-alpha) du becomes m u^(-2) dt.
    const double m = 1.0 / (2.0 - alpha);
    auto near = [&](double t) {
        const double u = std::pow(t, m);
        const double r = 0.5 * k * sinc(0.5 * k * u);
        return -4.0 * psi * m * r * r;
    };
    const double p1 = checked(integrate(near, 0.0, std::pow(u1, 2.0 - alpha), tight()), "controversy_derivative");

    auto mid = [&](double u) {
        return (eigenfunction(s, x + u) - 2.0 * psi + eigenfunction(s, x - u)) * std::pow(u, -alpha - 1.0);
    };
    const double p2 = u2 > u1 ? checked(integrate(mid, u1, u2, tight()), "controversy_derivative") : 0.0;
    // Beyond u2 both neighbours are outside the well.
    const double p3 = -2.0 * psi * std::pow(u2, -alpha) / alpha;
    return second_difference_weight(alpha) * (p1 + p2 + p3);
}

}  // namespace

void WellParams::validate() const {
    auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
    if (!positive(hbar) || !positive(d_alpha) || !positive(a)) {
        throw DomainError("well: hbar, d_alpha and a must be positive");
    }
    if (!(amplitude >= 0.0) || !std::isfinite(amplitude)) {
        throw DomainError("well: amplitude must be finite and non-negative");
    }
}

WellParams WellParams::normalized(double a) {
    WellParams p;
    p.a = a;
    p.amplitude = 1.0 / std::sqrt(a);
    p.validate();
    return p;
}

WellState::WellState(int n_, WellParams params_) : n(n_), params(params_) {
    if (n < 1) {
        throw DomainError("well: quantum number n must be >= 1");
    }
    params.validate();
}

double WellState::pole_momentum() const { return n * M_PI * params.hbar / (2.0 * params.a); }

Region region_of(double x, double a) {
    if (x <= -a) {
        return Region::LeftExterior;
    }
    return x >= a ? Region::RightExterior : Region::Interior;
}

std::string to_string(Region region) {
    switch (region) {
        case Region::LeftExterior:
            return "left-exterior";
        case Region::Interior:
            return "interior";
        case Region::RightExterior:
            return "right-exterior";
    }
    return "unknown";
}

Region parse_region(const std::string& name) {
    for (auto r : {Region::LeftExterior, Region::Interior, Region::RightExterior}) {
        if (to_string(r) == name) {
            return r;
        }
    }
    throw DomainError("unknown region '" + name + "' (expected left-exterior, interior or right-exterior)");
}

std::string to_string(ReconstructMethod method) {
    return method == ReconstructMethod::AnalyticPV ? "analytic-pv" : "numeric-pv";
}

ReconstructMethod parse_method(const std::string& name) {
    if (name == "analytic-pv") {
        return ReconstructMethod::AnalyticPV;
    }
    if (name == "numeric-pv") {
        return ReconstructMethod::NumericPV;
    }
    throw DomainError("unknown method '" + name + "' (expected analytic-pv or numeric-pv)");
}

double eigenfunction(const WellState& state, double x) {
    const double a = state.params.a;
    if (!(std::abs(x) < a)) {
        return 0.0;
    }
    const double t = phase(state.n, x, a);
    return state.params.amplitude * (state.n % 2 == 1 ? std::cos(t) : std::sin(t));
}

double eigenfunction_shifted_form(const WellState& state, double x) {
    const double a = state.params.a;
    if (!(std::abs(x) < a)) {
        return 0.0;
    }
    return state.params.amplitude * std::sin(phase(state.n, x + a, a));
}

double eigenvalue(const WellState& state, double alpha) {
    require_alpha(alpha, "eigenvalue");
    return state.params.d_alpha * std::pow(state.pole_momentum(), alpha);
}

complex momentum_wavefunction(const WellState& state, double p) {
    const auto& w = state.params;
    const double P = state.pole_momentum();
    const double s = parity_sign(state.n);
    const double scale = w.amplitude * state.n * M_PI * w.hbar * w.hbar / w.a;
    const bool odd = state.n % 2 == 1;
    // shape = cos(pa/hbar)/(p^2 - P^2) (odd) or sin(pa/hbar)/(p^2 - P^2) (even).
    double shape = 0.0;
    const double dp = p - P, dm = p + P;
    if (std::abs(dp) < 1e-4) {
        // p = P + d: cos -> -s sin(d a/hbar), sin -> s sin(d a/hbar); p^2 - P^2 = d (2P + d).
        const double t = dp * w.a / w.hbar;
        shape = (odd ? -s : s) * (w.a / w.hbar) * sinc(t) / (2.0 * P + dp);
    } else if (std::abs(dm) < 1e-4) {
        // p = -P + d: both become s sin(d a/hbar); p^2 - P^2 = d (d - 2P).
        const double t = dm * w.a / w.hbar;
        shape = s * (w.a / w.hbar) * sinc(t) / (dm - 2.0 * P);
    } else {
        const double t = p * w.a / w.hbar;
        shape = (odd ? std::cos(t) : std::sin(t)) / (dp * dm);
    }
    return odd ? complex(-scale * s * shape, 0.0) : complex(0.0, -scale * s * shape);
}

Reconstruction reconstruct(const WellState& state, double alpha, double x, ReconstructMethod method,
                           double tolerance) {
    require_alpha(alpha, "reconstruct");
    const auto& w = state.params;
    if (!std::isfinite(x) || std::abs(x) > w.a) {
        throw DomainError("reconstruct: x must lie inside the well");
    }
    const double energy = eigenvalue(state, alpha);
    // D (n pi hbar / 2a)^alpha / E: identically 1, kept so the alpha dependence cancels visibly.
    const double ratio = w.d_alpha * std::pow(state.pole_momentum(), alpha) / energy;
    const double s = parity_sign(state.n);

    Reconstruction out;
    if (method == ReconstructMethod::AnalyticPV) {
        out.pole_integral = pv_closed_form(state.n, x, w.a, state.parity());
        out.value = w.amplitude * ratio * (-s * out.pole_integral / M_PI);
        return out;
    }
    if (std::abs(x) > kNumericReach * w.a) {
        throw DomainError("reconstruct: numeric principal value needs |x| <= 0.95a");
    }
    if (alpha == 2.0) {
        // The pole engine needs alpha < 2; apply the operator spectrally instead.
        const auto grid = UniformGrid::from_bounds(-4.0 * w.a, 4.0 * w.a, 4097);
        const auto psi = GridFunction::sample_real(grid, [&](double y) { return eigenfunction(state, y); });
        const double xs[] = {x};
        const complex v = quantum_riesz_at(psi, alpha, w.hbar, xs)[0];
        out.value = w.d_alpha * v.real() / energy;
        out.pole_integral = w.amplitude == 0.0 ? 0.0 : -s * M_PI * out.value / w.amplitude;
        return out;
    }
    const PVResult pv = pv_oscillatory(PoleIntegrand::for_well(state.n, x, w.a, alpha), tolerance);
    if (!pv.converged) {
        throw ConvergenceError("reconstruct: principal value did not converge (extrapolation error " +
                               format_number(pv.extrapolation_error) + ", pole error " +
                               format_number(pv.pole_error) + ")");
    }
    out.pole_integral = pv.value.real();
    out.pv_error = pv.extrapolation_error;
    out.value = w.amplitude * ratio * (-s * out.pole_integral / M_PI);
    return out;
}

ResidualReport schrodinger_residual(const WellState& state, double alpha) {
    require_alpha(alpha, "schrodinger_residual");
    const auto& w = state.params;
    const auto grid = UniformGrid::from_bounds(-4.0 * w.a, 4.0 * w.a, 4097);
    const auto psi = GridFunction::sample_real(grid, [&](double x) { return eigenfunction(state, x); });
    const double energy = eigenvalue(state, alpha);
    GridFunction residual = quantum_riesz(psi, alpha, w.hbar).scaled(w.d_alpha).plus(psi, -energy);

    ResidualReport out{std::move(residual), {}, {}, 0.0, 0.0};
    out.interior.resize(grid.count());
    out.exterior.resize(grid.count());
    for (std::size_t k = 0; k < grid.count(); ++k) {
        const double ax = std::abs(grid.x(k));
        out.interior[k] = ax <= kNumericReach * w.a;
        out.exterior[k] = ax >= (2.0 - kNumericReach) * w.a;
        const double r = std::abs(out.residual[k]);
        if (out.interior[k]) {
            out.interior_max = std::max(out.interior_max, r);
        }
        if (out.exterior[k]) {
            out.exterior_max = std::max(out.exterior_max, r);
        }
    }
    return out;
}

double controversy_derivative(const WellState& state, double alpha, double x, Region region) {
    const FractionalOrder order(alpha);
    if (!(alpha > 1.0 && alpha < 2.0)) {
        throw DomainError("controversy_derivative: alpha must lie in (1, 2)");
    }
    const double a = state.params.a;
    if (!std::isfinite(x) || region_of(x, a) != region) {
        throw DomainError("controversy_derivative: x = " + format_number(x) + " is not in region " +
                          to_string(region));
    }
    if (region == Region::Interior) {
        if (std::abs(x) >= (1.0 - kWallMargin) * a) {
            throw DomainError("controversy_derivative: x within 2% of a wall, where the segmented integrals diverge");
        }
        return interior_value(state, alpha, x);
    }
    if (std::abs(x) <= (1.0 + kWallMargin) * a) {
        throw DomainError("controversy_derivative: x within 2% of a wall, where the segmented integrals diverge");
    }
    const double prefactor = -1.0 / (2.0 * gamma_function(-alpha) * std::cos(alpha * M_PI / 2.0));
    return prefactor * exterior_integral(state, alpha, x);
}

complex stationary_state(const WellState& state, double alpha, double x, double t) {
    const double energy = eigenvalue(state, alpha);
    return std::polar(1.0, -energy * t / state.params.hbar) * eigenfunction(state, x);
}

std::vector<SweepRow> consistency_sweep(const WellParams& params, const std::vector<int>& ns,
                                        const std::vector<double>& alphas, int points, double span,
                                        ReconstructMethod method, double tolerance) {
    if (points < 1) {
        throw DomainError("consistency_sweep: need at least one point");
    }
    if (!(span >= 0.0 && span < 1.0)) {
        throw DomainError("consistency_sweep: span must lie in [0, 1)");
    }
    std::vector<SweepRow> rows;
    for (int n : ns) {
        const WellState state(n, params);
        for (double alpha : alphas) {
            for (int j = 0; j < points; ++j) {
                const double x = points == 1 ? 0.0
                                             : params.a * span * (-1.0 + 2.0 * j / static_cast<double>(points - 1));
                const double expected = eigenfunction(state, x);
                const double got = reconstruct(state, alpha, x, method, tolerance).value;
                rows.push_back({n, alpha, x, expected, got, std::abs(got - expected), method});
            }
        }
    }
    return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << "n,alpha,x,expected,reconstructed,abs_error,method\n";
    for (const auto& r : rows) {
        out << r.n << ',' << format_number(r.alpha) << ',' << format_number(r.x) << ','
            << format_number(r.expected) << ',' << format_number(r.reconstructed) << ','
            << format_number(r.abs_error) << ',' << to_string(r.method) << '\n';
    }
}

}  // namespace rieszwell
