#include <doctest.h>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_expint.h>
#include <gsl/gsl_sf_gamma.h>

#include <cmath>
#include <sstream>

#include "rieszwell/errors.hpp"
#include "rieszwell/gamma.hpp"
#include "rieszwell/grid.hpp"
#include "rieszwell/quadrature.hpp"
#include "rieszwell/transform.hpp"

using namespace rieszwell;

namespace {

GridFunction gaussian(const UniformGrid& g) {
    return GridFunction::sample_real(g, [](double x) { return std::exp(-x * x); });
}

double psi1(double x) { return std::abs(x) < 1.0 ? std::cos(M_PI * x / 2.0) : 0.0; }

}  // namespace

TEST_CASE("uniform grid invariants") {
    CHECK_THROWS_AS(UniformGrid(0.0, 0.0, 16), DomainError);
    CHECK_THROWS_AS(UniformGrid(0.0, -1.0, 16), DomainError);
    CHECK_THROWS_AS(UniformGrid(0.0, 0.1, 7), DomainError);
    CHECK_THROWS_AS(UniformGrid(NAN, 0.1, 16), NonFiniteError);

    const UniformGrid g(-1.0, 0.25, 9);
    CHECK(g.x(0) == -1.0);
    CHECK(g.x(8) == 1.0);
    CHECK(g.nearest_index(0.1) == 4);
    CHECK(g.nearest_index(-50.0) == 0);
    CHECK(g.nearest_index(50.0) == 8);

    const auto b = UniformGrid::from_bounds(-2.0, 2.0, 17);
    CHECK(b.dx() == 0.25);
    const auto s = UniformGrid::with_spacing(-4.0, 4.0, 1.0 / 512);
    CHECK(s.count() == 4097);
    CHECK(s.x_max() == 4.0);
}

TEST_CASE("grid function invariants") {
    const UniformGrid g(0.0, 1.0, 12);
    CHECK_THROWS_AS(GridFunction(g, std::vector<complex>(7)), DomainError);
    std::vector<complex> bad(12);
    bad[3] = complex(0.0, INFINITY);
    CHECK_THROWS_AS(GridFunction(g, bad), NonFiniteError);

    const auto f = GridFunction::sample_real(g, [](double x) { return x; });
    const auto h = f.plus(f, -2.0);
    CHECK(h[5] == complex(-5.0));
    CHECK(f.restrict(2, 9).x(0) == 2.0);
    CHECK_THROWS_AS(f.restrict(2, 11), DomainError);
}

TEST_CASE("csv round trip and validation") {
    const auto g = UniformGrid::from_bounds(-3.0, 3.0, 65);
    const auto f = GridFunction::sample(g, [](double x) { return complex(std::exp(-x * x), x); });
    std::stringstream ss;
    write_csv(f, ss);
    const std::string text = ss.str();
    CHECK(text.rfind("x,re,im\n", 0) == 0);
    const GridFunction back = read_csv(ss);
    REQUIRE(back.size() == f.size());
    for (std::size_t k = 0; k < f.size(); ++k) {
        CHECK(std::abs(back[k] - f[k]) <= 1e-12);
    }
    CHECK(std::abs(back.grid().dx() - g.dx()) < 1e-12);

    std::istringstream wrong_header("x,y\n");
    CHECK_THROWS_AS(read_csv(wrong_header), DomainError);
    std::istringstream nonuniform("x,re,im\n0,0,0\n1,0,0\n2,0,0\n3,0,0\n4,0,0\n5,0,0\n6,0,0\n9,0,0\n");
    CHECK_THROWS_AS(read_csv(nonuniform), DomainError);
    std::istringstream junk("x,re,im\n0,a,0\n");
    CHECK_THROWS_AS(read_csv(junk), DomainError);
}

TEST_CASE("gamma known values") {
    CHECK(gamma_function(0.5) == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-14));
    CHECK(gamma_function(5.0) == 24.0);
    CHECK(gamma_function(-1.5) == doctest::Approx(4.0 * std::sqrt(M_PI) / 3.0).epsilon(1e-13));
    CHECK_THROWS_AS(gamma_function(0.0), GammaPoleError);
    CHECK_THROWS_AS(gamma_function(-3.0), GammaPoleError);
    CHECK(reciprocal_gamma(-2.0) == 0.0);
    try {
        gamma_function(-4.0);
    } catch (const GammaPoleError& e) {
        CHECK(e.where() == -4.0);
    }
}

TEST_CASE("gamma relative accuracy on [-10, 10] against GSL") {
    double worst = 0.0;
    for (int i = -100000; i <= 100000; ++i) {
        const double x = i * 1e-4 + 3.7e-6;
        const double ref = gsl_sf_gamma(x);
        worst = std::max(worst, std::abs(gamma_function(x) - ref) / std::abs(ref));
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("complex gamma against GSL") {
    gsl_set_error_handler_off();
    for (double re : {-4.3, -0.7, 0.2, 1.5, 3.9, 8.1}) {
        for (double im : {-2.5, -0.3, 0.4, 1.7}) {
            gsl_sf_result lnr, arg;
            gsl_sf_lngamma_complex_e(re, im, &lnr, &arg);
            const complex ref = std::polar(std::exp(lnr.val), arg.val);
            const complex got = gamma_function(complex(re, im));
            CHECK(std::abs(got - ref) / std::abs(ref) <= 1e-12);
        }
    }
}

TEST_CASE("forward transform of a Gaussian") {
    const auto g = UniformGrid::from_bounds(-12.0, 12.0, 2048);
    const auto F = forward_transform(gaussian(g));
    CHECK_FALSE(F.truncation_warning);
    CHECK(F.size() >= 4 * g.count());
    CHECK(F.omega(0) <= -M_PI / g.dx());
    CHECK(F.omega(F.size() - 1) >= M_PI / g.dx() - F.d_omega);
    double worst = 0.0;
    for (std::size_t k = 0; k < F.size(); ++k) {
        const double w = F.omega(k);
        worst = std::max(worst, std::abs(F.values[k] - std::sqrt(M_PI) * std::exp(-w * w / 4.0)));
    }
    CHECK(worst <= 1e-8);
}

TEST_CASE("forward transform of zero and truncation flag") {
    const auto g = UniformGrid::from_bounds(-1.0, 1.0, 32);
    const auto F = forward_transform(GridFunction(g));
    CHECK(F.max_abs() == 0.0);
    CHECK_FALSE(F.truncation_warning);
    const auto wide = forward_transform(GridFunction::sample_real(g, [](double) { return 1.0; }));
    CHECK(wide.truncation_warning);
}

TEST_CASE("forward transform of the ground state matches its closed form") {
    const auto g = UniformGrid::with_spacing(-4.0, 4.0, 1.0 / 1024);
    const auto F = forward_transform(GridFunction::sample_real(g, psi1));
    double worst = 0.0;
    for (std::size_t k = 0; k < F.size(); ++k) {
        const double w = F.omega(k);
        const double d = w * w - M_PI * M_PI / 4.0;
        const double exact = std::abs(d) < 1e-9 ? 1.0 : -M_PI * std::cos(w) / d;
        worst = std::max(worst, std::abs(F.values[k] - exact));
    }
    CHECK(worst <= 1e-6);
}

TEST_CASE("inverse transform: round trip and analytic pair") {
    const auto g = UniformGrid::from_bounds(-12.0, 12.0, 2048);
    const auto f = gaussian(g);
    const auto back = inverse_transform(forward_transform(f), g);
    double worst = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) {
        worst = std::max(worst, std::abs(back[k] - f[k]));
    }
    CHECK(worst <= 1e-8 * f.max_abs());

    SpectralDensity F;
    const std::size_t m = 8192;
    F.d_omega = 2.0 * M_PI / (m * g.dx());
    F.omega_min = -static_cast<double>(m / 2) * F.d_omega;
    F.values.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
        F.values[k] = std::sqrt(M_PI) * std::exp(-F.omega(k) * F.omega(k) / 4.0);
    }
    const auto pair = inverse_transform(F, g);
    worst = 0.0;
    for (std::size_t k = 0; k < g.count(); ++k) {
        worst = std::max(worst, std::abs(pair[k] - f[k]));
    }
    CHECK(worst <= 1e-8);

    const std::vector<double> xs = {0.0, 0.5, -1.25};
    const auto direct = inverse_transform_at(F, xs);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        CHECK(std::abs(direct[i] - std::exp(-xs[i] * xs[i])) <= 1e-10);
    }

    SpectralDensity zero = F;
    std::fill(zero.values.begin(), zero.values.end(), complex(0.0));
    CHECK(inverse_transform(zero, g).max_abs() == 0.0);

    const auto other = UniformGrid(-12.0, 2.0 * g.dx(), 100);
    CHECK_THROWS_AS(inverse_transform(F, other), DomainError);
    zero.values[3] = complex(NAN, 0.0);
    CHECK_THROWS_AS(inverse_transform(zero, g), NonFiniteError);
}

TEST_CASE("transform properties: linearity, parity, determinism") {
    const auto g = UniformGrid::from_bounds(-10.0, 10.0, 1001);
    const auto f = gaussian(g);
    const auto h = GridFunction::sample_real(g, [](double x) { return x * std::exp(-x * x / 2.0); });
    const complex a(2.0, -1.0), b(0.5, 3.0);
    const auto Fl = forward_transform(f.scaled(a).plus(h, b));
    const auto Ff = forward_transform(f);
    const auto Fh = forward_transform(h);
    double worst = 0.0, scale = 0.0;
    for (std::size_t k = 0; k < Fl.size(); ++k) {
        worst = std::max(worst, std::abs(Fl.values[k] - a * Ff.values[k] - b * Fh.values[k]));
        scale = std::max(scale, std::abs(Fl.values[k]));
    }
    CHECK(worst <= 1e-12 * scale);

    // Symmetric grid about 0: w_k and w_{M-k} are mirror frequencies.
    const std::size_t m = Ff.size();
    double even_err = 0.0, odd_err = 0.0;
    for (std::size_t k = 1; k < m; ++k) {
        even_err = std::max({even_err, std::abs(Ff.values[k].imag()),
                             std::abs(Ff.values[k] - Ff.values[m - k])});
        odd_err = std::max({odd_err, std::abs(Fh.values[k].real()),
                            std::abs(Fh.values[k] + Fh.values[m - k])});
    }
    CHECK(even_err <= 1e-10);
    CHECK(odd_err <= 1e-10);

    const auto again = forward_transform(f);
    CHECK(again.values == Ff.values);
}

TEST_CASE("power tail transform against exponential-integral oracle") {
    gsl_set_error_handler_off();
    for (double L : {0.5, 3.0, 40.0}) {
        for (double w : {0.01, 0.3, 1.0, 6.0}) {
            // integral_L^inf e^{-iws}/s^2 ds = e^{-iwL}/L - i w E1(i w L),
            // E1(iy) = -Ci(y) + i (Si(y) - pi/2).
            const double y = w * L;
            const complex e1(-gsl_sf_Ci(y), gsl_sf_Si(y) - M_PI / 2.0);
            const complex ref = std::polar(1.0, -y) / L - complex(0.0, w) * e1;
            const complex got = power_tail_transform(2.0, L, w);
            CHECK(std::abs(got - ref) <= 1e-10 * std::max(1.0, std::abs(ref)));
            CHECK(std::abs(power_tail_transform(2.0, L, -w) - std::conj(ref)) <=
                  1e-10 * std::max(1.0, std::abs(ref)));
        }
    }
    CHECK(power_tail_transform(2.5, 4.0, 0.0).real() == doctest::Approx(std::pow(4.0, -1.5) / 1.5));
    CHECK_THROWS_AS(power_tail_transform(0.5, 4.0, 0.0), DomainError);
}

TEST_CASE("tail completion recovers the transform of a Lorentzian") {
    const auto g = UniformGrid::with_spacing(-50.0, 50.0, 1.0 / 128);
    const auto f = GridFunction::sample_real(g, [](double x) { return 1.0 / (1.0 + x * x); });
    const auto core = forward_transform(f);
    CHECK(core.truncation_warning);
    const auto full = complete_power_tails(f, core, 2.0, 0.0, 5.0);
    double worst_core = 0.0, worst_full = 0.0;
    for (std::size_t k = 0; k < full.size(); ++k) {
        const double w = full.omega(k);
        if (std::abs(w) > 5.0) {
            continue;
        }
        const double exact = M_PI * std::exp(-std::abs(w));
        worst_core = std::max(worst_core, std::abs(core.values[k] - exact));
        worst_full = std::max(worst_full, std::abs(full.values[k] - exact));
    }
    CHECK(worst_core > 1e-3);
    CHECK(worst_full <= 1e-7);
}

TEST_CASE("adaptive quadrature and extrapolation utilities") {
    const auto r = integrate([](double x) { return std::exp(-x * x); }, -1.0, 2.0);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(std::sqrt(M_PI) / 2.0 * (std::erf(2.0) + std::erf(1.0))).epsilon(1e-13));
    const auto inf = integrate_to_infinity([](double x) { return 1.0 / (1.0 + x * x); }, 0.0);
    CHECK(inf.value == doctest::Approx(M_PI / 2.0).epsilon(1e-12));
    const auto reversed = integrate([](double x) { return x; }, 1.0, 0.0);
    CHECK(reversed.value == doctest::Approx(-0.5));
    const auto rule = gauss_legendre(12);
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        s += rule.weights[i] * std::pow(rule.nodes[i], 22);
    }
    CHECK(s == doctest::Approx(2.0 / 23.0).epsilon(1e-14));

    std::vector<double> h = {0.2, 0.1, 0.05, 0.025};
    std::vector<complex> v;
    for (double e : h) {
        v.emplace_back(3.0 - 2.0 * e + 5.0 * e * e * e);
    }
    const auto ex = extrapolate_to_zero(h, v);
    CHECK(std::abs(ex.value - 3.0) <= 1e-12);
}
