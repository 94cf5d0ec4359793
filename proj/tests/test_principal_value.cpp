#include <doctest.h>
#include <gsl/gsl_integration.h>

#include <cmath>
#include <functional>

#include "rieszwell/errors.hpp"
#include "rieszwell/principal_value.hpp"
#include "rieszwell/quadrature.hpp"

using namespace rieszwell;

namespace {

double gsl_call(double x, void* p) { return (*static_cast<std::function<double(double)>*>(p))(x); }

// J(phi) = PV integral_0^inf q^alpha cos(phi q) / (q^2 - 1) dq, from GSL's Cauchy-weight rule
// on [0, 2] and its Fourier-integral rule on [2, inf).
double gsl_fold(double alpha, double phi) {
    gsl_integration_workspace* ws = gsl_integration_workspace_alloc(2000);
    gsl_integration_workspace* cyc = gsl_integration_workspace_alloc(2000);
    gsl_integration_qawo_table* table = gsl_integration_qawo_table_alloc(std::abs(phi), 1.0, GSL_INTEG_COSINE, 50);
    std::function<double(double)> near = [=](double q) { return std::pow(q, alpha) * std::cos(phi * q) / (q + 1.0); };
    std::function<double(double)> far = [=](double q) { return std::pow(q, alpha) / (q * q - 1.0); };
    gsl_function fn{&gsl_call, &near}, ff{&gsl_call, &far};
    double a = 0.0, b = 0.0, err = 0.0;
    gsl_integration_qawc(&fn, 0.0, 2.0, 1.0, 1e-13, 1e-11, 2000, ws, &a, &err);
    gsl_integration_qawf(&ff, 2.0, 1e-11, 2000, ws, cyc, table, &b, &err);
    gsl_integration_qawo_table_free(table);
    gsl_integration_workspace_free(cyc);
    gsl_integration_workspace_free(ws);
    return a + b;
}

double gsl_pole_integral(int n, double x, double alpha) {
    const double theta = n * M_PI * x / 2.0, shift = n * M_PI / 2.0;
    const double jp = gsl_fold(alpha, theta + shift), jm = gsl_fold(alpha, theta - shift);
    return n % 2 == 1 ? jp + jm : jp - jm;
}

PVResult run(int n, double x, double alpha, double tol = 1e-6) {
    return pv_oscillatory(PoleIntegrand::for_well(n, x, 1.0, alpha), tol);
}

}  // namespace

TEST_CASE("closed forms") {
    CHECK(pv_closed_form(1, 0.0, 1.0, Parity::Odd) == doctest::Approx(-M_PI).epsilon(1e-15));
    CHECK(pv_closed_form(2, 0.5, 1.0, Parity::Even) == doctest::Approx(M_PI).epsilon(1e-15));
    CHECK(std::abs(pv_closed_form(3, 1.0, 1.0, Parity::Odd)) <= 1e-15);
    CHECK(pv_closed_form(4, 0.25, 2.0, Parity::Even) == doctest::Approx(-M_PI * std::sin(M_PI / 4.0)));
    CHECK_THROWS_AS(pv_closed_form(2, 0.0, 1.0, Parity::Odd), DomainError);
    CHECK_THROWS_AS(pv_closed_form(1, 0.0, 0.0, Parity::Odd), DomainError);
}

TEST_CASE("pole integrand construction") {
    const auto p = PoleIntegrand::for_well(3, 0.5, 2.0, 1.5);
    CHECK(p.theta == doctest::Approx(3.0 * M_PI / 8.0));
    CHECK(p.parity() == Parity::Odd);
    CHECK(p.phases().first == doctest::Approx(3.0 * M_PI / 8.0 + 1.5 * M_PI));
    CHECK_THROWS_AS(PoleIntegrand::for_well(0, 0.0, 1.0, 1.5), DomainError);
}

TEST_CASE("engine matches an independent GSL oracle") {
    // Both computations evaluate the Abel-regularized principal value directly.
    struct Case {
        int n;
        double x, alpha;
    };
    for (const Case c : {Case{1, 0.0, 1.5}, Case{1, 0.6, 1.2}, Case{2, 0.3, 1.8}, Case{3, -0.9, 1.5},
                         Case{2, 0.9, 1.2}}) {
        CAPTURE(c.n);
        CAPTURE(c.x);
        CAPTURE(c.alpha);
        const double oracle = gsl_pole_integral(c.n, c.x, c.alpha);
        const PVResult r = run(c.n, c.x, c.alpha);
        CHECK(r.converged);
        CHECK(std::abs(r.value.real() - oracle) <= 1e-6);
        CHECK(r.value.imag() == 0.0);
    }
}

TEST_CASE("frozen principal values at the well centre") {
    // Values verified independently by arbitrary-precision oscillatory quadrature.
    CHECK(run(1, 0.0, 1.2).value.real() == doctest::Approx(-2.79033671).epsilon(1e-8));
    CHECK(run(1, 0.0, 1.5).value.real() == doctest::Approx(-2.90021475).epsilon(1e-8));
    CHECK(run(1, 0.0, 1.8).value.real() == doctest::Approx(-3.03972375).epsilon(1e-8));
    // Approaches the alpha = 2 closed form -pi as alpha -> 2.
    CHECK(run(1, 0.0, 1.99).value.real() == doctest::Approx(-3.13642).epsilon(1e-5));
}

TEST_CASE("symmetry in x") {
    for (double alpha : {1.2, 1.7}) {
        for (double x : {0.2, 0.55, 0.8}) {
            CHECK(run(1, x, alpha).value.real() == doctest::Approx(run(1, -x, alpha).value.real()).epsilon(1e-10));
            CHECK(run(2, x, alpha).value.real() == doctest::Approx(-run(2, -x, alpha).value.real()).epsilon(1e-10));
        }
    }
    CHECK(run(2, 0.0, 1.5).value.real() == 0.0);
}

TEST_CASE("diagnostics") {
    const PVResult r = run(3, 0.6, 1.5);
    CHECK(r.converged);
    CHECK(r.extrapolation_error <= 1e-6);
    CHECK(r.pole_error <= 1e-6);
    REQUIRE(r.regulator_values.size() >= 4);
    CHECK(r.regulator_values[0].first == doctest::Approx(0.2));
    for (std::size_t k = 1; k < r.regulator_values.size(); ++k) {
        CHECK(r.regulator_values[k].first == doctest::Approx(r.regulator_values[k - 1].first / 2.0));
    }
    // Extrapolation increments shrink level by level.
    std::vector<double> h;
    std::vector<complex> v;
    double last = INFINITY;
    for (const auto& [eta, value] : r.regulator_values) {
        h.push_back(eta);
        v.push_back(value);
        if (h.size() >= 2) {
            const double inc = extrapolate_to_zero(h, v).increment;
            CHECK(inc < last);
            last = inc;
        }
    }
}

TEST_CASE("non-convergence is reported, not thrown") {
    PVOptions opt;
    opt.max_levels = 2;
    opt.min_levels = 2;
    const PVResult r = pv_oscillatory(PoleIntegrand::for_well(1, 0.3, 1.0, 1.5), 1e-6, opt);
    CHECK_FALSE(r.converged);
    CHECK(std::isfinite(r.value.real()));
    CHECK(r.regulator_values.size() == 2);
}

TEST_CASE("validation") {
    CHECK_THROWS_AS(run(1, 0.0, 2.0), DomainError);
    CHECK_THROWS_AS(run(1, 0.0, 1.0), DomainError);
    CHECK_THROWS_AS(run(1, 0.0, 1.5, 1e-8), DomainError);
    CHECK_THROWS_AS(run(1, 1.0, 1.5), DomainError);
}

TEST_CASE("numeric kernel transforms") {
    for (double alpha : {0.5, 1.5}) {
        for (double w : {0.5, 1.0, 2.0, -1.0}) {
            for (auto side : {KernelSide::HPlus, KernelSide::HMinus}) {
                const PVResult r = numeric_kernel_transform(side, alpha, w, 1e-8);
                const complex exact = kernel_transform(side, alpha, w);
                CHECK(r.converged);
                CHECK(std::abs(r.value - exact) <= 1e-8 * std::abs(exact));
            }
        }
    }
    CHECK_THROWS_AS(numeric_kernel_transform(KernelSide::HPlus, 1.5, 0.0, 1e-8), DomainError);
}
