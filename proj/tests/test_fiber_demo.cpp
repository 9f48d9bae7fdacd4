#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "asymconv/errors.hpp"
#include "asymconv/fiber_demo.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>

using namespace asymconv;
using doctest::Approx;

namespace {

MonomialGerm germ(int n) { return {n, Bump{0.5, 0.8}}; }

}  // namespace

TEST_CASE("bump profile") {
    Bump b;
    CHECK(b(0.0) == 1.0);
    CHECK(b(0.5) == 1.0);
    CHECK(b(0.8) == 0.0);
    CHECK(b(0.65) == Approx(0.5).epsilon(1e-14));
    CHECK_THROWS_AS(validate(Bump{0.8, 0.5}), DomainError);
    CHECK_THROWS_AS(validate(MonomialGerm{0, Bump{}}), DomainError);
}

TEST_CASE("fiber integral examples") {
    const Complex s(0.3, -0.2);
    CHECK(monomial_fiber_integral(germ(1), s) == Approx(Bump{}(std::abs(s))).epsilon(1e-15));
    for (double r : {0.01, 0.1, 0.2})
        CHECK(monomial_fiber_integral(germ(2), std::polar(r, 0.4)) == Approx(1 / (2 * r)).epsilon(1e-14));
    CHECK_THROWS_AS(monomial_fiber_integral(germ(2), Complex(0, 0)), DomainError);
    CHECK_THROWS_AS(monomial_fiber_integral(germ(2), Complex(0.7, 0)), DomainError);

    for (int n : {1, 2, 3, 5}) {
        auto t = leading_fiber_term(germ(n));
        CHECK(t.r == Rational(1, n) - 1);
        CHECK(t.poly.degree() == 0);
        CHECK(t.poly.coeff(0).real() == Approx(1.0 / n));
    }
}

TEST_CASE("fiber integral is invariant under the root-set rotation") {
    for (int n : {2, 3, 4})
        for (double r : {0.05, 0.2, 0.3}) {
            if (r > std::pow(0.8, n)) continue;
            const Complex s = std::polar(r, 0.37);
            const double v = monomial_fiber_integral(germ(n), s);
            const double w = monomial_fiber_integral(germ(n), s * std::polar(1.0, 2 * std::numbers::pi / n));
            CHECK(std::abs(v - w) <= 1e-12 * std::abs(v));
        }
}

TEST_CASE("leading behavior is exact on the plateau") {
    for (int n : {2, 3, 4}) {
        const double edge = std::pow(0.5, n);
        const double c = std::pow(edge * 0.9, 2 * (1 - 1.0 / n)) * monomial_fiber_integral(germ(n), edge * 0.9);
        CHECK(c == Approx(1.0 / n).epsilon(1e-12));
        for (double f : {1e-4, 1e-2, 0.3}) {
            const double r = edge * f;
            const double v = std::pow(r, 2 * (1 - 1.0 / n)) * monomial_fiber_integral(germ(n), std::polar(r, 1.1));
            CHECK(std::abs(v - c) <= 1e-10 * c);
        }
    }
}

TEST_CASE("fiber integral pushes the measure forward") {
    // int Phi(s) h(s) dA(s) = int bump(x) h(x^N) dA(x), both radial here
    using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
    auto h = [](double r) { return std::exp(-4 * r * r) * (1 + r); };
    for (int n : {2, 3}) {
        const MonomialGerm g = germ(n);
        // substitute r = t^n so the fiber side becomes smooth in t
        auto lhs_integrand = [&](double t) {
            const double r = std::pow(t, n);
            return monomial_fiber_integral(g, r) * h(r) * r * n * std::pow(t, n - 1);
        };
        auto rhs_integrand = [&](double t) { return g.bump(t) * h(std::pow(t, n)) * t; };
        const double lhs = GK::integrate(lhs_integrand, 1e-9, g.bump.support, 12, 1e-13);
        const double rhs = GK::integrate(rhs_integrand, 0.0, g.bump.support, 12, 1e-13);
        CHECK(lhs == Approx(rhs).epsilon(1e-7));
    }
}

TEST_CASE("demo x^2 + y^2: resonant log term") {
    const auto grid = demo_grid();
    auto [g1, g2] = default_demo_germs(2, 2, grid);
    const auto rep = convolution_demo(g1, g2, grid);
    CHECK(rep.tag == CaseTag::Resonant);
    CHECK(rep.degree == 1);
    CHECK(rep.predicted_exponent == Rational(0));
    CHECK(std::abs(rep.fitted_leading) > 0.1);
    CHECK(rep.relative_error <= 1e-2);
}

TEST_CASE("demo x^2 + y^3: generic term at -1/6") {
    const auto grid = demo_grid();
    auto [g1, g2] = default_demo_germs(2, 3, grid);
    const auto rep = convolution_demo(g1, g2, grid);
    CHECK(rep.tag == CaseTag::Generic);
    CHECK(rep.degree == 0);
    CHECK(rep.predicted_exponent == Rational(-1, 6));
    REQUIRE(rep.fitted_exponent);
    CHECK(std::abs(*rep.fitted_exponent + 1.0 / 6) < 1e-3);
    CHECK(std::abs(rep.fitted_leading) > 0);
    CHECK(rep.relative_error <= 2e-2);
}

TEST_CASE("demo x + y: smooth") {
    const auto grid = demo_grid();
    auto [g1, g2] = default_demo_germs(1, 1, grid);
    const auto rep = convolution_demo(g1, g2, grid);
    CHECK(rep.tag == CaseTag::Smooth);
    CHECK(rep.degree == -1);
}
