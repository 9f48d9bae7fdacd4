#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "asymconv/convolution_engine.hpp"
#include "asymconv/errors.hpp"
#include "asymconv/gamma_kernel.hpp"
#include "asymconv/quadrature_oracle.hpp"

#include <random>

using namespace asymconv;
using doctest::Approx;

namespace {

Rational R(long long p, long long q = 1) { return Rational(p, q); }

SingularTerm term(Rational r, int m = 0, int n = 0, int degree = 0, Complex c = {1, 0}) {
    return {r, m, n, LogPolynomial::monomial(degree, c), false};
}

SingularTerm random_term(std::mt19937& rng) {
    std::uniform_int_distribution<int> num(-5, 0), mn(0, 2), deg(0, 2);
    std::uniform_real_distribution<double> c(0.5, 2.0);
    return term(Rational(num(rng), 6), mn(rng), mn(rng), deg(rng), {c(rng), c(rng) - 1.0});
}

}  // namespace

TEST_CASE("classify_case examples") {
    CHECK(classify_case(R(-1, 2), R(-1, 2), 0, 0) == CaseTag::Resonant);
    CHECK(classify_case(R(0), R(-1, 2), 0, 1) == CaseTag::Smooth);
    CHECK(classify_case(R(0), R(-1, 2), 1, 1) == CaseTag::OneIntegerFactor);
    CHECK(classify_case(R(0), R(1), 1, 1) == CaseTag::BothInteger);
    CHECK(classify_case(R(0), R(1), 1, 0) == CaseTag::Smooth);
    CHECK(classify_case(R(-1, 3), R(-1, 4), 0, 0) == CaseTag::Generic);
}

TEST_CASE("case_constant rejects negative integers") {
    CHECK_THROWS_AS(case_constant(R(-1), R(0), 2, 0, 0, 0, Chirality::Holo), DomainError);
}

TEST_CASE("convolve_terms examples") {
    auto res = convolve_terms(term(R(-1, 2)), term(R(-1, 2)));
    CHECK(res.tag == CaseTag::Resonant);
    CHECK(res.degree == 1);
    CHECK(res.leading_coeff.real() == Approx(-kRhoNorm).epsilon(1e-14));
    REQUIRE(res.term);
    CHECK(res.term->r == R(0));
    CHECK(res.term->poly.degree() == 1);

    res = convolve_terms(term(R(-1, 3)), term(R(-1, 4)));
    CHECK(res.tag == CaseTag::Generic);
    CHECK(res.degree == 0);
    const double f = F_const(0, 0, Param(R(-1, 3)), Param(R(-1, 4)), Chirality::Holo).value.real();
    CHECK(res.leading_coeff.real() == Approx(f * kRhoNorm).epsilon(1e-14));
    CHECK(res.term->r == R(-1, 3) + R(-1, 4) + 1 - 1);
    CHECK(res.term->m == 1);
    CHECK(res.term->n == 1);

    res = convolve_terms(term(R(0)), term(R(-2, 3), 1, 0, 2));
    CHECK(res.tag == CaseTag::Smooth);
    CHECK(!res.term);
}

TEST_CASE("convolve_terms generic constant matches the quadrature fit") {
    auto res = convolve_terms(term(R(-1, 3)), term(R(-1, 4)));
    auto rep = verify_constant(KernelSpec{R(-1, 3), R(-1, 4), 0, 0, 0, 0, Chirality::Holo});
    CHECK(std::abs(rep.fitted_leading - res.leading_coeff) < 1e-6 * std::abs(res.leading_coeff));
}

TEST_CASE("convolve_terms scales with the input leading coefficients") {
    auto base = convolve_terms(term(R(-1, 3), 1, 0), term(R(-1, 4), 0, 2, 1));
    auto scaled = convolve_terms(term(R(-1, 3), 1, 0, 0, {2, 1}), term(R(-1, 4), 0, 2, 1, {0, 3}));
    CHECK(std::abs(scaled.leading_coeff - Complex(2, 1) * Complex(0, 3) * base.leading_coeff) < 1e-12);
}

TEST_CASE("convolve_terms properties on random pairs") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 300; ++trial) {
        SingularTerm t1 = random_term(rng), t2 = random_term(rng);
        ConvolutionResult x, y;
        try {
            x = convolve_terms(t1, t2);
            y = convolve_terms(t2, t1);
        } catch (const DomainError&) {
            continue;
        }
        CHECK(x.tag == y.tag);
        CHECK(x.degree == y.degree);
        CHECK(std::abs(x.leading_coeff - y.leading_coeff) <= 1e-12 * std::max(1.0, std::abs(x.leading_coeff)));

        auto k1 = normalize_term(t1), k2 = normalize_term(t2);
        CHECK(x.degree == degree_rule(k1.a, k2.a, t1.poly.degree(), t2.poly.degree()));
        if (x.tag == CaseTag::Smooth) {
            CHECK(!x.term);
            continue;
        }
        CHECK(std::abs(x.leading_coeff) > 0);
        REQUIRE(x.term);
        const Rational in = 2 * (t1.r + t2.r + 1) + t1.m + t2.m + t1.n + t2.n;
        const Rational out = 2 * (x.term->r + 1) + x.term->m + x.term->n - 2;
        CHECK(in == out);
        CHECK(x.term->r > R(-1));
        CHECK(x.term->r <= R(0));
    }
}

TEST_CASE("convolve_expansions") {
    Expansion single1({term(R(-1, 3))}, 3), single2({term(R(-1, 4))}, 5);
    auto e = convolve_expansions(single1, single2);
    REQUIRE(e.terms().size() == 1);
    CHECK(e.smooth_order() == 3);
    auto direct = convolve_terms(term(R(-1, 3)), term(R(-1, 4)));
    CHECK(e.terms()[0].r == direct.term->r);
    CHECK(e.terms()[0].poly == direct.term->poly);

    Expansion e1({term(R(-1, 2)), term(R(-1, 3))}, 4), e2({term(R(-1, 2))}, 4);
    auto two = convolve_expansions(e1, e2);
    REQUIRE(two.terms().size() == 2);
    std::set<Rational> classes;
    for (const auto& t : two.terms()) classes.insert(t.r + 1 + Rational(t.m + t.n, 2) - 1);
    CHECK(classes == std::set<Rational>{R(0), R(1, 6)});
    CHECK(two.terms().size() <= e1.terms().size() * e2.terms().size());
}

TEST_CASE("convolve_expansions flags cancellation") {
    // (1,0) x (0,1) and (0,1) x (1,0) land on the same (0,1,1) slot with the same kernel
    Expansion e1({term(R(-1, 2), 1, 0), term(R(-1, 2), 0, 1, 0, {-1, 0})}, 4);
    Expansion e2({term(R(-1, 2), 0, 1), term(R(-1, 2), 1, 0)}, 4);
    auto out = convolve_expansions(e1, e2);
    bool flagged = false;
    for (const auto& t : out.terms())
        if (t.r == R(0) && t.m == 1 && t.n == 1) flagged = t.cancellation;
    CHECK(flagged);
    for (const auto& t : out.terms())
        if (!(t.m == 1 && t.n == 1)) CHECK(!t.cancellation);
}

TEST_CASE("bernstein_combine") {
    auto b = bernstein_combine({R(-1, 2)}, {R(-1, 3), R(-2, 3)}, 0);
    CHECK(b.raw == std::set<Rational>{R(-5, 6), R(-7, 6)});
    CHECK(b.canonical == std::set<Rational>{R(-5, 6), R(-1, 6)});
    b = bernstein_combine({R(-1, 2)}, {R(-1, 2)}, 0);
    CHECK(b.raw == std::set<Rational>{R(-1)});
    CHECK(b.canonical == std::set<Rational>{R(-1)});
    CHECK(bernstein_combine({}, {R(-1, 2)}, 2).raw.empty());
    CHECK_THROWS_AS(bernstein_combine({R(0)}, {R(-1, 2)}, 0), DomainError);
    b = bernstein_combine({R(-1, 2)}, {R(-1, 3)}, 2);
    CHECK(b.shifted == std::set<Rational>{R(-5, 6), R(-11, 6), R(-17, 6)});

    std::mt19937 rng(19);
    std::uniform_int_distribution<int> num(-23, -1), den(1, 7), size(0, 4);
    for (int trial = 0; trial < 100; ++trial) {
        std::set<Rational> r1, r2;
        for (int i = size(rng); i > 0; --i) r1.insert(Rational(num(rng), den(rng)));
        for (int i = size(rng); i > 0; --i) r2.insert(Rational(num(rng), den(rng)));
        auto c = bernstein_combine(r1, r2, 1);
        CHECK(c.canonical.size() <= r1.size() * r2.size());
        for (const auto& x : c.canonical) {
            CHECK(x >= R(-1));
            CHECK(x < R(0));
        }
    }
}
