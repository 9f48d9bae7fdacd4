#pragma once

#include "asymconv/convolution_engine.hpp"
#include "asymconv/quadrature_oracle.hpp"

#include <optional>

namespace asymconv {

// Radial cutoff: 1 on |x| <= plateau, 0 on |x| >= support, quintic smoothstep between.
struct Bump {
    double plateau = 0.5;
    double support = 0.8;

    double operator()(double r) const;
};

void validate(const Bump& bump);

struct MonomialGerm {
    int exponent = 1;
    Bump bump;
};

void validate(const MonomialGerm& germ);

// Sum over the N-th roots x_i of s of bump(x_i) / (N^2 |x_i|^{2(N-1)}).
double monomial_fiber_integral(const MonomialGerm& germ, Complex s);

// Leading term (1/N) |s|^{2(1/N - 1)} of the fiber integral.
SingularTerm leading_fiber_term(const MonomialGerm& germ);

struct DemoReport {
    int n = 1;
    int m = 1;
    Rational predicted_exponent{0};  // r = 1/N + 1/M - 1 in |s|^{2r}
    std::optional<double> fitted_exponent;
    CaseTag tag = CaseTag::Smooth;
    int degree = -1;
    LogPolynomial fitted_coeffs;
    Complex fitted_leading{};
    Complex predicted_leading{};
    double relative_error = 0.0;
    double condition_number = 0.0;
    double residual = 0.0;
};

// Radii 0.05 * 2^-i.
SampleGrid demo_grid(int count = 16);

// The first germ's bump must be flat on |x|^N <= support2^M + max radius, so that
// the convolution reduces to a weighted kernel integral over the second support.
DemoReport convolution_demo(const MonomialGerm& g1, const MonomialGerm& g2, const SampleGrid& grid);

// Germ pair used by the CLI: the first bump is widened until the demo's flatness requirement holds.
std::pair<MonomialGerm, MonomialGerm> default_demo_germs(int n, int m, const SampleGrid& grid);

}  // namespace asymconv
