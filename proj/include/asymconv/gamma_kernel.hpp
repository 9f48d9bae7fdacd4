#pragma once

#include "asymconv/expansion_algebra.hpp"
#include "asymconv/rational.hpp"

#include <optional>

namespace asymconv {

inline constexpr double kEulerGamma = 0.57721566490153286061;
// Gamma'(1)
inline constexpr double kDigammaOne = -kEulerGamma;

// A real parameter that may also carry its exact rational value.
// Branch decisions (is it in N? is a+b+1 in N?) use the rational; a double
// that is bitwise integral counts as exact, and an inexact double sitting
// within 1e-9 of an integer is refused where a branch depends on it.
class Param {
public:
    Param(double x);
    Param(int x) : Param(Rational(x)) {}
    Param(const Rational& x) : value_(to_double(x)), exact_(x) {}

    double value() const { return value_; }
    const std::optional<Rational>& exact() const { return exact_; }

    bool is_nonpositive_integer() const;
    // Throw DomainError when an inexact value is too close to call.
    bool is_natural() const;
    bool is_integer() const;

    friend Param operator+(const Param& x, const Param& y);
    friend Param operator-(const Param& x, const Param& y);
    friend Param operator-(const Param& x);

private:
    double value_;
    std::optional<Rational> exact_;
};

struct SpecialValue {
    Complex value{};
    bool is_pole = false;
    int pole_order = 0;
};

double log_gamma(double x);
double reciprocal_gamma(double x);
double digamma(double x);
double sin_pi(double x);

double beta_tail_integral(double u, double v);
SpecialValue G_q(const Param& a, const Param& b, int q);
double fourier_coefficient(const Param& a, int q, int r);
double binomial_gamma_sum(int p, const Param& x, const Param& y);
double gauss_sum(const Param& x, const Param& y, const Param& z);

SpecialValue F_const(int p, int q, const Param& a, const Param& b, Chirality chirality2);
double tilde_F_const(int p, int q, const Param& a, const Param& b, Chirality chirality2);
double resonant_finite_part(const Param& a, const Param& b, int q);
double integer_case_log_coeff(int p, int q, int a, int b, Chirality chirality2);
double degenerate_case1_coeff(int p, int q, const Param& a, const Param& b, Chirality chirality2);
double log_fourier(int p, double x);

}  // namespace asymconv
