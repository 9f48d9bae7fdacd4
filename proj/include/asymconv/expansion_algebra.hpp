#pragma once

#include "asymconv/rational.hpp"

#include <complex>
#include <map>
#include <vector>

namespace asymconv {

using Complex = std::complex<double>;

enum class Chirality { Holo, Anti };

const char* to_string(Chirality c);
Chirality parse_chirality(std::string_view text);

// exponent alpha > -1  ->  maximal log degree
using ExponentSetType = std::map<Rational, int>;

void validate(const ExponentSetType& type);

// Coefficient l multiplies (log|s|^2)^l. Trailing zeros are trimmed, so the
// zero polynomial is the empty list and has degree -1.
class LogPolynomial {
public:
    LogPolynomial() = default;
    explicit LogPolynomial(std::vector<Complex> coeffs);

    static LogPolynomial monomial(int degree, Complex c);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    Complex leading() const { return coeffs_.empty() ? Complex{} : coeffs_.back(); }
    Complex coeff(int l) const;
    const std::vector<Complex>& coefficients() const { return coeffs_; }

    Complex operator()(double ell) const;

    LogPolynomial& operator+=(const LogPolynomial& other);
    friend LogPolynomial operator*(Complex c, const LogPolynomial& poly);
    friend bool operator==(const LogPolynomial&, const LogPolynomial&) = default;

private:
    void trim();
    std::vector<Complex> coeffs_;
};

// c |s|^{2r} s^m sbar^n poly(log|s|^2)
struct SingularTerm {
    Rational r{0};
    int m = 0;
    int n = 0;
    LogPolynomial poly;
    // set by convolve_expansions when merged contributions nearly cancel
    bool cancellation = false;
};

void validate(const SingularTerm& term);

struct NormalizedKernelTerm {
    Rational a{0};
    int p = 0;
    Chirality chirality = Chirality::Holo;
    LogPolynomial poly;
};

class Expansion {
public:
    Expansion() = default;
    // Merges terms sharing (r, m, n) and drops zero polynomials unless flagged.
    Expansion(std::vector<SingularTerm> terms, int smooth_order);

    const std::vector<SingularTerm>& terms() const { return terms_; }
    int smooth_order() const { return smooth_order_; }

private:
    std::vector<SingularTerm> terms_;
    int smooth_order_ = 0;
};

ExponentSetType combine_types(const ExponentSetType& left, const ExponentSetType& right);

NormalizedKernelTerm normalize_term(const Rational& r, int m, int n);
NormalizedKernelTerm normalize_term(const SingularTerm& term);

int degree_rule(const Rational& a, const Rational& b, int j, int k);

// Type of an expansion: exponent r of each term with its log degree.
ExponentSetType expansion_type(const Expansion& e);

}  // namespace asymconv
