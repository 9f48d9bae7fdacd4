#pragma once

#include "asymconv/expansion_algebra.hpp"

#include <optional>
#include <set>

namespace asymconv {

// Measure normalization: the kernels are integrated against (i/4pi) du^dubar,
// under which the singular coefficient is rho_norm times the Gamma formula.
inline constexpr double kRhoNorm = 0.5;

// The integer-case table is stated for (1/4i pi) Log|s-u| Log|u| d(u,ubar)
// with Log|s|: sign -1, log^2 = 2 Log twice (4), Log|s| = log|s|^2 / 2.
inline constexpr double kIntegerCaseScale = -2.0;

enum class CaseTag { Generic, Resonant, OneIntegerFactor, BothInteger, Smooth };

const char* to_string(CaseTag tag);

struct CaseConstant {
    CaseTag tag = CaseTag::Smooth;
    int degree = -1;
    // Gamma constant times the combinatorial factor from the log powers j, k
    double raw = 0.0;
    double normalization = kRhoNorm;

    double leading() const { return raw * normalization; }
};

CaseTag classify_case(const Rational& a, const Rational& b, int j, int k);

// Leading coefficient of the kernel F^{j,k}_{p,q}(a,b)[s] in front of
// |s|^{2(a+b+1)} s^{p+q} (log|s|^2)^degree, or s^p sbar^q for Anti.
CaseConstant case_constant(const Rational& a, const Rational& b, int p, int q, int j, int k, Chirality chirality2);

struct ConvolutionResult {
    std::optional<SingularTerm> term;
    CaseTag tag = CaseTag::Smooth;
    Complex leading_coeff{};
    int degree = -1;
    double normalization = kRhoNorm;
};

ConvolutionResult convolve_terms(const SingularTerm& t1, const SingularTerm& t2);

Expansion convolve_expansions(const Expansion& e1, const Expansion& e2);

struct BernsteinCombination {
    std::set<Rational> raw;
    std::set<Rational> canonical;  // representatives in [-1, 0)
    std::set<Rational> shifted;    // raw sums lowered by 0..kappa
};

BernsteinCombination bernstein_combine(const std::set<Rational>& roots1, const std::set<Rational>& roots2, int kappa);

Rational canonical_root(const Rational& x);

}  // namespace asymconv
