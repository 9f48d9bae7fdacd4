#include "asymconv/convolution_engine.hpp"

#include "asymconv/errors.hpp"
#include "asymconv/gamma_kernel.hpp"

#include <cmath>
#include <map>
#include <tuple>

namespace asymconv {

const char* to_string(CaseTag tag) {
    switch (tag) {
        case CaseTag::Generic: return "Generic";
        case CaseTag::Resonant: return "Resonant";
        case CaseTag::OneIntegerFactor: return "OneIntegerFactor";
        case CaseTag::BothInteger: return "BothInteger";
        case CaseTag::Smooth: return "Smooth";
    }
    return "?";
}

CaseTag classify_case(const Rational& a, const Rational& b, int j, int k) {
    if (j < 0 || k < 0) throw DomainError("log degrees j, k must be >= 0");
    const bool an = is_natural(a), bn = is_natural(b);
    if ((an && j == 0) || (bn && k == 0)) return CaseTag::Smooth;
    if (an && bn) return CaseTag::BothInteger;
    if (an || bn) return CaseTag::OneIntegerFactor;
    if (is_natural(a + b + 1)) return CaseTag::Resonant;
    return CaseTag::Generic;
}

CaseConstant case_constant(const Rational& a, const Rational& b, int p, int q, int j, int k, Chirality chirality2) {
    if ((is_integer(a) && !is_natural(a)) || (is_integer(b) && !is_natural(b)))
        throw DomainError("kernel exponents a, b must not be negative integers");
    if (is_integer(a + b + 1) && !is_natural(a + b + 1))
        throw DomainError("a + b + 1 must not be a negative integer");
    CaseConstant out;
    out.tag = classify_case(a, b, j, k);
    out.degree = degree_rule(a, b, j, k);
    const Param pa(a), pb(b);
    switch (out.tag) {
        case CaseTag::Smooth:
            break;
        case CaseTag::Generic:
            out.raw = F_const(p, q, pa, pb, chirality2).value.real();
            break;
        case CaseTag::Resonant:
            out.raw = tilde_F_const(p, q, pa, pb, chirality2) / (j + k + 1);
            break;
        case CaseTag::OneIntegerFactor:
            out.raw = (is_natural(a) ? j : k) * degenerate_case1_coeff(p, q, pa, pb, chirality2);
            break;
        case CaseTag::BothInteger:
            out.raw = integer_case_log_coeff(p, q, static_cast<int>(a.numerator()), static_cast<int>(b.numerator()),
                                             chirality2) *
                      (j * k) / (j + k - 1.0);
            out.normalization = kIntegerCaseScale;
            break;
    }
    return out;
}

ConvolutionResult convolve_terms(const SingularTerm& t1, const SingularTerm& t2) {
    validate(t1);
    validate(t2);
    if (t1.poly.is_zero() || t2.poly.is_zero()) throw DomainError("convolve_terms needs nonzero log polynomials");
    const NormalizedKernelTerm k1 = normalize_term(t1), k2 = normalize_term(t2);
    const Chirality kernel = k1.chirality == k2.chirality ? Chirality::Holo : Chirality::Anti;
    const int j = t1.poly.degree(), k = t2.poly.degree();

    const CaseConstant cc = case_constant(k1.a, k2.a, k1.p, k2.p, j, k, kernel);
    ConvolutionResult out;
    out.tag = cc.tag;
    out.degree = cc.degree;
    out.normalization = cc.normalization;
    if (cc.tag == CaseTag::Smooth) return out;
    out.leading_coeff = t1.poly.leading() * t2.poly.leading() * cc.leading();

    SingularTerm term;
    term.r = t1.r + t2.r + 1;
    term.m = t1.m + t2.m;
    term.n = t1.n + t2.n;
    if (term.r > Rational(0)) {
        term.r -= 1;
        term.m += 1;
        term.n += 1;
    }
    term.poly = LogPolynomial::monomial(cc.degree, out.leading_coeff);
    out.term = std::move(term);
    return out;
}

Expansion convolve_expansions(const Expansion& e1, const Expansion& e2) {
    struct Slot {
        LogPolynomial sum;
        int top = -1;
        double top_scale = 0.0;
    };
    std::map<std::tuple<Rational, int, int>, Slot> slots;
    for (const auto& t1 : e1.terms()) {
        if (t1.poly.is_zero()) continue;
        for (const auto& t2 : e2.terms()) {
            if (t2.poly.is_zero()) continue;
            auto res = convolve_terms(t1, t2);
            if (!res.term) continue;
            auto& slot = slots[{res.term->r, res.term->m, res.term->n}];
            slot.sum += res.term->poly;
            if (res.degree > slot.top) {
                slot.top = res.degree;
                slot.top_scale = 0.0;
            }
            if (res.degree == slot.top) slot.top_scale = std::max(slot.top_scale, std::abs(res.leading_coeff));
        }
    }
    std::vector<SingularTerm> terms;
    for (auto& [key, slot] : slots) {
        SingularTerm t;
        std::tie(t.r, t.m, t.n) = key;
        t.cancellation = std::abs(slot.sum.coeff(slot.top)) < 1e-9 * slot.top_scale;
        t.poly = std::move(slot.sum);
        terms.push_back(std::move(t));
    }
    return Expansion(std::move(terms), std::min(e1.smooth_order(), e2.smooth_order()));
}

Rational canonical_root(const Rational& x) { return x - Rational(floor_int(x) + 1); }

BernsteinCombination bernstein_combine(const std::set<Rational>& roots1, const std::set<Rational>& roots2, int kappa) {
    if (kappa < 0) throw DomainError("kappa must be >= 0");
    for (const auto* roots : {&roots1, &roots2})
        for (const auto& x : *roots)
            if (x >= Rational(0)) throw DomainError("Bernstein roots must be negative, got " + to_string(x));
    BernsteinCombination out;
    for (const auto& x : roots1) {
        for (const auto& y : roots2) {
            const Rational s = x + y;
            out.raw.insert(s);
            out.canonical.insert(canonical_root(s));
            for (int t = 0; t <= kappa; ++t) out.shifted.insert(s - t);
        }
    }
    return out;
}

}  // namespace asymconv
