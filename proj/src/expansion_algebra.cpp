#include "asymconv/expansion_algebra.hpp"

#include "asymconv/errors.hpp"

#include <algorithm>
#include <tuple>

namespace asymconv {

const char* to_string(Chirality c) { return c == Chirality::Holo ? "holo" : "anti"; }

Chirality parse_chirality(std::string_view text) {
    if (text == "holo" || text == "Holo") return Chirality::Holo;
    if (text == "anti" || text == "Anti") return Chirality::Anti;
    throw ParseError("chirality must be holo or anti, got \"" + std::string(text) + "\"");
}

void validate(const ExponentSetType& type) {
    for (const auto& [alpha, mu] : type) {
        if (alpha <= Rational(-1)) throw DomainError("exponent " + to_string(alpha) + " must be > -1");
        if (mu < 0) throw DomainError("log degree must be >= 0");
    }
}

LogPolynomial::LogPolynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

LogPolynomial LogPolynomial::monomial(int degree, Complex c) {
    if (degree < 0) return {};
    std::vector<Complex> v(static_cast<std::size_t>(degree) + 1);
    v.back() = c;
    return LogPolynomial(std::move(v));
}

Complex LogPolynomial::coeff(int l) const {
    if (l < 0 || l > degree()) return {};
    return coeffs_[static_cast<std::size_t>(l)];
}

Complex LogPolynomial::operator()(double ell) const {
    Complex acc{};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * ell + *it;
    return acc;
}

LogPolynomial& LogPolynomial::operator+=(const LogPolynomial& other) {
    if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size());
    for (std::size_t l = 0; l < other.coeffs_.size(); ++l) coeffs_[l] += other.coeffs_[l];
    trim();
    return *this;
}

LogPolynomial operator*(Complex c, const LogPolynomial& poly) {
    std::vector<Complex> v = poly.coeffs_;
    for (auto& x : v) x *= c;
    return LogPolynomial(std::move(v));
}

void LogPolynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back() == Complex{}) coeffs_.pop_back();
}

void validate(const SingularTerm& term) {
    if (term.r <= Rational(-1) || term.r > Rational(0))
        throw DomainError("term exponent r = " + to_string(term.r) + " must lie in (-1, 0]");
    if (term.m < 0 || term.n < 0) throw DomainError("term powers m, n must be >= 0");
}

Expansion::Expansion(std::vector<SingularTerm> terms, int smooth_order) : smooth_order_(smooth_order) {
    if (smooth_order < 0) throw DomainError("smooth order must be >= 0");
    auto key = [](const SingularTerm& t) { return std::tie(t.r, t.m, t.n); };
    std::stable_sort(terms.begin(), terms.end(),
                     [&](const SingularTerm& x, const SingularTerm& y) { return key(x) < key(y); });
    for (auto& t : terms) {
        validate(t);
        if (!terms_.empty() && key(terms_.back()) == key(t)) {
            terms_.back().poly += t.poly;
            terms_.back().cancellation = terms_.back().cancellation || t.cancellation;
        } else {
            terms_.push_back(std::move(t));
        }
    }
    std::erase_if(terms_, [](const SingularTerm& t) { return t.poly.is_zero() && !t.cancellation; });
}

namespace {

int pair_degree(const Rational& alpha, const Rational& beta, int mu, int nu) {
    if (is_natural(alpha) || is_natural(beta)) return mu + nu - 1;
    if (is_natural(alpha + beta + 1)) return mu + nu + 1;
    return mu + nu;
}

}  // namespace

ExponentSetType combine_types(const ExponentSetType& left, const ExponentSetType& right) {
    validate(left);
    validate(right);
    ExponentSetType out;
    for (const auto& [alpha, mu] : left) {
        for (const auto& [beta, nu] : right) {
            int d = pair_degree(alpha, beta, mu, nu);
            if (d < 0) continue;
            auto [it, fresh] = out.try_emplace(alpha + beta + 1, d);
            if (!fresh) it->second = std::max(it->second, d);
        }
    }
    return out;
}

NormalizedKernelTerm normalize_term(const Rational& r, int m, int n) {
    SingularTerm t{r, m, n, {}, false};
    validate(t);
    NormalizedKernelTerm out;
    out.a = r + std::min(m, n);
    out.p = std::abs(m - n);
    out.chirality = m >= n ? Chirality::Holo : Chirality::Anti;
    return out;
}

NormalizedKernelTerm normalize_term(const SingularTerm& term) {
    auto out = normalize_term(term.r, term.m, term.n);
    out.poly = term.poly;
    return out;
}

int degree_rule(const Rational& a, const Rational& b, int j, int k) {
    if (j < 0 || k < 0) throw DomainError("degree_rule needs j, k >= 0");
    bool an = is_natural(a), bn = is_natural(b);
    if ((an && j == 0) || (bn && k == 0)) return -1;
    if (an || bn) return j + k - 1;
    if (is_natural(a + b + 1)) return j + k + 1;
    return j + k;
}

ExponentSetType expansion_type(const Expansion& e) {
    ExponentSetType out;
    for (const auto& t : e.terms()) {
        int d = t.poly.degree();
        if (d < 0) continue;
        auto [it, fresh] = out.try_emplace(t.r, d);
        if (!fresh) it->second = std::max(it->second, d);
    }
    return out;
}

}  // namespace asymconv
