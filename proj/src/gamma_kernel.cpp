#include "asymconv/gamma_kernel.hpp"

#include "asymconv/errors.hpp"

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/sin_pi.hpp>

#include <cmath>
#include <numbers>
#include <utility>

namespace asymconv {

namespace {

constexpr double kNearInteger = 1e-9;

std::optional<Rational> dyadic(double x) {
    if (!std::isfinite(x)) return std::nullopt;
    double scaled = x;
    long long den = 1;
    for (int k = 0; k <= 20; ++k) {
        if (scaled == std::floor(scaled) && std::abs(scaled) < 9.0e15)
            return Rational(static_cast<long long>(scaled), den);
        scaled *= 2.0;
        den *= 2;
    }
    return std::nullopt;
}

std::optional<Rational> combine(const std::optional<Rational>& x, const std::optional<Rational>& y, int sign) {
    if (!x || !y) return std::nullopt;
    return sign > 0 ? *x + *y : *x - *y;
}

int parity_sign(long long n) { return n % 2 == 0 ? 1 : -1; }

double factorial(long long n) {
    double f = 1.0;
    for (long long i = 2; i <= n; ++i) f *= static_cast<double>(i);
    return f;
}

// Product of Gamma factors in log space. Gamma poles in the numerator and
// in the denominator are counted instead of evaluated.
class GammaRatio {
public:
    GammaRatio& num(const Param& x) { return add(x, 1); }
    GammaRatio& den(const Param& x) { return add(x, -1); }
    GammaRatio& times(double c) {
        if (c == 0.0) {
            ++zeros_;
            return *this;
        }
        if (c < 0) sign_ = -sign_;
        log_ += std::log(std::abs(c));
        return *this;
    }

    int net_poles() const { return poles_ - zeros_; }
    bool indeterminate() const { return poles_ > 0 && poles_ == zeros_; }

    double value() const {
        if (indeterminate()) throw DomainError("Gamma ratio is an indeterminate 0*inf form at this point");
        if (net_poles() > 0) throw DomainError("Gamma ratio has a pole at this point");
        if (net_poles() < 0) return 0.0;
        return sign_ * std::exp(log_);
    }

private:
    GammaRatio& add(const Param& x, int dir) {
        if (x.is_nonpositive_integer()) {
            (dir > 0 ? poles_ : zeros_) += 1;
            return *this;
        }
        double v = x.value();
        if (v > 0) {
            log_ += dir * boost::math::lgamma(v);
        } else {
            // reflection: Gamma(v) = pi / (sin(pi v) Gamma(1-v))
            double s = boost::math::sin_pi(v);
            log_ += dir * (std::log(std::numbers::pi) - std::log(std::abs(s)) - boost::math::lgamma(1.0 - v));
            if (s < 0) sign_ = -sign_;
        }
        return *this;
    }

    double log_ = 0.0;
    int sign_ = 1;
    int poles_ = 0;
    int zeros_ = 0;
};

SpecialValue to_special(const GammaRatio& g) {
    SpecialValue out;
    if (g.net_poles() > 0) {
        out.is_pole = true;
        out.pole_order = g.net_poles();
        out.value = Complex(std::nan(""), 0.0);
        return out;
    }
    out.value = g.value();
    return out;
}

void require_slice(const Param& a, const Param& b, int p, int q) {
    if (p < 0 || q < 0) throw DomainError("p, q must be >= 0");
    if (!(a.value() + p / 2.0 > -1.0)) throw DomainError("a + p/2 > -1 violated");
    if (!(b.value() + q / 2.0 > -1.0)) throw DomainError("b + q/2 > -1 violated");
}

struct Ordered {
    int p, q;
    Param a, b;
};

// Kernel symmetry u -> s - u: the constants only depend on the unordered pair.
Ordered reorder(int p, int q, const Param& a, const Param& b) {
    if (p <= q) return {p, q, a, b};
    return {q, p, b, a};
}

long long exact_round(const Param& x) {
    return x.exact() ? x.exact()->numerator() / x.exact()->denominator() : std::llround(x.value());
}

GammaRatio f_ratio(const Ordered& o, Chirality c) {
    const auto& [p, q, a, b] = o;
    GammaRatio g;
    g.num(a + p + 1).num(b + q + 1);
    if (c == Chirality::Holo) {
        g.num(-a - b - 1).den(a + b + p + q + 2);
    } else {
        g.num(-a - b - p - 1).den(a + b + q + 2).times(parity_sign(p));
    }
    return g;
}

}  // namespace

Param::Param(double x) : value_(x), exact_(dyadic(x)) {}

bool Param::is_nonpositive_integer() const {
    return exact_ && asymconv::is_integer(*exact_) && exact_->numerator() <= 0;
}

bool Param::is_integer() const {
    if (exact_) return asymconv::is_integer(*exact_);
    if (std::abs(value_ - std::round(value_)) < kNearInteger)
        throw DomainError("value " + std::to_string(value_) +
                          " is too close to an integer to classify; pass the exact rational \"p/q\"");
    return false;
}

bool Param::is_natural() const { return is_integer() && std::round(value_) >= 0; }

Param operator+(const Param& x, const Param& y) {
    Param out(x.value_ + y.value_);
    out.exact_ = combine(x.exact_, y.exact_, 1);
    return out;
}

Param operator-(const Param& x, const Param& y) {
    Param out(x.value_ - y.value_);
    out.exact_ = combine(x.exact_, y.exact_, -1);
    return out;
}

Param operator-(const Param& x) {
    Param out(-x.value_);
    if (x.exact_) out.exact_ = -*x.exact_;
    return out;
}

double log_gamma(double x) {
    if (!(x > 0)) throw DomainError("log_gamma needs x > 0");
    return boost::math::lgamma(x);
}

double reciprocal_gamma(double x) {
    if (x <= 0 && x == std::floor(x)) return 0.0;
    if (x > 0) return x < 170.0 ? 1.0 / boost::math::tgamma(x) : std::exp(-boost::math::lgamma(x));
    double s = boost::math::sin_pi(x);
    if (1.0 - x < 170.0) return s * boost::math::tgamma(1.0 - x) / std::numbers::pi;
    double mag = std::exp(boost::math::lgamma(1.0 - x) + std::log(std::abs(s)) - std::log(std::numbers::pi));
    return s < 0 ? -mag : mag;
}

double digamma(double x) {
    if (x <= 0 && x == std::floor(x)) throw DomainError("digamma has a pole at non-positive integers");
    return boost::math::digamma(x);
}

double sin_pi(double x) { return boost::math::sin_pi(x); }

double beta_tail_integral(double u, double v) {
    if (!(v > -1.0) || !(u - (v + 1) / 2 > 0)) throw DomainError("beta_tail_integral diverges: need v > -1 and u > (v+1)/2");
    GammaRatio g;
    g.num((v + 1) / 2).num(u - (v + 1) / 2).den(u).times(0.5);
    return g.value();
}

SpecialValue G_q(const Param& a, const Param& b, int q) {
    require_slice(a, b, 0, q);
    GammaRatio g;
    g.num(a + 1).num(b + q + 1).num(-a - b - 1).den(-a).den(-b).den(a + b + q + 2).times(0.5);
    return to_special(g);
}

double fourier_coefficient(const Param& a, int q, int r) {
    if (!(a.value() > -1.0)) throw DomainError("fourier_coefficient needs a > -1");
    if (q < 0 || r < 0) throw DomainError("fourier_coefficient needs q, r >= 0");
    if (r < q || (r - q) % 2 != 0) return 0.0;
    const int n1 = (r + q) / 2, n2 = (r - q) / 2;
    if (a.exact() && is_natural(*a.exact())) {
        long long n = a.exact()->numerator();
        auto binom = [n](int k) {
            if (k > n) return 0.0;
            double c = 1.0;
            for (int i = 0; i < k; ++i) c = c * static_cast<double>(n - i) / (i + 1);
            return c;
        };
        return parity_sign(r) * binom(n1) * binom(n2);
    }
    GammaRatio g;
    g.num(a + 1).num(a + 1).den(a + 1 - n1).den(a + 1 - n2).den(n1 + 1).den(n2 + 1).times(parity_sign(r));
    return g.value();
}

double binomial_gamma_sum(int p, const Param& x, const Param& y) {
    if (p < 0) throw DomainError("binomial_gamma_sum needs p >= 0");
    if (x.is_nonpositive_integer() || y.is_nonpositive_integer())
        throw DomainError("binomial_gamma_sum: x, y must avoid the Gamma poles 0, -1, -2, ...");
    GammaRatio g;
    g.num(x).num(y + p).den(x + y + p).den(y);
    return g.value();
}

double gauss_sum(const Param& x, const Param& y, const Param& z) {
    if (!((z - x - y).value() > 0)) throw DomainError("gauss_sum diverges: need z - x - y > 0");
    if (x.is_nonpositive_integer() || y.is_nonpositive_integer())
        throw DomainError("gauss_sum: x, y must avoid the Gamma poles 0, -1, -2, ...");
    GammaRatio g;
    g.num(x).num(y).num(z - x - y).den(z - x).den(z - y);
    return g.value();
}

SpecialValue F_const(int p, int q, const Param& a, const Param& b, Chirality chirality2) {
    require_slice(a, b, p, q);
    Ordered o = reorder(p, q, a, b);
    GammaRatio g = f_ratio(o, chirality2);
    g.den(-o.a).den(-o.b);
    return to_special(g);
}

double tilde_F_const(int p, int q, const Param& a, const Param& b, Chirality chirality2) {
    require_slice(a, b, p, q);
    Param m = a + b + 1;
    if (!m.is_natural()) throw DomainError("tilde_F_const needs a + b + 1 in N");
    if (a.is_integer() || b.is_integer()) throw DomainError("tilde_F_const needs a, b not integers");
    Ordered o = reorder(p, q, a, b);
    GammaRatio g;
    g.num(o.a + o.p + 1).num(o.b + o.q + 1).den(-o.a).den(-o.b).times(parity_sign(exact_round(m) - 1));
    if (chirality2 == Chirality::Holo)
        g.den(m + 1).den(m + o.p + o.q + 1);
    else
        g.den(m + o.q + 1).den(m + o.p + 1);
    return g.value();
}

double resonant_finite_part(const Param& a, const Param& b, int q) {
    require_slice(a, b, 0, q);
    Param m = a + b + 1;
    if (!m.is_natural()) throw DomainError("resonant_finite_part needs a + b + 1 in N");
    if (a.is_integer()) throw DomainError("resonant_finite_part needs a not an integer");
    const long long mm = exact_round(m);
    GammaRatio residue;
    residue.num(a + 1).num(b + q + 1).den(-a).den(-b).den(a + b + q + 2);
    double harmonic = 0.0;
    for (long long i = 1; i <= mm; ++i) harmonic += 1.0 / static_cast<double>(i);
    // d/db log of the residue factor
    double drift = digamma((b + q + 1).value()) + digamma((-b).value()) - digamma((a + b + q + 2).value());
    return 0.5 * parity_sign(mm) / factorial(mm) * residue.value() * (kDigammaOne + harmonic - drift);
}

double integer_case_log_coeff(int p, int q, int a, int b, Chirality chirality2) {
    if (a < 0 || b < 0) throw DomainError("integer_case_log_coeff needs a, b in N");
    if (p < 0 || q < 0) throw DomainError("p, q must be >= 0");
    Ordered o = reorder(p, q, Param(a), Param(b));
    GammaRatio g;
    g.num(o.a + o.p + 1).num(o.b + o.q + 1).num(o.a + 1).num(o.b + 1).times(-0.25);
    if (chirality2 == Chirality::Holo)
        g.den(o.a + o.b + 2).den(o.a + o.b + o.p + o.q + 2);
    else
        g.den(o.a + o.b + o.q + 2).den(o.a + o.b + o.p + 2);
    return g.value();
}

double degenerate_case1_coeff(int p, int q, const Param& a, const Param& b, Chirality chirality2) {
    require_slice(a, b, p, q);
    bool an = a.is_natural(), bn = b.is_natural();
    if (an == bn) throw DomainError("degenerate_case1_coeff needs exactly one of a, b in N");
    if ((a + b + 1).is_natural()) throw DomainError("degenerate_case1_coeff needs a + b + 1 not in N");
    Ordered o = reorder(p, q, a, b);
    GammaRatio g = f_ratio(o, chirality2);
    // 1/Gamma(-n) -> (-1)^{n+1} n!  for the integral exponent n
    auto substitute = [&g](const Param& x) {
        long long n = exact_round(x);
        g.times(parity_sign(n + 1) * factorial(n));
    };
    if (o.a.is_natural()) {
        substitute(o.a);
        g.den(-o.b);
    } else {
        substitute(o.b);
        g.den(-o.a);
    }
    return g.value();
}

double log_fourier(int p, double x) {
    if (!(x >= 0)) throw DomainError("log_fourier needs x >= 0");
    if (x == 1.0) throw DomainError("log_fourier is singular at x = 1");
    if (p == 0) return x < 1 ? 0.0 : std::log(x * x);
    const int ap = std::abs(p);
    const double y = x < 1 ? x : 1.0 / x;
    return -std::pow(y, ap) / ap;
}

}  // namespace asymconv
