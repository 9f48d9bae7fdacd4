#include "asymconv/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>

namespace asymconv {

namespace {

using Gauss = boost::math::quadrature::gauss<double, 20>;

constexpr int kPatchAngles = 64;
constexpr int kRingAngles = 128;
constexpr int kAnnulusAngles = 64;
constexpr int kArcPanels = 8;

Complex ipow(Complex z, int n) {
    Complex r{1.0, 0.0};
    for (int i = 0; i < n; ++i) r *= z;
    return r;
}

double ipow(double x, int n) {
    double r = 1.0;
    for (int i = 0; i < n; ++i) r *= x;
    return r;
}

ValueMass vm(Complex v) { return {v, std::abs(v)}; }

// Gauss-Legendre on [lo, hi] using Boost's nodes; f returns ValueMass.
template <class F>
ValueMass gauss(F&& f, double lo, double hi) {
    const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
    const auto& x = Gauss::abscissa();
    const auto& w = Gauss::weights();
    ValueMass acc;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0.0) {
            acc += f(c) * w[i];
            continue;
        }
        acc += f(c - h * x[i]) * w[i];
        acc += f(c + h * x[i]) * w[i];
    }
    return acc * h;
}

// Mean over a full circle with the trapezoid rule.
template <class F>
ValueMass circle_mean(int n, F&& f) {
    ValueMass acc;
    for (int i = 0; i < n; ++i) acc += vm(f(2.0 * std::numbers::pi * i / n));
    return acc * (1.0 / n);
}

class Evaluator {
public:
    Evaluator(const DiskKernel& kern, Complex s, const DiskOptions& opt)
        : k_(kern), opt_(opt), s_(s), sigma_(std::abs(s)), ell_(std::log(std::norm(s))) {}

    ValueMass total() const {
        const double e = 2.0 * (k_.a + k_.b + 1.0);
        Complex pre = ipow(s_, k_.p) * ipow(omega(s_), k_.q) * std::pow(sigma_, e);
        ValueMass scaled = patch_zero() + patch_one() + arc_band() + outer_band();
        ValueMass out{pre * scaled.value, std::abs(pre) * scaled.mass};
        return out + annulus();
    }

private:
    Complex omega(Complex z) const { return k_.chirality == Chirality::Holo ? z : std::conj(z); }

    void check(const QuadValue& v, const char* where) const {
        const double scale = std::max(v.result.mass, 1e-300);
        if (v.error > 1e3 * opt_.tolerance * scale && v.error > 1e-280)
            throw ToleranceNotMet(std::string("kernel quadrature did not converge in ") + where, v.error / scale);
    }

    // |w| < 1/2 around 0 in scaled coordinates u = s w; rho = R t^mu absorbs |w|^{2b+q}.
    ValueMass patch_zero() const {
        const double R = 0.5, beta = 2.0 * k_.b + k_.q, mu = 1.0 / (beta + 2.0);
        const double sgn = k_.chirality == Chirality::Holo ? 1.0 : -1.0;
        auto f = [&](const UnitNode& nd) {
            const double log_rho = std::log(R) + mu * nd.log_t;
            const double rho = std::exp(log_rho);
            const double l2 = ell_ + 2.0 * log_rho;
            return circle_mean(kPatchAngles, [&](double th) {
                Complex w = std::polar(rho, th);
                Complex one_w = 1.0 - w;
                double l1w = std::log(std::norm(one_w));
                return std::exp(k_.a * l1w) * ipow(one_w, k_.p) * ipow(ell_ + l1w, k_.j) *
                       std::polar(1.0, sgn * k_.q * th) * ipow(l2, k_.k);
            });
        };
        QuadValue v = tanh_sinh_unit(f, opt_.tolerance);
        check(v, "the patch at 0");
        return v.result * (std::pow(R, beta + 2.0) * mu);
    }

    // |w - 1| < 1/2 around the other singular point; 1 - w = -rho e^{i psi}.
    ValueMass patch_one() const {
        const double R = 0.5, beta = 2.0 * k_.a + k_.p, mu = 1.0 / (beta + 2.0);
        auto f = [&](const UnitNode& nd) {
            const double log_rho = std::log(R) + mu * nd.log_t;
            const double rho = std::exp(log_rho);
            const double l1 = ell_ + 2.0 * log_rho;
            return circle_mean(kPatchAngles, [&](double psi) {
                Complex dir = std::polar(1.0, psi);
                Complex w = 1.0 + rho * dir;
                double l2w = std::log(std::norm(w));
                return ipow(-dir, k_.p) * ipow(l1, k_.j) * std::exp(k_.b * l2w) * ipow(omega(w), k_.q) *
                       ipow(ell_ + l2w, k_.k);
            });
        };
        QuadValue v = tanh_sinh_unit(f, opt_.tolerance);
        check(v, "the patch at s");
        return v.result * (std::pow(R, beta + 2.0) * mu);
    }

    ValueMass scaled_integrand(Complex w) const {
        Complex one_w = 1.0 - w;
        double l1w = std::log(std::norm(one_w)), l2w = std::log(std::norm(w));
        return vm(std::exp(k_.a * l1w + k_.b * l2w) * ipow(one_w, k_.p) * ipow(omega(w), k_.q) *
                  ipow(ell_ + l1w, k_.j) * ipow(ell_ + l2w, k_.k));
    }

    // 1/2 <= |w| <= 3/2 outside the patch at 1: the angle avoids [-theta0, theta0].
    ValueMass arc_band() const {
        auto f = [&](const UnitNode& nd) {
            const double rho = 0.5 + nd.t;
            const double c = std::clamp((rho * rho + 0.75) / (2.0 * rho), -1.0, 1.0);
            const double th0 = std::acos(c);
            const double span = 2.0 * std::numbers::pi - 2.0 * th0;
            ValueMass acc;
            for (int i = 0; i < kArcPanels; ++i) {
                const double lo = th0 + span * i / kArcPanels, hi = lo + span / kArcPanels;
                acc += gauss([&](double th) { return scaled_integrand(std::polar(rho, th)); }, lo, hi);
            }
            return acc * (rho / (2.0 * std::numbers::pi));
        };
        QuadValue v = tanh_sinh_unit(f, opt_.tolerance);
        check(v, "the band around the patch at s");
        return v.result;
    }

    // 3/2 <= |w| <= 2, full circles.
    ValueMass outer_band() const {
        return gauss(
            [&](double rho) {
                return circle_mean(kRingAngles, [&](double th) { return scaled_integrand(std::polar(rho, th)).value; }) *
                       rho;
            },
            1.5, 2.0);
    }

    double weight(double rho) const {
        if (!opt_.radial_weight || rho <= opt_.flat_radius) return 1.0;
        return opt_.radial_weight(rho);
    }

    // 2|s| <= |u| <= R in the original coordinates, dyadic panels.
    ValueMass annulus() const {
        const double lo = 2.0 * sigma_, hi = opt_.outer_radius;
        if (hi <= lo) return {};
        std::vector<double> edges{lo};
        for (double r = 2.0 * lo; r < hi; r *= 2.0) edges.push_back(r);
        for (double r : opt_.breaks)
            if (r > lo && r < hi) edges.push_back(r);
        edges.push_back(hi);
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

        auto ring = [&](double rho) {
            const double l2 = std::log(rho * rho), wt = weight(rho);
            ValueMass m = circle_mean(kAnnulusAngles, [&](double th) {
                Complex u = std::polar(rho, th);
                Complex d = s_ - u;
                double l1 = std::log(std::norm(d));
                return std::exp(k_.a * l1 + k_.b * l2) * ipow(d, k_.p) * ipow(omega(u), k_.q) * ipow(l1, k_.j);
            });
            return m * (rho * wt * ipow(l2, k_.k));
        };
        ValueMass acc;
        for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
            if (edges[i + 1] - edges[i] < 1e-15 * hi) continue;
            acc += gauss(ring, edges[i], edges[i + 1]);
        }
        return acc;
    }

    const DiskKernel& k_;
    const DiskOptions& opt_;
    Complex s_;
    double sigma_;
    double ell_;
};

}  // namespace

ValueMass integrate_kernel_disk(const DiskKernel& kernel, Complex s, const DiskOptions& options) {
    const double sigma = std::abs(s);
    if (!(sigma > 0)) throw DomainError("kernel integral needs s != 0");
    if (2.0 * sigma > options.outer_radius) throw DomainError("kernel integral needs 2|s| <= outer radius");
    if (options.radial_weight && 2.0 * sigma > options.flat_radius)
        throw DomainError("radial weight must be flat on |u| <= 2|s|");
    if (!(kernel.a + kernel.p / 2.0 > -1.0) || !(kernel.b + kernel.q / 2.0 > -1.0))
        throw DomainError("kernel not integrable: need a + p/2 > -1 and b + q/2 > -1");
    return Evaluator(kernel, s, options).total();
}

}  // namespace asymconv
