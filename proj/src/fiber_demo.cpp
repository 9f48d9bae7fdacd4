#include "asymconv/fiber_demo.hpp"

#include "asymconv/errors.hpp"
#include "asymconv/quadrature.hpp"

#include <boost/math/tools/minima.hpp>

#include <cmath>
#include <numbers>

namespace asymconv {

namespace {

constexpr double kRoundoff = 1e-14;
// half width of the exponent search window, in sigma powers
constexpr double kExponentWindow = 0.05;

double max_radius(const SampleGrid& grid) {
    double r = 0.0;
    for (double x : grid.radii) r = std::max(r, x);
    return r;
}

}  // namespace

double Bump::operator()(double r) const {
    if (r <= plateau) return 1.0;
    if (r >= support) return 0.0;
    const double t = (r - plateau) / (support - plateau);
    return 1.0 - t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

void validate(const Bump& bump) {
    if (!(bump.plateau > 0.0 && bump.plateau < bump.support && bump.support <= 1.0))
        throw DomainError("bump needs 0 < plateau < support <= 1");
}

void validate(const MonomialGerm& germ) {
    if (germ.exponent < 1) throw DomainError("germ exponent must be >= 1");
    validate(germ.bump);
}

double monomial_fiber_integral(const MonomialGerm& germ, Complex s) {
    validate(germ);
    const int n = germ.exponent;
    const double mod = std::abs(s);
    if (mod == 0.0) throw DomainError("fiber integral is singular at s = 0");
    if (mod > std::pow(germ.bump.support, n)) throw DomainError("s lies outside the image of the bump support");
    const double r = std::pow(mod, 1.0 / n);
    const double phase = std::arg(s);
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const Complex x = std::polar(r, (phase + 2.0 * std::numbers::pi * i) / n);
        acc += germ.bump(std::abs(x)) / (static_cast<double>(n) * n * std::pow(std::norm(x), n - 1));
    }
    return acc;
}

SingularTerm leading_fiber_term(const MonomialGerm& germ) {
    validate(germ);
    SingularTerm t;
    t.r = Rational(1, germ.exponent) - 1;
    t.poly = LogPolynomial::monomial(0, Complex(1.0 / germ.exponent, 0.0));
    return t;
}

SampleGrid demo_grid(int count) {
    SampleGrid g;
    double r = 0.05;
    for (int i = 0; i < count; ++i, r /= 2) g.radii.push_back(r);
    return g;
}

std::pair<MonomialGerm, MonomialGerm> default_demo_germs(int n, int m, const SampleGrid& grid) {
    if (n < 1 || m < 1) throw DomainError("germ exponents must be >= 1");
    // the kernel integrator wants the second weight flat on |u| <= 2 |s|
    const double plateau2 = std::max(0.5, 1.05 * std::pow(2.0 * max_radius(grid), 1.0 / m));
    if (!(plateau2 < 0.95)) throw DomainError("grid radii too large for the second bump");
    MonomialGerm g2{m, Bump{plateau2, 0.5 * (1.0 + plateau2)}};
    const double need = std::pow(std::pow(g2.bump.support, m) + max_radius(grid), 1.0 / n);
    if (!(need < 0.99)) throw DomainError("grid radii too large for a flat first bump");
    MonomialGerm g1{n, Bump{std::max(0.95, need), 1.0}};
    return {g1, g2};
}

DemoReport convolution_demo(const MonomialGerm& g1, const MonomialGerm& g2, const SampleGrid& grid) {
    validate(g1);
    validate(g2);
    validate(grid, 1);
    const int n = g1.exponent, m = g2.exponent;
    const double outer = std::pow(g2.bump.support, m);
    if (std::pow(g1.bump.plateau, n) < outer + max_radius(grid))
        throw DomainError("first bump is not flat over the convolution region");

    DemoReport rep;
    rep.n = n;
    rep.m = m;
    rep.predicted_exponent = Rational(1, n) + Rational(1, m) - 1;

    const SingularTerm t1 = leading_fiber_term(g1), t2 = leading_fiber_term(g2);
    const ConvolutionResult pred = convolve_terms(t1, t2);
    rep.tag = pred.tag;
    rep.degree = pred.degree;
    rep.predicted_leading = pred.leading_coeff;

    // Phi1(s-u) = |s-u|^{2a}/N on the region; Phi2(u) = |u|^{2b} bump2(|u|^{1/M}) / M
    const DiskKernel kernel{to_double(t1.r), to_double(t2.r), 0, 0, 0, 0, Chirality::Holo};
    DiskOptions opt;
    opt.outer_radius = outer;
    opt.flat_radius = std::pow(g2.bump.plateau, m);
    opt.breaks = {opt.flat_radius};
    opt.radial_weight = [bump = g2.bump, m](double r) { return bump(std::pow(r, 1.0 / m)); };
    opt.tolerance = grid.tolerance;
    const double scale = 1.0 / (static_cast<double>(n) * m);

    Samples samples;
    for (double sg : grid.radii) {
        ValueMass acc;
        for (int i = 0; i < grid.angles; ++i) {
            const double phi = 0.3 + 2.0 * std::numbers::pi * i / grid.angles;
            acc += integrate_kernel_disk(kernel, std::polar(sg, phi), opt);
        }
        acc = acc * (scale / grid.angles);
        samples.radii.push_back(sg);
        samples.values.push_back(acc.value);
        samples.noise.push_back(kRoundoff * acc.mass);
    }

    FitModel model;
    model.exponent = 2 * rep.predicted_exponent;
    model.nu = 0;
    model.degree = pred.tag == CaseTag::Smooth ? 0 : pred.degree;
    const FitResult fit = fit_samples(samples, model);
    rep.fitted_coeffs = LogPolynomial(fit.singular);
    rep.condition_number = fit.condition_number;
    rep.residual = fit.residual;
    if (pred.tag == CaseTag::Smooth) {
        double worst = 0.0;
        for (const auto& c : fit.singular) worst = std::max(worst, std::abs(c));
        rep.relative_error = worst;
        return rep;
    }
    rep.fitted_leading = fit.singular.at(static_cast<std::size_t>(pred.degree));
    rep.relative_error = std::abs(rep.fitted_leading - rep.predicted_leading) / std::abs(rep.predicted_leading);

    // Variable projection over the exponent. Smooth powers colliding with the
    // predicted exponent are left out for the whole window.
    const double e0 = to_double(model.exponent);
    ColumnModel cm;
    for (int l = 0; l <= pred.degree; ++l) cm.logs.push_back(l);
    for (int t = 0; t <= kSmoothCutoff; ++t)
        if (std::abs(e0 - 2.0 * t) > 1e-3) cm.smooth_powers.push_back(2 * t);
    auto residual_at = [&](double e) {
        ColumnModel trial = cm;
        trial.exponent = e;
        return fit_columns(samples, trial).residual;
    };
    const auto best = boost::math::tools::brent_find_minima(residual_at, e0 - kExponentWindow, e0 + kExponentWindow, 40);
    rep.fitted_exponent = best.first / 2.0;
    return rep;
}

}  // namespace asymconv
