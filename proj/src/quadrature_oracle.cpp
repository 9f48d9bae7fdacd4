#include "asymconv/quadrature_oracle.hpp"

#include "asymconv/errors.hpp"

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace asymconv {

namespace {

constexpr double kFirstAngle = 0.3;
// rounding noise relative to the absolute mass of the integrand
constexpr double kRoundoff = 1e-14;
// rows whose value is below this multiple of their noise are left out of the fit
constexpr double kMinSignal = 1e6;

int mode_of(const KernelSpec& spec) {
    return spec.chirality2 == Chirality::Holo ? spec.p + spec.q : spec.p - spec.q;
}

DiskKernel disk_kernel(const KernelSpec& spec) {
    return {to_double(spec.a), to_double(spec.b), spec.p, spec.q, spec.j, spec.k, spec.chirality2};
}

int model_degree(const KernelSpec& spec) {
    CaseConstant cc = case_constant(spec.a, spec.b, spec.p, spec.q, spec.j, spec.k, spec.chirality2);
    return cc.tag == CaseTag::Smooth ? spec.j + spec.k : cc.degree;
}

}  // namespace

void validate(const KernelSpec& spec) {
    if (spec.p < 0 || spec.q < 0 || spec.j < 0 || spec.k < 0) throw DomainError("p, q, j, k must be >= 0");
    if (spec.a + Rational(spec.p, 2) <= Rational(-1)) throw DomainError("a + p/2 > -1 violated");
    if (spec.b + Rational(spec.q, 2) <= Rational(-1)) throw DomainError("b + q/2 > -1 violated");
}

SampleGrid default_grid(int count) {
    SampleGrid g;
    double r = 0.2;
    for (int i = 0; i < count; ++i, r /= 2) g.radii.push_back(r);
    return g;
}

SampleGrid default_grid_for(const KernelSpec& spec) {
    return default_grid(std::max(16, 2 * (std::max(model_degree(spec), 0) + kSmoothCutoff) + 4));
}

void validate(const SampleGrid& grid, int log_degree) {
    if (grid.angles < 1) throw DomainError("grid needs at least one angle");
    if (!(grid.tolerance > 0)) throw DomainError("grid tolerance must be > 0");
    for (std::size_t i = 0; i < grid.radii.size(); ++i) {
        if (!(grid.radii[i] > 0 && grid.radii[i] <= 0.25)) throw DomainError("grid radii must lie in (0, 1/4]");
        if (i > 0 && !(grid.radii[i] < grid.radii[i - 1])) throw DomainError("grid radii must be strictly decreasing");
    }
    const int need = 2 * (std::max(log_degree, 0) + kSmoothCutoff) + 4;
    if (static_cast<int>(grid.radii.size()) < need)
        throw DomainError("grid needs at least " + std::to_string(need) + " radii for this model");
}

Complex eval_kernel_integral(const KernelSpec& spec, Complex s, double tolerance) {
    validate(spec);
    if (std::abs(s) == 0.0) throw DomainError("eval_kernel_integral needs s != 0");
    if (std::abs(s) > 0.25) throw DomainError("eval_kernel_integral needs |s| <= 1/4");
    DiskOptions opt;
    opt.tolerance = tolerance;
    return integrate_kernel_disk(disk_kernel(spec), s, opt).value;
}

namespace {

struct FilteredSamples {
    std::vector<double> radii, noise;
    std::vector<Complex> values;
};

FilteredSamples above_noise(const Samples& samples) {
    if (samples.radii.size() != samples.values.size()) throw DomainError("fit needs one value per radius");
    if (!samples.noise.empty() && samples.noise.size() != samples.values.size())
        throw DomainError("fit needs one noise estimate per radius");
    FilteredSamples out;
    for (std::size_t i = 0; i < samples.radii.size(); ++i) {
        const double n = samples.noise.empty() ? 0.0 : samples.noise[i];
        if (std::abs(samples.values[i]) < kMinSignal * n) continue;
        out.radii.push_back(samples.radii[i]);
        out.values.push_back(samples.values[i]);
        out.noise.push_back(n);
    }
    return out;
}

}  // namespace

FitResult fit_columns(const Samples& samples, const ColumnModel& model) {
    const FilteredSamples fs = above_noise(samples);
    const int ns = static_cast<int>(model.logs.size()), nt = static_cast<int>(model.smooth_powers.size());
    const int rows = static_cast<int>(fs.radii.size()), cols = ns + nt;
    if (cols == 0) throw DomainError("fit needs at least one column");
    if (rows <= cols) throw IllConditioned("fewer samples above the noise floor than model columns");

    Eigen::MatrixXd A(rows, cols);
    Eigen::MatrixXd rhs(rows, 2);
    for (int i = 0; i < rows; ++i) {
        const double sg = fs.radii[i], ell = std::log(sg * sg);
        const double w = 1.0 / std::max(std::abs(fs.values[i]) + fs.noise[i], 1e-300);
        for (int c = 0; c < ns; ++c) A(i, c) = w * std::pow(sg, model.exponent) * std::pow(ell, model.logs[c]);
        for (int t = 0; t < nt; ++t) A(i, ns + t) = w * std::pow(sg, model.smooth_powers[t]);
        rhs(i, 0) = w * fs.values[i].real();
        rhs(i, 1) = w * fs.values[i].imag();
    }
    Eigen::VectorXd norms = A.colwise().norm();
    for (int c = 0; c < cols; ++c) A.col(c) /= norms(c);

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    FitResult out;
    out.condition_number = sv(0) / sv(sv.size() - 1);
    if (!(out.condition_number < kMaxCondition))
        throw IllConditioned("design matrix condition number " + std::to_string(out.condition_number));
    Eigen::MatrixXd x = svd.solve(rhs);
    out.residual = (A * x - rhs).norm() / std::sqrt(static_cast<double>(rows));
    for (int c = 0; c < cols; ++c) x.row(c) /= norms(c);

    int top = -1;
    for (int l : model.logs) top = std::max(top, l);
    out.singular.assign(static_cast<std::size_t>(top + 1), Complex{});
    for (int c = 0; c < ns; ++c) out.singular[static_cast<std::size_t>(model.logs[c])] = {x(c, 0), x(c, 1)};
    for (int t = 0; t < nt; ++t) out.smooth.emplace_back(x(ns + t, 0), x(ns + t, 1));
    return out;
}

FitResult fit_samples(const Samples& samples, const FitModel& model) {
    const int base = std::abs(model.nu);
    const double e = to_double(model.exponent);
    bool drop_constant = false;
    const Rational gap = model.exponent - base;
    if (gap >= Rational(0) && is_integer(gap / 2) && (gap / 2).numerator() <= model.smooth_cutoff) {
        drop_constant = true;
    } else {
        for (int t = 0; t <= model.smooth_cutoff; ++t) {
            double d = std::abs(e - (base + 2.0 * t));
            if (d < kResonanceGap)
                throw IllConditioned("singular exponent within " + std::to_string(d) +
                                     " of a smooth power; use the resonant model");
        }
    }
    ColumnModel cm;
    cm.exponent = e;
    for (int l = drop_constant ? 1 : 0; l <= model.degree; ++l) cm.logs.push_back(l);
    const int ns = static_cast<int>(cm.logs.size());
    // shorten the smooth ladder when the noise floor leaves too few rows
    const int rows = static_cast<int>(above_noise(samples).radii.size());
    const int nt = std::min(model.smooth_cutoff + 1, rows - ns - 1);
    if (nt < 1) throw IllConditioned("fewer samples above the noise floor than model columns");
    for (int t = 0; t < nt; ++t) cm.smooth_powers.push_back(base + 2 * t);

    FitResult out = fit_columns(samples, cm);
    out.singular.resize(static_cast<std::size_t>(std::max(model.degree + 1, 0)), Complex{});
    return out;
}

Samples sample_projection(const KernelSpec& spec, const SampleGrid& grid) {
    validate(spec);
    const int nu = mode_of(spec);
    DiskOptions opt;
    opt.tolerance = grid.tolerance;
    Samples out;
    for (double sg : grid.radii) {
        ValueMass acc;
        for (int m = 0; m < grid.angles; ++m) {
            const double phi = kFirstAngle + 2.0 * std::numbers::pi * m / grid.angles;
            ValueMass v = integrate_kernel_disk(disk_kernel(spec), std::polar(sg, phi), opt);
            acc += ValueMass{v.value * std::polar(1.0, -nu * phi), v.mass};
        }
        acc = acc * (1.0 / grid.angles);
        out.radii.push_back(sg);
        out.values.push_back(acc.value);
        out.noise.push_back(kRoundoff * acc.mass);
    }
    return out;
}

FitModel fit_model_for(const KernelSpec& spec) {
    FitModel m;
    m.exponent = 2 * (spec.a + spec.b + 1) + spec.p + spec.q;
    m.nu = mode_of(spec);
    m.degree = model_degree(spec);
    return m;
}

FitResult extract_leading_coeffs(const KernelSpec& spec, const SampleGrid& grid) {
    validate(spec);
    FitModel model = fit_model_for(spec);
    validate(grid, model.degree);
    return fit_samples(sample_projection(spec, grid), model);
}

VerificationReport verify_constant(const KernelSpec& spec, const SampleGrid& grid) {
    validate(spec);
    const CaseConstant cc = case_constant(spec.a, spec.b, spec.p, spec.q, spec.j, spec.k, spec.chirality2);
    const FitModel model = fit_model_for(spec);
    validate(grid, model.degree);
    const Samples samples = sample_projection(spec, grid);

    VerificationReport rep;
    rep.spec = spec;
    rep.tag = cc.tag;
    rep.degree = cc.degree;
    rep.raw_constant = cc.raw;
    // a smooth kernel whose projected mode vanishes identically has nothing to fit
    if (cc.tag == CaseTag::Smooth && above_noise(samples).radii.empty()) {
        for (const auto& v : samples.values) rep.residual = std::max(rep.residual, std::abs(v));
        return rep;
    }
    const FitResult fit = fit_samples(samples, model);
    rep.fitted_coeffs = LogPolynomial(fit.singular);
    rep.condition_number = fit.condition_number;
    rep.residual = fit.residual;
    if (cc.tag == CaseTag::Smooth) {
        double worst = 0.0;
        for (const auto& c : fit.singular) worst = std::max(worst, std::abs(c));
        rep.relative_error = worst;
        return rep;
    }
    rep.fitted_leading = fit.singular.at(static_cast<std::size_t>(cc.degree));
    rep.closed_form = cc.leading();
    rep.relative_error = std::abs(rep.fitted_leading - rep.closed_form) / std::abs(rep.closed_form);
    rep.normalization_used = rep.fitted_leading.real() / cc.raw;
    return rep;
}

VerificationReport verify_constant(const KernelSpec& spec) { return verify_constant(spec, default_grid_for(spec)); }

double binomial_fourier_coefficient(double a, int q, int r) {
    if (r < q || (r - q) % 2 != 0) return 0.0;
    auto gbinom = [a](int n) {
        double c = 1.0;
        for (int i = 0; i < n; ++i) c *= (a - i) / (i + 1);
        return c;
    };
    return (r % 2 == 0 ? 1.0 : -1.0) * gbinom((r + q) / 2) * gbinom((r - q) / 2);
}

namespace {

// Constant term of (1/2pi) int_{|t|<R} |1-t|^{2a} t^q |t|^{2b} dA as R -> infinity:
// the disk |t| <= 3 numerically, the outside through the angular series in 1/|t|.
double finite_part(double a, double b, int q, int N, bool resonant) {
    const double r0 = 2.0 * (a + b + 1.0) + q;
    if (!(N > r0 + 1.0)) throw DomainError("finite part needs N > 2(a+b+1)+q+1");
    const int rres = static_cast<int>(std::lround(r0));

    DiskOptions opt;
    opt.outer_radius = 3.0;
    const double inner = integrate_kernel_disk({a, b, 0, q, 0, 0, Chirality::Holo}, Complex(1.0, 0.0), opt).value.real();

    std::vector<double> gam;
    const int tail = N + 80;
    for (int r = 0; r <= tail; ++r) gam.push_back(binomial_fourier_coefficient(a, q, r));

    double subtracted = 0.0;
    for (int r = 0; r <= N; ++r) {
        if (resonant && r == rres)
            subtracted += gam[r] * std::log(3.0);
        else
            subtracted += gam[r] * std::pow(3.0, r0 - r) / (r0 - r);
    }

    auto angular_mean = [&](double x) {
        constexpr int n = 64;
        double acc = 0.0;
        for (int i = 0; i < n; ++i) {
            const double th = 2.0 * std::numbers::pi * i / n;
            acc += std::exp(a * std::log(std::norm(1.0 - std::polar(x, -th)))) * std::cos(q * th);
        }
        return acc / n;
    };
    auto remainder = [&](double x) {
        double partial = 0.0, xr = 1.0;
        for (int r = 0; r <= N; ++r, xr *= x) partial += gam[r] * xr;
        return std::pow(x, -r0 - 1.0) * (angular_mean(x) - partial);
    };
    using G30 = boost::math::quadrature::gauss<double, 30>;
    const double split = 1.0 / 12.0;
    double outer = G30::integrate(remainder, split, 1.0 / 6.0) + G30::integrate(remainder, 1.0 / 6.0, 1.0 / 3.0);
    for (int r = N + 1; r <= tail; ++r) outer += gam[r] * std::pow(split, r - r0) / (r - r0);

    return inner - subtracted + outer;
}

}  // namespace

double finite_part_direct(const Param& a, const Param& b, int q, int N) {
    if (!(a.value() > -1.0) || !(b.value() + q / 2.0 > -1.0) || q < 0)
        throw DomainError("finite part needs a > -1, b + q/2 > -1, q >= 0");
    if ((a + b + 1).is_natural()) throw DomainError("a + b + 1 in N: use the resonant finite part");
    return finite_part(a.value(), b.value(), q, N, false);
}

double finite_part_direct_resonant(const Param& a, const Param& b, int q, int N) {
    if (!(a.value() > -1.0) || !(b.value() + q / 2.0 > -1.0) || q < 0)
        throw DomainError("finite part needs a > -1, b + q/2 > -1, q >= 0");
    if (!(a + b + 1).is_natural()) throw DomainError("resonant finite part needs a + b + 1 in N");
    return finite_part(a.value(), b.value(), q, N, true);
}

}  // namespace asymconv
