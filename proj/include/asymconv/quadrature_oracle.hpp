#pragma once

#include "asymconv/convolution_engine.hpp"
#include "asymconv/expansion_algebra.hpp"
#include "asymconv/gamma_kernel.hpp"
#include "asymconv/quadrature.hpp"

#include <vector>

namespace asymconv {

inline constexpr int kSmoothCutoff = 4;
inline constexpr double kResonanceGap = 1e-3;
inline constexpr double kMaxCondition = 1e8;

struct KernelSpec {
    Rational a{0};
    Rational b{0};
    int p = 0;
    int q = 0;
    int j = 0;
    int k = 0;
    Chirality chirality2 = Chirality::Holo;
};

void validate(const KernelSpec& spec);

struct SampleGrid {
    std::vector<double> radii;  // strictly decreasing, in (0, 1/4]
    int angles = 3;
    double tolerance = 1e-12;
};

// K radii geometric from 0.2 with ratio 1/2.
SampleGrid default_grid(int count = 16);
// default_grid enlarged so that it satisfies the invariant for this spec
SampleGrid default_grid_for(const KernelSpec& spec);
void validate(const SampleGrid& grid, int log_degree);

Complex eval_kernel_integral(const KernelSpec& spec, Complex s, double tolerance = 1e-12);

// c_l sigma^e (log sigma^2)^l for l <= degree, plus sigma^{|nu| + 2t}, t <= smooth_cutoff
struct FitModel {
    Rational exponent{0};
    int nu = 0;
    int degree = 0;
    int smooth_cutoff = kSmoothCutoff;
};

struct FitResult {
    std::vector<Complex> singular;  // index l; a dropped column reads 0
    std::vector<Complex> smooth;    // index t
    double condition_number = 0.0;
    double residual = 0.0;
};

// Values along the radii with an absolute noise estimate for each.
struct Samples {
    std::vector<double> radii;
    std::vector<Complex> values;
    std::vector<double> noise;
};

// Rows are weighted by 1/(|value| + noise). Throws IllConditioned near a
// collision of the singular exponent with the smooth ladder, or when the
// scaled design matrix is too ill-conditioned.
FitResult fit_samples(const Samples& samples, const FitModel& model);

// Explicit column list: sigma^exponent (log sigma^2)^l for l in logs, then
// sigma^power for each smooth power. FitResult::singular is indexed by l.
struct ColumnModel {
    double exponent = 0.0;
    std::vector<int> logs;
    std::vector<int> smooth_powers;
};

FitResult fit_columns(const Samples& samples, const ColumnModel& model);

// Angular projection onto the kernel's Fourier mode, one value per radius.
Samples sample_projection(const KernelSpec& spec, const SampleGrid& grid);

FitModel fit_model_for(const KernelSpec& spec);
FitResult extract_leading_coeffs(const KernelSpec& spec, const SampleGrid& grid);

struct VerificationReport {
    KernelSpec spec;
    CaseTag tag = CaseTag::Generic;
    int degree = 0;
    LogPolynomial fitted_coeffs;
    Complex fitted_leading{};
    Complex closed_form{};
    double raw_constant = 0.0;
    double relative_error = 0.0;
    double condition_number = 0.0;
    double residual = 0.0;
    double normalization_used = 0.0;
};

VerificationReport verify_constant(const KernelSpec& spec, const SampleGrid& grid);
VerificationReport verify_constant(const KernelSpec& spec);

// Coefficient gamma^r_{a,q} from the product of two generalized binomials.
double binomial_fourier_coefficient(double a, int q, int r);

double finite_part_direct(const Param& a, const Param& b, int q, int N);
double finite_part_direct_resonant(const Param& a, const Param& b, int q, int N);

}  // namespace asymconv
