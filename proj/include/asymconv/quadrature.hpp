#pragma once

#include "asymconv/errors.hpp"
#include "asymconv/expansion_algebra.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <vector>

namespace asymconv {

// An integral together with the integral of the absolute integrand; the
// latter bounds the rounding noise left after cancellation.
struct ValueMass {
    Complex value{};
    double mass = 0.0;

    ValueMass& operator+=(const ValueMass& o) {
        value += o.value;
        mass += o.mass;
        return *this;
    }
    friend ValueMass operator+(ValueMass x, const ValueMass& y) { return x += y; }
    friend ValueMass operator*(ValueMass x, double c) {
        x.value *= c;
        x.mass *= std::abs(c);
        return x;
    }
    friend ValueMass operator*(double c, ValueMass x) { return x * c; }
};

struct QuadValue {
    ValueMass result;
    double error = 0.0;
};

// Node of the tanh-sinh rule on (0,1). log_t and one_minus_t stay accurate
// where t itself rounds to 0 or 1.
struct UnitNode {
    double t;
    double log_t;
    double one_minus_t;
};

// Double-exponential rule on (0,1); f(UnitNode) -> ValueMass. Levels are
// refined until two successive estimates agree to rel_tol of the mass.
template <class F>
QuadValue tanh_sinh_unit(F&& f, double rel_tol, int max_level = 9) {
    constexpr double kTauMax = 4.5;
    auto node = [](double tau) {
        const double u = std::numbers::pi / 2 * std::sinh(tau);
        const double e = std::exp(-2.0 * std::abs(u));  // in (0,1]
        UnitNode nd{};
        if (u >= 0) {
            nd.t = 1.0 / (1.0 + e);
            nd.one_minus_t = e / (1.0 + e);
            nd.log_t = -std::log1p(e);
        } else {
            nd.t = e / (1.0 + e);
            nd.one_minus_t = 1.0 / (1.0 + e);
            nd.log_t = -2.0 * std::abs(u) - std::log1p(e);
        }
        const double w = std::numbers::pi * std::cosh(tau) * e / ((1.0 + e) * (1.0 + e));
        return std::pair{nd, w};
    };
    ValueMass sum;
    auto add = [&](double tau) {
        auto [nd, w] = node(tau);
        if (w == 0.0) return;
        sum += f(nd) * w;
    };
    double h = 1.0;
    for (double tau = -kTauMax; tau <= kTauMax + 1e-12; tau += h) add(tau);
    ValueMass prev = sum * h;
    double err = std::numeric_limits<double>::infinity();
    for (int level = 1; level <= max_level; ++level) {
        h /= 2;
        for (double tau = -kTauMax + h; tau < kTauMax; tau += 2 * h) add(tau);
        ValueMass cur = sum * h;
        err = std::abs(cur.value - prev.value);
        prev = cur;
        if (level >= 3 && err <= rel_tol * cur.mass) return {cur, err};
    }
    return {prev, err};
}

struct DiskKernel {
    double a = 0.0;
    double b = 0.0;
    int p = 0;
    int q = 0;
    int j = 0;
    int k = 0;
    Chirality chirality = Chirality::Holo;
};

struct DiskOptions {
    double outer_radius = 1.0;
    // extra factor depending on |u| only; empty means 1
    std::function<double(double)> radial_weight;
    // the weight must equal 1 on |u| <= flat_radius
    double flat_radius = std::numeric_limits<double>::infinity();
    // radii where the weight fails to be analytic
    std::vector<double> breaks;
    double tolerance = 1e-12;
};

// (1/2pi) * integral over |u| <= R of
//   |s-u|^{2a} (s-u)^p log^j|s-u|^2  |u|^{2b} w^q log^k|u|^2  weight(|u|)  dA(u)
// with w = u (Holo) or conj(u) (Anti).
ValueMass integrate_kernel_disk(const DiskKernel& kernel, Complex s, const DiskOptions& options = {});

}  // namespace asymconv
