#ifndef PDMEAN_KERNEL_HPP
#define PDMEAN_KERNEL_HPP

#include "pdmean/measure.hpp"
#include "pdmean/params.hpp"

namespace pdmean {

struct GammaZeta {
    double gamma = 0.0;
    double zeta = 0.0;
    double radius_sq() const { return gamma * gamma + zeta * zeta; }
};

// gamma_a(t) = cos(a pi) A_{eta,a}(t) + A+_{eta,a}(t),
// zeta_a(t)  = sin(a pi) A_{eta,a}(t).
// Valid for any exponent a > -1; the density formulas use a = alpha and
// a = alpha - 1.
GammaZeta gamma_zeta(const BaseMeasure& measure, double a, double t);

// Principal argument of gamma + i*zeta at exponent alpha, in [0, pi].
// Continuous across sign changes of gamma.
double phase(const BaseMeasure& measure, double alpha, double t);

// rho_{alpha,theta}(t) = (theta/alpha) * phase. Matches the arctan-plus-
// indicator convention since zeta_alpha >= 0.
double rho(const BaseMeasure& measure, const PDParams& params, double t);

// Boundary jump of the order-theta transform across the real axis:
// sin(rho) / (pi (zeta^2+gamma^2)^{theta/(2 alpha)}). Zero outside the hull.
double delta(const BaseMeasure& measure, const PDParams& params, double t);

// Boundary jump of the order-(theta+1) transform. The phase here is
// ((theta+alpha)/alpha) * arg(gamma + i zeta); at theta = 0 this reduces to
// the stable mean density. Zero outside the hull.
double delta_tilde(const BaseMeasure& measure, const PDParams& params, double t);

// Generalized Cauchy-Stieltjes transform E[(z+M)^{-order}] in closed form,
// for order = theta or theta + 1 in each regime. Real z > 0 only.
double stieltjes_forward(const BaseMeasure& measure, const PDParams& params,
                         double z, double order);

struct KernelEval {
    double t = 0.0;
    double gamma = 0.0;
    double zeta = 0.0;
    double rho = 0.0;
    double delta = 0.0;
    double delta_tilde = 0.0;
};

KernelEval eval_kernel(const BaseMeasure& measure, const PDParams& params, double t);

} // namespace pdmean

#endif
