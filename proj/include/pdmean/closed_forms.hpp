#ifndef PDMEAN_CLOSED_FORMS_HPP
#define PDMEAN_CLOSED_FORMS_HPP

#include <functional>
#include <optional>
#include <string>

#include "pdmean/measure.hpp"

namespace pdmean {

// Analytic special-case law used as ground truth against the generic
// pipeline.
struct ClosedForm {
    std::string name;
    double lo = 0.0;
    double hi = 1.0;
    std::function<double(double)> density;
    std::function<double(double)> cdf;  // may be empty
};

// Occupation-time density of the skew stable excursion fraction
// (Lamperti's law) for an indicator mean with success probability p.
double lamperti_density(double alpha, double p, double x);
double lamperti_cdf(double alpha, double p, double x);

// Density of the indicator mean at theta = 1 in explicit Bernoulli form,
// including the negative-gamma branch interval for alpha > 1/2.
double bernoulli_pd_alpha1_density(double alpha, double p, double x);

// Density of M_{alpha,1} for a general admitted measure; independent
// evaluation of the theta = 1 boundary jump.
double pd_alpha1_density(const BaseMeasure& measure, double alpha, double y);

// Multiple-angle form for alpha = 1/n; a test identity, valid where the
// imaginary transform part is bounded away from zero.
double pd_alpha1_multiple_angle(const BaseMeasure& measure, int n, double y);

// Density of M_{alpha,1-alpha} via the one-step mixture identity.
double pd_alpha_one_minus_alpha_density(const BaseMeasure& measure, double alpha, double t);

// Occupation-fraction density of the skew Bessel bridge (indicator mean of
// the (alpha,alpha) family) as a single kernel integral.
double pd_alpha_alpha_density_bernoulli(double alpha, double p, double y);

// Beta closures built on log-gamma and the continued-fraction incomplete
// beta.
ClosedForm beta_closed_form(double a, double b);

// Indicator mean of the Dirichlet regime: Beta(theta p, theta (1-p)).
ClosedForm dirichlet_indicator_closed_form(double theta, double p);

// Indicator mean at alpha = 1/2, p = 1/2: Beta(theta + 1/2, theta + 1/2).
ClosedForm half_stable_indicator_closed_form(double theta);

// Stable mean of the uniform base measure, in closed form.
double stable_uniform_density(double alpha, double y);

// Dirichlet (theta = 1) mean of the uniform base measure. The second
// argument selects the variant with exponent -(1+y) on (1-y) instead of the
// classical -(1-y); the validation suite reports which one the integral
// formula reproduces.
double dirichlet_uniform_unit_density(double y, bool plus_exponent_variant = false);

// Lookup for the CLI cross-check escape hatch.
std::optional<ClosedForm> closed_form_by_name(const std::string& name, double alpha,
                                              double theta, double p);

} // namespace pdmean

#endif
