#ifndef PDMEAN_QUADRATURE_HPP
#define PDMEAN_QUADRATURE_HPP

#include <functional>
#include <vector>

#include "pdmean/measure.hpp"

namespace pdmean {

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    bool converged = true;
};

// Interior point where the integrand loses smoothness, with its known
// algebraic behavior |t - x|^exponent (0 for a plain kink).
struct BreakPoint {
    double x;
    double exponent = 0.0;
};

// Integral of integrand(t) * (upper - t)^endpoint_exponent_at_upper over
// (lower, upper). The endpoint weight is applied by the engine from exact
// endpoint offsets, never sampled through cancellation-prone subtraction.
struct WeightedIntegrand {
    double lower = 0.0;
    double upper = 1.0;
    double endpoint_exponent_at_upper = 0.0;
    std::function<double(double)> integrand;
    std::vector<BreakPoint> breakpoints{};
    double lower_exponent = 0.0;   // integrand ~ (t - lower)^lower_exponent near lower
    double abs_tol = 1e-9;
    int max_subdivisions = 2000;
};

QuadResult integrate_endpoint_weight(const WeightedIntegrand& w);

// Double-exponential rule on one panel. The callback receives the node t and
// its exact distances to the panel ends, (t - a, b - t), so integrands with
// endpoint singularities can be evaluated without subtractive cancellation.
QuadResult de_panel(const std::function<double(double, double, double)>& h,
                    double a, double b, double abs_tol, int max_level = 10);

// Convenience wrapper for integrands smooth up to integrable endpoint
// behavior, evaluated as a plain function of t.
QuadResult integrate_smooth(const std::function<double(double)>& f,
                            double a, double b, double abs_tol = 1e-9);

// Principal value of int eta(dx) / (t - x), exact per atom and per linear
// density piece, with the logarithmic terms grouped so that kinks at interior
// breakpoints cancel analytically.
double integrate_pv_log(const BaseMeasure& measure, double t);

} // namespace pdmean

#endif
