#ifndef PDMEAN_DIST_HPP
#define PDMEAN_DIST_HPP

#include <optional>
#include <string>
#include <vector>

#include "pdmean/kernel.hpp"
#include "pdmean/measure.hpp"
#include "pdmean/params.hpp"

namespace pdmean {

enum class PointFlag { ok, off_theta_set, atom_collision, tolerance_not_met };

std::string to_string(PointFlag f);

struct EvalResult {
    double value = 0.0;
    PointFlag flag = PointFlag::ok;
};

// Density of the normalized stable mean, exact in four Abel transforms.
double stable_density(const BaseMeasure& measure, double alpha, double y);

// Distribution function of the stable mean: phase of the transform parts
// over alpha*pi, continuous across the gamma sign change.
double stable_cdf(const BaseMeasure& measure, double alpha, double x);

// Density and CDF for alpha in (0,1), theta >= 0; routes through the
// boundary-jump integrands with the regime-appropriate inversion path.
EvalResult general_density_ex(const BaseMeasure& measure, const PDParams& params, double y);
double general_density(const BaseMeasure& measure, const PDParams& params, double y);
EvalResult general_cdf_ex(const BaseMeasure& measure, const PDParams& params, double x);
double general_cdf(const BaseMeasure& measure, const PDParams& params, double x);

// Dirichlet regime (alpha = 0). Smooth measures go through the
// differentiated-kernel route; measures with atoms use the classical
// integral formulas, extended by finite-part regularization when an atom
// carries weight >= 1/theta (purely atomic measures, non-integer jump).
double dirichlet_density(const BaseMeasure& measure, double theta, double y);
double dirichlet_cdf(const BaseMeasure& measure, double theta, double x);

struct SymDirichletEval {
    std::optional<double> density;  // only when m*kappa == 1 (or m == 1 with a.c. eta)
    double cdf = 0.0;
};

// Mean of the symmetric Dirichlet mixture of m draws with parameter kappa,
// m*kappa <= 1.
SymDirichletEval symdirichlet_density_cdf(const BaseMeasure& measure, double kappa, int m,
                                          double x);

struct DistGrid {
    PDParams params;
    std::vector<double> points;
    std::vector<double> q;
    std::vector<double> Q;
    std::vector<PointFlag> flags;
};

// Evaluates density and CDF over a sorted grid, one flag per point; per-point
// failures never abort the grid. nthreads > 1 evaluates points in parallel.
DistGrid eval_grid(const BaseMeasure& measure, const PDParams& params,
                   const std::vector<double>& points, int nthreads = 1);

} // namespace pdmean

#endif
