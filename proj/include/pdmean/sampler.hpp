#ifndef PDMEAN_SAMPLER_HPP
#define PDMEAN_SAMPLER_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "pdmean/measure.hpp"
#include "pdmean/params.hpp"

namespace pdmean {

// Deterministic generator: the raw mt19937_64 stream is pinned by the
// standard, and all variate transforms below are hand-rolled, so equal seeds
// give bit-identical batches on any platform.
class Rng {
public:
    explicit Rng(uint64_t seed) : eng_(seed) {}
    double u01() { return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1.0p-53; }
    double normal();
    double gamma(double shape);
    double beta(double a, double b);

private:
    std::mt19937_64 eng_;
};

// Stream splitter for counter-keyed randomness (splitmix64 finalizer).
uint64_t mix_seed(uint64_t a, uint64_t b);

struct SamplerConfig {
    uint64_t seed = 0;
    double stick_tail_mass = 1e-12;
    double cftp_epsilon = 1e-9;
    int cftp_start_depth = 16;
    double invcdf_tol = 1e-12;
    // Stick residuals decay only polynomially when alpha > 0, so waiting for
    // stick_tail_mass alone is infeasible there. Once the remaining mass
    // times the spread of the remaining mean, resid * sqrt((1-a)/(theta_k+1)),
    // falls below this, the residual is closed out at the base-measure mean.
    double stick_dist_tol = 1e-3;
};

enum class SampleMethod { stick, invcdf_stable, recursion, cftp, symdirichlet_direct };

std::string to_string(SampleMethod m);

struct SampleDiagnostics {
    std::map<int, long> depth_histogram;  // truncation or coalescence depth counts
    long cftp_restarts = 0;
};

struct SampleBatch {
    std::vector<double> values;
    SampleMethod method = SampleMethod::stick;
    uint64_t seed = 0;
    SampleDiagnostics diagnostics;
    size_t n() const { return values.size(); }
};

// One draw from the base measure.
double draw_from_measure(const BaseMeasure& measure, Rng& rng);

// Size-biased stick-breaking representation; truncated when the remaining
// mass falls below stick_tail_mass, the residual going to one fresh draw.
SampleBatch sample_stick(const BaseMeasure& measure, const PDParams& params, size_t n,
                         const SamplerConfig& config);

// Stable mean via inverse-CDF bisection on the closed-form distribution
// function.
SampleBatch sample_stable_invcdf(const BaseMeasure& measure, double alpha, size_t n,
                                 const SamplerConfig& config);

// Dirichlet-mean construction over the stable law, unrolled as the weighted
// series of independent stable draws.
SampleBatch sample_recursion(const BaseMeasure& measure, const PDParams& params, size_t n,
                             const SamplerConfig& config);

// Coupling from the past on the affine recursion, with the random pairs
// keyed by absolute negative time so restarts reuse identical randomness.
SampleBatch sample_cftp(const BaseMeasure& measure, const PDParams& params, size_t n,
                        const SamplerConfig& config);

// Exact sampler for the symmetric Dirichlet mixture of m draws.
SampleBatch sample_symdirichlet(const BaseMeasure& measure, double kappa, int m, size_t n,
                                const SamplerConfig& config);

// sup_x |empirical cdf - cdf(x)| over the sample points.
double ks_distance(const SampleBatch& batch, const std::function<double(double)>& cdf);

double ks_distance_two_sample(const SampleBatch& a, const SampleBatch& b);

} // namespace pdmean

#endif
