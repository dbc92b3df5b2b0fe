#include "pdmean/sampler.hpp"
#include "pdmean/dist.hpp"
#include "pdmean/errors.hpp"

#include <algorithm>
#include <cmath>

namespace pdmean {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr long kCftpDepthCap = 1L << 24;
} // namespace

double Rng::normal() {
    double u1 = u01();
    double u2 = u01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

double Rng::gamma(double shape) {
    if (shape < 1.0) {
        // boost the shape, then scale back
        double g = gamma(shape + 1.0);
        return g * std::pow(u01(), 1.0 / shape);
    }
    // Marsaglia-Tsang squeeze
    double d = shape - 1.0 / 3.0;
    double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        double u = u01();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

double Rng::beta(double a, double b) {
    double ga = gamma(a);
    double gb = gamma(b);
    return ga / (ga + gb);
}

uint64_t mix_seed(uint64_t a, uint64_t b) {
    uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::string to_string(SampleMethod m) {
    switch (m) {
        case SampleMethod::stick: return "stick";
        case SampleMethod::invcdf_stable: return "invcdf_stable";
        case SampleMethod::recursion: return "recursion";
        case SampleMethod::cftp: return "cftp";
        case SampleMethod::symdirichlet_direct: return "symdirichlet_direct";
    }
    return "unknown";
}

double draw_from_measure(const BaseMeasure& measure, Rng& rng) {
    double u = rng.u01();
    double cum = 0.0;
    for (const auto& a : measure.atoms()) {
        cum += a.w;
        if (u <= cum) return a.x;
    }
    for (const auto& p : measure.ac_pieces()) {
        double m = p.mass();
        if (u > cum + m) {
            cum += m;
            continue;
        }
        double target = u - cum;  // mass inside this piece
        double slope = p.slope();
        if (std::fabs(slope) < 1e-14 * std::max(p.p0, 1.0)) {
            return p.x0 + target / std::max(p.p0, 1e-300);
        }
        // solve p0 d + slope d^2/2 = target
        double disc = p.p0 * p.p0 + 2.0 * slope * target;
        double d = (-p.p0 + std::sqrt(std::max(disc, 0.0))) / slope;
        return std::clamp(p.x0 + d, p.x0, p.x1);
    }
    // numerical slack at u ~ 1
    SupportHull h = measure.hull();
    return h.hi;
}

SampleBatch sample_stick(const BaseMeasure& measure, const PDParams& params, size_t n,
                         const SamplerConfig& config) {
    const double alpha = params.alpha;
    const double theta = params.theta;
    if (!(alpha >= 0.0 && alpha < 1.0))
        throw UnsupportedCombination("stick sampler needs alpha in [0,1)");
    if (!(theta > -alpha))
        throw UnsupportedCombination("stick sampler needs theta > -alpha");

    SampleBatch batch;
    batch.method = SampleMethod::stick;
    batch.seed = config.seed;
    batch.values.reserve(n);
    Rng rng(mix_seed(config.seed, 0x5713ULL));

    // mean of eta, used to close out a concentrated residual
    double eta_mean = 0.0;
    for (const auto& a : measure.atoms()) eta_mean += a.w * a.x;
    for (const auto& p : measure.ac_pieces())
        eta_mean += p.mass() * 0.5 * (p.x0 + p.x1) +
                    p.slope() * std::pow(p.x1 - p.x0, 3) / 12.0;

    for (size_t i = 0; i < n; ++i) {
        double total = 0.0;
        double resid = 1.0;
        int depth = 0;
        bool concentrated = false;
        while (resid >= config.stick_tail_mass && depth < 200000) {
            // the remaining normalized weights follow the same law at
            // theta + depth*alpha, whose mean has spread ~ sqrt((1-a)/(th+1))
            if (alpha > 0.0 &&
                resid * std::sqrt((1.0 - alpha) / (theta + depth * alpha + 1.0)) <
                    config.stick_dist_tol) {
                concentrated = true;
                break;
            }
            ++depth;
            double v = rng.beta(1.0 - alpha, theta + depth * alpha);
            total += v * resid * draw_from_measure(measure, rng);
            resid *= (1.0 - v);
        }
        total += resid * (concentrated ? eta_mean : draw_from_measure(measure, rng));
        batch.values.push_back(total);
        batch.diagnostics.depth_histogram[depth]++;
    }
    return batch;
}

namespace {

double invert_stable_cdf(const BaseMeasure& measure, double alpha, double u, double tol) {
    SupportHull h = measure.hull();
    double lo = h.lo, hi = h.hi;
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        if (stable_cdf(measure, alpha, mid) < u) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

SampleBatch sample_stable_invcdf(const BaseMeasure& measure, double alpha, size_t n,
                                 const SamplerConfig& config) {
    SampleBatch batch;
    batch.method = SampleMethod::invcdf_stable;
    batch.seed = config.seed;
    batch.values.reserve(n);
    Rng rng(mix_seed(config.seed, 0xA5A5ULL));
    for (size_t i = 0; i < n; ++i)
        batch.values.push_back(invert_stable_cdf(measure, alpha, rng.u01(), config.invcdf_tol));
    return batch;
}

SampleBatch sample_recursion(const BaseMeasure& measure, const PDParams& params, size_t n,
                             const SamplerConfig& config) {
    const double alpha = params.alpha;
    const double theta = params.theta;
    if (!(alpha > 0.0 && alpha < 1.0) || !(theta > 0.0))
        throw UnsupportedCombination("recursion sampler needs alpha in (0,1) and theta > 0");

    SampleBatch batch;
    batch.method = SampleMethod::recursion;
    batch.seed = config.seed;
    batch.values.reserve(n);
    Rng rng(mix_seed(config.seed, 0xD15CULL));
    for (size_t i = 0; i < n; ++i) {
        // M = sum_j (1-B_j) prod_{i<j} B_i X_j with B ~ Beta(theta,1) and
        // X_j independent stable means
        double total = 0.0;
        double prod = 1.0;
        int depth = 0;
        while (prod >= config.stick_tail_mass && depth < 100000) {
            ++depth;
            double b = std::pow(rng.u01(), 1.0 / theta);
            double x = invert_stable_cdf(measure, alpha, rng.u01(), config.invcdf_tol);
            total += (1.0 - b) * prod * x;
            prod *= b;
        }
        total += prod * invert_stable_cdf(measure, alpha, rng.u01(), config.invcdf_tol);
        batch.values.push_back(total);
        batch.diagnostics.depth_histogram[depth]++;
    }
    return batch;
}

SampleBatch sample_cftp(const BaseMeasure& measure, const PDParams& params, size_t n,
                        const SamplerConfig& config) {
    const double alpha = params.alpha;
    const double theta = params.theta;
    if (!(alpha > 0.0 && alpha < 1.0) || !(theta > 0.0))
        throw UnsupportedCombination("cftp sampler needs alpha in (0,1) and theta > 0");
    SupportHull hull = measure.hull();
    if (!std::isfinite(hull.lo) || !std::isfinite(hull.hi))
        throw UnsupportedCombination("cftp needs a bounded support hull");

    SampleBatch batch;
    batch.method = SampleMethod::cftp;
    batch.seed = config.seed;
    batch.values.reserve(n);

    for (size_t i = 0; i < n; ++i) {
        // pair at absolute negative time t, identical across restarts
        auto pair_at = [&](long t, double& b, double& x) {
            Rng r(mix_seed(mix_seed(config.seed, i), static_cast<uint64_t>(t)));
            b = 1.0 - std::pow(r.u01(), 1.0 / theta);  // Beta(1, theta)
            x = invert_stable_cdf(measure, alpha, r.u01(), config.invcdf_tol);
        };
        long depth = config.cftp_start_depth;
        for (;;) {
            double up = hull.hi, lo = hull.lo;
            for (long t = depth; t >= 1; --t) {
                double b, x;
                pair_at(t, b, x);
                up = b * x + (1.0 - b) * up;
                lo = b * x + (1.0 - b) * lo;
            }
            if (up - lo < config.cftp_epsilon) {
                batch.values.push_back(0.5 * (up + lo));
                batch.diagnostics.depth_histogram[static_cast<int>(depth)]++;
                break;
            }
            depth *= 2;
            batch.diagnostics.cftp_restarts++;
            if (depth > kCftpDepthCap)
                throw CoalescenceFailure("chains failed to coalesce within the depth budget");
        }
    }
    return batch;
}

SampleBatch sample_symdirichlet(const BaseMeasure& measure, double kappa, int m, size_t n,
                                const SamplerConfig& config) {
    if (!(kappa > 0.0) || m < 1)
        throw UnsupportedCombination("symmetric dirichlet sampler needs kappa > 0 and m >= 1");
    SampleBatch batch;
    batch.method = SampleMethod::symdirichlet_direct;
    batch.seed = config.seed;
    batch.values.reserve(n);
    Rng rng(mix_seed(config.seed, 0x51D1ULL));
    std::vector<double> g(m);
    for (size_t i = 0; i < n; ++i) {
        double gsum = 0.0;
        for (int j = 0; j < m; ++j) {
            g[j] = rng.gamma(kappa);
            gsum += g[j];
        }
        double total = 0.0;
        for (int j = 0; j < m; ++j) total += g[j] / gsum * draw_from_measure(measure, rng);
        batch.values.push_back(total);
    }
    return batch;
}

double ks_distance(const SampleBatch& batch, const std::function<double(double)>& cdf) {
    std::vector<double> xs = batch.values;
    std::sort(xs.begin(), xs.end());
    size_t n = xs.size();
    double d = 0.0;
    size_t i = 0;
    while (i < n) {
        size_t j = i;
        while (j < n && xs[j] == xs[i]) ++j;  // tie block
        double f = cdf(xs[i]);
        double fl = cdf(xs[i] - 1e-12 * (1.0 + std::fabs(xs[i])));  // left limit for step cdfs
        d = std::max(d, std::fabs(f - static_cast<double>(j) / n));
        d = std::max(d, std::fabs(fl - static_cast<double>(i) / n));
        i = j;
    }
    return d;
}

double ks_distance_two_sample(const SampleBatch& a, const SampleBatch& b) {
    std::vector<double> xa = a.values, xb = b.values;
    std::sort(xa.begin(), xa.end());
    std::sort(xb.begin(), xb.end());
    size_t i = 0, j = 0;
    double d = 0.0;
    while (i < xa.size() || j < xb.size()) {
        double v;
        if (i >= xa.size()) v = xb[j];
        else if (j >= xb.size()) v = xa[i];
        else v = std::min(xa[i], xb[j]);
        while (i < xa.size() && xa[i] == v) ++i;
        while (j < xb.size() && xb[j] == v) ++j;
        double fa = static_cast<double>(i) / xa.size();
        double fb = static_cast<double>(j) / xb.size();
        d = std::max(d, std::fabs(fa - fb));
    }
    return d;
}

} // namespace pdmean
