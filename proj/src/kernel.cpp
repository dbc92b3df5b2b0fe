#include "pdmean/kernel.hpp"
#include "pdmean/errors.hpp"

#include <cmath>

namespace pdmean {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kDegenerateTol = 1e-300;

double require_alpha01(const PDParams& params) {
    if (!(params.alpha > 0.0 && params.alpha < 1.0))
        throw UnsupportedCombination("transform kernels require alpha in (0,1)");
    return params.alpha;
}

// int (z+x)^d eta(dx) for z > 0; closed form per atom and linear piece.
// Unlike the Abel transforms this admits any real d since z + x stays
// positive on the support.
double shifted_power_moment(const BaseMeasure& m, double d, double z) {
    auto primitive = [d](double u) {
        // antiderivative of u^d
        return d == -1.0 ? std::log(u) : std::pow(u, d + 1.0) / (d + 1.0);
    };
    auto primitive_next = [d](double u) {
        double d1 = d + 1.0;
        return d1 == -1.0 ? std::log(u) : std::pow(u, d1 + 1.0) / (d1 + 1.0);
    };
    double s = 0.0;
    for (const auto& a : m.atoms()) s += a.w * std::pow(z + a.x, d);
    for (const auto& p : m.ac_pieces()) {
        // density as c0 + c1*u with u = z + x
        double c1 = p.slope();
        double c0 = p.p0 - c1 * (p.x0 + z);
        double u0 = z + p.x0, u1 = z + p.x1;
        s += c0 * (primitive(u1) - primitive(u0)) + c1 * (primitive_next(u1) - primitive_next(u0));
    }
    return s;
}

} // namespace

GammaZeta gamma_zeta(const BaseMeasure& measure, double a, double t) {
    double am = measure.abel_minus(a, t);
    double ap = measure.abel_plus(a, t);
    return GammaZeta{std::cos(a * kPi) * am + ap, std::sin(a * kPi) * am};
}

double phase(const BaseMeasure& measure, double alpha, double t) {
    GammaZeta g = gamma_zeta(measure, alpha, t);
    if (g.radius_sq() < kDegenerateTol)
        throw DegenerateKernel("transform parts vanish simultaneously");
    return std::atan2(g.zeta, g.gamma);
}

double rho(const BaseMeasure& measure, const PDParams& params, double t) {
    double alpha = require_alpha01(params);
    return params.theta / alpha * phase(measure, alpha, t);
}

double delta(const BaseMeasure& measure, const PDParams& params, double t) {
    double alpha = require_alpha01(params);
    SupportHull hull = measure.hull();
    if (t <= hull.lo || t >= hull.hi) return 0.0;
    GammaZeta g = gamma_zeta(measure, alpha, t);
    double r2 = g.radius_sq();
    if (r2 < kDegenerateTol)
        throw DegenerateKernel("transform parts vanish simultaneously");
    double ph = std::atan2(g.zeta, g.gamma);
    return std::sin(params.theta / alpha * ph) *
           std::exp(-params.theta / (2.0 * alpha) * std::log(r2)) / kPi;
}

double delta_tilde(const BaseMeasure& measure, const PDParams& params, double t) {
    double alpha = require_alpha01(params);
    if (params.theta < 0.0)
        throw UnsupportedCombination("delta_tilde requires theta >= 0");
    SupportHull hull = measure.hull();
    if (t <= hull.lo || t >= hull.hi) return 0.0;
    GammaZeta g = gamma_zeta(measure, alpha, t);
    double r2 = g.radius_sq();
    if (r2 < kDegenerateTol)
        throw DegenerateKernel("transform parts vanish simultaneously");
    GammaZeta gm = gamma_zeta(measure, alpha - 1.0, t);
    double ratio = (params.theta + alpha) / alpha;
    double ph = ratio * std::atan2(g.zeta, g.gamma);
    return (gm.gamma * std::sin(ph) - gm.zeta * std::cos(ph)) *
           std::exp(-0.5 * ratio * std::log(r2)) / kPi;
}

double stieltjes_forward(const BaseMeasure& measure, const PDParams& params,
                         double z, double order) {
    if (!(z > 0.0))
        throw UnsupportedCombination("forward transform is evaluated on the positive real axis only");
    const double theta = params.theta;
    auto is_order = [order](double o) { return std::fabs(order - o) <= 1e-12; };

    switch (params.regime) {
        case Regime::Stable: {
            // only the order-1 transform is defined at theta = 0
            if (!is_order(1.0))
                throw UnsupportedOrder("stable regime serves order 1 only");
            double num = shifted_power_moment(measure, params.alpha - 1.0, z);
            double den = shifted_power_moment(measure, params.alpha, z);
            return num / den;
        }
        case Regime::General: {
            double den = shifted_power_moment(measure, params.alpha, z);
            if (is_order(theta))
                return std::pow(den, -theta / params.alpha);
            if (is_order(theta + 1.0)) {
                double num = shifted_power_moment(measure, params.alpha - 1.0, z);
                return num * std::pow(den, -(theta / params.alpha + 1.0));
            }
            throw UnsupportedOrder("general regime serves orders theta and theta+1");
        }
        case Regime::Dirichlet: {
            double logint = measure.log_kernel_r(-z); // log|(-z) - x| = log(z + x)
            if (is_order(theta)) return std::exp(-theta * logint);
            if (is_order(theta + 1.0))
                return shifted_power_moment(measure, -1.0, z) * std::exp(-theta * logint);
            throw UnsupportedOrder("dirichlet regime serves orders theta and theta+1");
        }
        case Regime::SymDirichlet: {
            double base = shifted_power_moment(measure, -params.kappa, z);
            if (is_order(theta)) return std::pow(base, params.m);
            if (is_order(theta + 1.0))
                return std::pow(base, params.m - 1) *
                       shifted_power_moment(measure, -params.kappa - 1.0, z);
            throw UnsupportedOrder("symmetric dirichlet regime serves orders theta and theta+1");
        }
    }
    throw UnsupportedOrder("unknown regime");
}

KernelEval eval_kernel(const BaseMeasure& measure, const PDParams& params, double t) {
    double alpha = require_alpha01(params);
    GammaZeta g = gamma_zeta(measure, alpha, t);
    KernelEval e;
    e.t = t;
    e.gamma = g.gamma;
    e.zeta = g.zeta;
    e.rho = rho(measure, params, t);
    e.delta = delta(measure, params, t);
    e.delta_tilde = delta_tilde(measure, params, t);
    return e;
}

} // namespace pdmean
