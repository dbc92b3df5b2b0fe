#include "pdmean/closed_forms.hpp"
#include "pdmean/errors.hpp"
#include "pdmean/kernel.hpp"
#include "pdmean/quadrature.hpp"
#include "pdmean/special.hpp"

#include <cmath>

namespace pdmean {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool is_bernoulli_like(const BaseMeasure& m, double& p) {
    if (!m.purely_atomic() || m.atoms().size() != 2) return false;
    const auto& at = m.atoms();
    if (std::fabs(at[0].x) > 1e-12 || std::fabs(at[1].x - 1.0) > 1e-12) return false;
    p = at[1].w;
    return true;
}

} // namespace

double lamperti_density(double alpha, double p, double x) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    double pb = 1.0 - p;
    double xa = std::pow(x, alpha);
    double ya = std::pow(1.0 - x, alpha);
    double num = p * pb * std::sin(alpha * kPi) * std::pow(x, alpha - 1.0) *
                 std::pow(1.0 - x, alpha - 1.0);
    double den = pb * pb * xa * xa + p * p * ya * ya +
                 2.0 * p * pb * xa * ya * std::cos(alpha * kPi);
    return num / (kPi * den);
}

double lamperti_cdf(double alpha, double p, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    double pb = 1.0 - p;
    double xa = std::pow(x, alpha);
    double ya = std::pow(1.0 - x, alpha);
    double zeta = std::sin(alpha * kPi) * xa * pb;
    double gamma = std::cos(alpha * kPi) * xa * pb + ya * p;
    return std::atan2(zeta, gamma) / (alpha * kPi);
}

double bernoulli_pd_alpha1_density(double alpha, double p, double x) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    double pb = 1.0 - p;
    double ca = std::cos(alpha * kPi);
    double xa = std::pow(x, alpha);
    double ya = std::pow(1.0 - x, alpha);
    double den = pb * pb * xa * xa + p * p * ya * ya + 2.0 * p * pb * ca * xa * ya;
    double angle = std::atan(pb * std::sin(alpha * kPi) * xa / (pb * ca * xa + p * ya));
    if (alpha > 0.5) {
        // gamma changes sign on (v/(1+v), 1) with v = (p / (pbar |cos a pi|))^{1/a};
        // add the pi branch there so the phase stays continuous
        double v = std::pow(-p / (pb * ca), 1.0 / alpha);
        if (x > v / (1.0 + v)) angle += kPi;
    }
    return std::sin(angle / alpha) / (kPi * std::pow(den, 0.5 / alpha));
}

double pd_alpha1_density(const BaseMeasure& measure, double alpha, double y) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw UnsupportedCombination("requires alpha in (0,1)");
    SupportHull hull = measure.hull();
    if (y <= hull.lo || y >= hull.hi) return 0.0;

    if (alpha == 0.5) {
        // explicit two-transform form at alpha = 1/2
        double am = measure.abel_minus(0.5, y);
        double ap = measure.abel_plus(0.5, y);
        double r2 = am * am + ap * ap;
        return 2.0 * am * ap / (kPi * r2 * r2);
    }
    GammaZeta g = gamma_zeta(measure, alpha, y);
    double r2 = g.radius_sq();
    if (r2 < 1e-300) throw DegenerateKernel("transform parts vanish");
    double angle = std::atan(g.zeta / g.gamma);
    if (g.gamma < 0.0) angle += kPi;
    return std::sin(angle / alpha) * std::exp(-0.5 / alpha * std::log(r2)) / kPi;
}

double pd_alpha1_multiple_angle(const BaseMeasure& measure, int n, double y) {
    double alpha = 1.0 / n;
    GammaZeta g = gamma_zeta(measure, alpha, y);
    double r2 = g.radius_sq();
    double delta_aa = g.zeta / (kPi * r2);
    double sum = 0.0;
    for (int k = 0; k <= n; ++k) {
        double s = std::sin(0.5 * kPi * (n - k));
        if (s == 0.0) continue;
        sum += std::exp(log_choose(n, k)) * std::pow(g.gamma / g.zeta, k) * s;
    }
    return std::pow(kPi, n - 1.0) * std::pow(delta_aa, n) * sum;
}

namespace {

// Corollary form for the Bernoulli family: one singular-weight integral of
// the theta = 1 densities.
double one_minus_alpha_bernoulli(double alpha, double p, double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    double pb = 1.0 - p;
    WeightedIntegrand w;
    w.lower = std::min(t, 1.0 - t);
    w.upper = 1.0;
    w.endpoint_exponent_at_upper = -alpha;
    w.breakpoints.push_back(BreakPoint{std::max(t, 1.0 - t), 0.0});
    w.integrand = [&](double u) {
        double a = t / u;
        double b = (1.0 - t) / u;
        double v = 0.0;
        if (a < 1.0) v += pb * bernoulli_pd_alpha1_density(alpha, p, a);
        if (b < 1.0) v += p * bernoulli_pd_alpha1_density(alpha, pb, b);
        return v / u;
    };
    w.abs_tol = 1e-10;
    QuadResult r = integrate_endpoint_weight(w);
    return (1.0 - alpha) * r.value;
}

// Inner integral of the general mixture identity for one fixed atom w of eta.
double one_minus_alpha_mix_integral(const BaseMeasure& measure, double alpha, double x,
                                    double wloc) {
    SupportHull hull = measure.hull();
    double bmax = 1.0;
    if (x > wloc) bmax = (hull.hi - x) / (hull.hi - wloc);
    else if (x < wloc) bmax = (x - hull.lo) / (wloc - hull.lo);
    if (!(bmax > 0.0)) return 0.0;
    bmax = std::min(bmax, 1.0);

    WeightedIntegrand w;
    w.lower = 0.0;
    w.lower_exponent = -alpha;
    w.upper = bmax;
    w.integrand = [&](double b) {
        double s = (x - wloc * b) / (1.0 - b);
        double val = pd_alpha1_density(measure, alpha, s);
        return val / (1.0 - b) * std::pow(b, -alpha);
    };
    // the b^{-alpha} factor is part of the integrand; the engine substitution
    // at the lower end keeps it accurate
    w.abs_tol = 1e-10;
    QuadResult r = integrate_endpoint_weight(w);
    return r.value;
}

} // namespace

double pd_alpha_one_minus_alpha_density(const BaseMeasure& measure, double alpha, double t) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw UnsupportedCombination("requires alpha in (0,1)");
    double p;
    if (is_bernoulli_like(measure, p)) return one_minus_alpha_bernoulli(alpha, p, t);

    SupportHull hull = measure.hull();
    if (t <= hull.lo || t >= hull.hi) return 0.0;
    if (measure.atom_at(t) != nullptr)
        throw NonIntegrable("mixture density diverges at an atom of the base measure");

    double total = 0.0;
    for (const auto& a : measure.atoms())
        total += a.w * one_minus_alpha_mix_integral(measure, alpha, t, a.x);
    for (const auto& piece : measure.ac_pieces()) {
        auto outer = [&](double wloc) {
            return piece.density_at(wloc) * one_minus_alpha_mix_integral(measure, alpha, t, wloc);
        };
        // the inner integral has a logarithmic spike at w = t
        if (t > piece.x0 && t < piece.x1) {
            total += integrate_smooth(outer, piece.x0, t, 1e-8).value;
            total += integrate_smooth(outer, t, piece.x1, 1e-8).value;
        } else {
            total += integrate_smooth(outer, piece.x0, piece.x1, 1e-8).value;
        }
    }
    return (1.0 - alpha) * total;
}

double pd_alpha_alpha_density_bernoulli(double alpha, double p, double y) {
    if (y <= 0.0 || y >= 1.0) return 0.0;
    double pb = 1.0 - p;
    double ca = std::cos(alpha * kPi);
    auto num = [&](double t) {
        return p * p * std::pow(1.0 - t, 2.0 * alpha - 1.0) * (1.0 + t) +
               2.0 * p * pb * std::pow(t, alpha + 1.0) * std::pow(1.0 - t, alpha - 1.0) * ca -
               pb * pb * std::pow(t, 2.0 * alpha);
    };
    auto den = [&](double t) {
        double d = p * p * std::pow(1.0 - t, 2.0 * alpha) + pb * pb * std::pow(t, 2.0 * alpha) +
                   2.0 * p * pb * std::pow(t * (1.0 - t), alpha) * ca;
        return d * d;
    };
    WeightedIntegrand w;
    w.lower = 0.0;
    w.lower_exponent = alpha - 1.0;
    w.upper = y;
    w.endpoint_exponent_at_upper = alpha - 1.0;
    w.integrand = [&](double t) { return std::pow(t, alpha - 1.0) * num(t) / den(t); };
    w.abs_tol = 1e-10;
    QuadResult r = integrate_endpoint_weight(w);
    return alpha * pb * std::sin(alpha * kPi) / kPi * r.value;
}

ClosedForm beta_closed_form(double a, double b) {
    ClosedForm cf;
    cf.name = "beta";
    cf.density = [a, b](double x) { return beta_pdf(x, a, b); };
    cf.cdf = [a, b](double x) { return beta_cdf(x, a, b); };
    return cf;
}

ClosedForm dirichlet_indicator_closed_form(double theta, double p) {
    ClosedForm cf = beta_closed_form(theta * p, theta * (1.0 - p));
    cf.name = "beta-dirichlet";
    return cf;
}

ClosedForm half_stable_indicator_closed_form(double theta) {
    ClosedForm cf = beta_closed_form(theta + 0.5, theta + 0.5);
    cf.name = "beta-half";
    return cf;
}

double stable_uniform_density(double alpha, double y) {
    if (y <= 0.0 || y >= 1.0) return 0.0;
    double ya = std::pow(y, alpha);
    double za = std::pow(1.0 - y, alpha);
    double y1 = std::pow(y, alpha + 1.0);
    double z1 = std::pow(1.0 - y, alpha + 1.0);
    double num = (alpha + 1.0) * std::sin(alpha * kPi) * ya * za;
    double den = y1 * y1 + z1 * z1 + 2.0 * std::cos(alpha * kPi) * y1 * z1;
    return num / (alpha * kPi * den);
}

double dirichlet_uniform_unit_density(double y, bool plus_exponent_variant) {
    if (y <= 0.0 || y >= 1.0) return 0.0;
    double e1 = plus_exponent_variant ? -(1.0 + y) : -(1.0 - y);
    return std::exp(1.0) / kPi * std::pow(1.0 - y, e1) * std::pow(y, -y) * std::sin(kPi * y);
}

std::optional<ClosedForm> closed_form_by_name(const std::string& name, double alpha,
                                              double theta, double p) {
    if (name == "lamperti") {
        ClosedForm cf;
        cf.name = name;
        cf.density = [alpha, p](double x) { return lamperti_density(alpha, p, x); };
        cf.cdf = [alpha, p](double x) { return lamperti_cdf(alpha, p, x); };
        return cf;
    }
    if (name == "stable-uniform") {
        ClosedForm cf;
        cf.name = name;
        cf.density = [alpha](double x) { return stable_uniform_density(alpha, x); };
        return cf;
    }
    if (name == "pd-alpha-1") {
        ClosedForm cf;
        cf.name = name;
        cf.density = [alpha, p](double x) { return bernoulli_pd_alpha1_density(alpha, p, x); };
        return cf;
    }
    if (name == "pd-alpha-1ma") {
        ClosedForm cf;
        cf.name = name;
        cf.density = [alpha, p](double x) {
            return one_minus_alpha_bernoulli(alpha, p, x);
        };
        return cf;
    }
    if (name == "pd-alpha-alpha") {
        ClosedForm cf;
        cf.name = name;
        cf.density = [alpha, p](double x) { return pd_alpha_alpha_density_bernoulli(alpha, p, x); };
        return cf;
    }
    if (name == "beta-dirichlet") return dirichlet_indicator_closed_form(theta, p);
    if (name == "beta-half") return half_stable_indicator_closed_form(theta);
    return std::nullopt;
}

} // namespace pdmean
