#include "pdmean/dist.hpp"
#include "pdmean/errors.hpp"
#include "pdmean/quadrature.hpp"
#include "pdmean/special.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <thread>

namespace pdmean {

namespace {

constexpr double kPi = 3.14159265358979323846;

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

} // namespace

std::string to_string(PointFlag f) {
    switch (f) {
        case PointFlag::ok: return "ok";
        case PointFlag::off_theta_set: return "off_theta_set";
        case PointFlag::atom_collision: return "atom_collision";
        case PointFlag::tolerance_not_met: return "tolerance_not_met";
    }
    return "unknown";
}

double stable_density(const BaseMeasure& measure, double alpha, double y) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw UnsupportedCombination("stable density requires alpha in (0,1)");
    if (!measure.hull().contains(y))
        throw OffThetaSet("stable density undefined outside the support hull");
    // Points arbitrarily close to atoms evaluate (the singularity is
    // integrable and quadrature over the density probes it); only an exact
    // hit diverges.
    try {
        double ap = measure.abel_plus(alpha, y);
        double am = measure.abel_minus(alpha, y);
        double ap1 = measure.abel_plus(alpha - 1.0, y);
        double am1 = measure.abel_minus(alpha - 1.0, y);
        double num = std::sin(alpha * kPi) * (ap * am1 + ap1 * am);
        double den = ap * ap + 2.0 * std::cos(alpha * kPi) * ap * am + am * am;
        return num / (kPi * den);
    } catch (const NonIntegrable&) {
        throw OffThetaSet("stable density undefined on an atom");
    }
}

double stable_cdf(const BaseMeasure& measure, double alpha, double x) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw UnsupportedCombination("stable cdf requires alpha in (0,1)");
    SupportHull hull = measure.hull();
    if (x <= hull.lo) return 0.0;
    if (x >= hull.hi) return 1.0;
    return clamp01(phase(measure, alpha, x) / (alpha * kPi));
}

namespace {

// Shared assembly for the alpha > 0 inversion integrals:
//   int_lo^y (y-t)^{weight_exp} f(t) dt
// with breakpoints at the measure's singular points. interior_exponent gives
// the known |t - atom|^e behavior of f at atom locations.
EvalResult inversion_integral(const BaseMeasure& measure, double y, double weight_exp,
                              double interior_exponent,
                              const std::function<double(double)>& f) {
    SupportHull hull = measure.hull();
    WeightedIntegrand w;
    w.lower = hull.lo;
    w.upper = y;
    w.endpoint_exponent_at_upper = weight_exp;
    w.integrand = f;
    for (double s : measure.singular_points()) {
        if (s <= hull.lo || s >= y) continue;
        double e = (measure.atom_at(s) != nullptr) ? interior_exponent : 0.0;
        w.breakpoints.push_back(BreakPoint{s, e});
    }
    if (measure.atom_at(hull.lo) != nullptr) w.lower_exponent = interior_exponent;
    w.abs_tol = 1e-9;
    QuadResult r = integrate_endpoint_weight(w);
    return EvalResult{r.value, r.converged ? PointFlag::ok : PointFlag::tolerance_not_met};
}

} // namespace

EvalResult general_density_ex(const BaseMeasure& measure, const PDParams& params, double y) {
    const double alpha = params.alpha;
    const double theta = params.theta;
    if (!(alpha > 0.0 && alpha < 1.0))
        throw UnsupportedCombination("general density requires alpha in (0,1)");
    if (theta < 0.0) throw UnsupportedCombination("general density requires theta >= 0");
    SupportHull hull = measure.hull();
    if (!hull.contains(y)) throw OffThetaSet("evaluation point outside the support hull");

    if (theta == 0.0) return EvalResult{stable_density(measure, alpha, y), PointFlag::ok};
    if (y <= hull.lo || y >= hull.hi) return EvalResult{0.0, PointFlag::ok};
    if (theta == 1.0) return EvalResult{delta(measure, params, y), PointFlag::ok};

    if (theta > 1.0) {
        auto f = [&](double t) { return delta(measure, params, t); };
        EvalResult r = inversion_integral(measure, y, theta - 2.0, 0.0, f);
        r.value *= (theta - 1.0);
        if (r.value < 0.0 && r.value > -1e-9) r.value = 0.0;
        return r;
    }
    // theta < 1: order-(theta+1) jump integrand, singular like |t-a|^{alpha-1}
    // at atom locations.
    auto f = [&](double t) { return delta_tilde(measure, params, t); };
    EvalResult r = inversion_integral(measure, y, theta - 1.0, alpha - 1.0, f);
    r.value *= theta;
    if (r.value < 0.0 && r.value > -1e-9) r.value = 0.0;
    return r;
}

double general_density(const BaseMeasure& measure, const PDParams& params, double y) {
    return general_density_ex(measure, params, y).value;
}

EvalResult general_cdf_ex(const BaseMeasure& measure, const PDParams& params, double x) {
    const double alpha = params.alpha;
    const double theta = params.theta;
    if (!(alpha > 0.0 && alpha < 1.0))
        throw UnsupportedCombination("general cdf requires alpha in (0,1)");
    if (theta < 0.0) throw UnsupportedCombination("general cdf requires theta >= 0");
    SupportHull hull = measure.hull();
    if (x <= hull.lo) return EvalResult{0.0, PointFlag::ok};
    if (x > hull.hi) return EvalResult{1.0, PointFlag::ok};
    if (theta == 0.0) return EvalResult{stable_cdf(measure, alpha, x), PointFlag::ok};

    auto f = [&](double t) { return delta(measure, params, t); };
    EvalResult r = inversion_integral(measure, x, theta - 1.0, 0.0, f);
    r.value = clamp01(r.value);
    return r;
}

double general_cdf(const BaseMeasure& measure, const PDParams& params, double x) {
    return general_cdf_ex(measure, params, x).value;
}

// ---------------------------------------------------------------------------
// Dirichlet regime
// ---------------------------------------------------------------------------

namespace {

// sin(pi theta Psi(t)) e^{-theta R(t)} / pi, the integrand of the classical
// Dirichlet-mean formulas.
double dirichlet_integrand(const BaseMeasure& m, double theta, double t) {
    return std::sin(kPi * theta * m.cdf_psi(t)) * std::exp(-theta * m.log_kernel_r(t)) / kPi;
}

struct HeavyAtom {
    double x;
    double w;
    double s;  // theta * w >= 1
};

// Finite-part integral over one protected side of a heavy atom:
//   FP int_0^L u^{-s} G(a + sigma u) du
// where G(t) = (x-t)^{weight_exp} sin(pi theta Psi_side)/pi
//              * prod_{i != a} |t - x_i|^{-theta w_i}.
// The Taylor coefficients of G around the atom come from the analytic
// log-derivatives, so the subtracted integrand is evaluated without
// catastrophic cancellation.
double finite_part_side(const BaseMeasure& m, double theta, double x, double weight_exp,
                        const HeavyAtom& atom, double sigma, double L, double psi_side) {
    const double a = atom.x;
    const double s = atom.s;
    const double D = x - a;

    double logg0 = weight_exp * std::log(D) - std::log(kPi);
    double m1 = -sigma * weight_exp / D;  // M'(0)
    double m2 = -weight_exp / (D * D);
    double m3 = -2.0 * sigma * weight_exp / (D * D * D);
    for (const auto& other : m.atoms()) {
        if (std::fabs(other.x - a) <= BaseMeasure::kAtomLocationTol) continue;
        double c = a - other.x;
        logg0 += -theta * other.w * std::log(std::fabs(c));
        m1 += -theta * other.w * sigma / c;
        m2 += theta * other.w / (c * c);
        m3 += -2.0 * theta * other.w * sigma / (c * c * c);
    }
    double g0 = std::sin(kPi * theta * psi_side) * std::exp(logg0);

    // series coefficients of exp(M(u)) = sum c_k u^k
    double c_[4];
    c_[0] = 1.0;
    c_[1] = m1;
    c_[2] = 0.5 * (m1 * m1 + m2);
    c_[3] = (m1 * m1 * m1 + 3.0 * m1 * m2 + m3) / 6.0;

    int K = static_cast<int>(std::floor(s)) + 1;  // subtraction terms, K in {2,3}
    if (K > 3) throw JumpTooLarge("atom weight too large for the regularized formulas");

    auto expM = [&](double u) {
        double v = weight_exp * std::log1p(-sigma * u / D);
        for (const auto& other : m.atoms()) {
            if (std::fabs(other.x - a) <= BaseMeasure::kAtomLocationTol) continue;
            double c = a - other.x;
            v += -theta * other.w * std::log1p(sigma * u / c);
        }
        return std::exp(v);
    };

    double fp = 0.0;
    for (int k = 0; k < K; ++k) fp += c_[k] * std::pow(L, k + 1.0 - s) / (k + 1.0 - s);

    // analytic stub on [0, delta] where direct evaluation of the subtracted
    // series would cancel catastrophically
    double delta_u = 1e-4 * L;
    fp += c_[K] * std::pow(delta_u, K + 1.0 - s) / (K + 1.0 - s);

    auto h = [&](double u, double, double) {
        double diff = expM(u);
        for (int k = 0; k < K; ++k) diff -= c_[k] * std::pow(u, static_cast<double>(k));
        return std::pow(u, -s) * diff;
    };
    QuadResult qr = de_panel(h, delta_u, L, 1e-11);
    fp += qr.value;
    return g0 * fp;
}

// int_lo^x (x-t)^{weight_exp} sin(pi theta Psi(t)) e^{-theta R(t)} / pi dt
// with finite-part handling of atoms whose jump theta*w is >= 1.
double dirichlet_integral(const BaseMeasure& m, double theta, double x, double weight_exp) {
    SupportHull hull = m.hull();
    const double span = hull.hi - hull.lo;

    std::vector<HeavyAtom> heavy;
    for (const auto& a : m.atoms()) {
        double s = theta * a.w;
        if (a.x >= x || s < 1.0) continue;  // atoms at/above x never make the kernel blow up
        if (!m.purely_atomic())
            throw JumpTooLarge("an atom carries weight >= 1/theta");
        if (std::fabs(s - std::round(s)) < 0.02 || s >= 3.0)
            throw JumpTooLarge("atom jump too close to an integer multiple or too large");
        heavy.push_back(HeavyAtom{a.x, a.w, s});
    }

    double total = 0.0;
    std::vector<std::pair<double, double>> protected_iv;
    for (const auto& ha : heavy) {
        // protection radius: half the gap to the nearest other singular point or x
        double gap = x - ha.x;
        for (double sp : m.singular_points())
            if (std::fabs(sp - ha.x) > BaseMeasure::kAtomLocationTol)
                gap = std::min(gap, std::fabs(sp - ha.x));
        double L = 0.45 * gap;
        if (!(L > 0.0)) throw JumpTooLarge("heavy atom too close to the evaluation point");

        double psi_at = m.cdf_psi(ha.x);
        // right side
        total += finite_part_side(m, theta, x, weight_exp, ha, +1.0, L, psi_at);
        double right_hi = ha.x + L;
        // left side, if the atom is interior to the integration range
        double left_lo = ha.x;
        if (ha.x > hull.lo + 1e-14 * span) {
            double Ll = std::min(L, ha.x - hull.lo);
            total += finite_part_side(m, theta, x, weight_exp, ha, -1.0, Ll, psi_at - ha.w);
            left_lo = ha.x - Ll;
        }
        protected_iv.emplace_back(left_lo, right_hi);
    }
    std::sort(protected_iv.begin(), protected_iv.end());

    // remaining segments integrated by the regular engine
    auto integrand = [&](double t) { return dirichlet_integrand(m, theta, t); };
    double seg_lo = hull.lo;
    auto integrate_segment = [&](double a, double b) {
        if (!(b - a > 1e-14 * span)) return;
        WeightedIntegrand w;
        w.lower = a;
        w.upper = b;
        w.integrand = integrand;
        // the global weight applies at t = x only; inner segments carry it in
        // the integrand
        bool touches_x = std::fabs(b - x) <= 1e-14 * span;
        if (touches_x) {
            w.endpoint_exponent_at_upper = weight_exp;
        } else {
            w.integrand = [&, weight_exp](double t) {
                return integrand(t) * std::pow(x - t, weight_exp);
            };
        }
        for (double sp : m.singular_points()) {
            if (sp <= a + 1e-14 * span || sp >= b - 1e-14 * span) continue;
            const Atom* at = m.atom_at(sp);
            w.breakpoints.push_back(BreakPoint{sp, at ? -theta * at->w : 0.0});
        }
        const Atom* lo_atom = m.atom_at(a);
        if (lo_atom != nullptr) w.lower_exponent = -theta * lo_atom->w;
        w.abs_tol = 1e-10;
        QuadResult r = integrate_endpoint_weight(w);
        total += r.value;
    };

    for (const auto& iv : protected_iv) {
        integrate_segment(seg_lo, std::min(iv.first, x));
        seg_lo = iv.second;
    }
    if (seg_lo < x) integrate_segment(seg_lo, x);
    return total;
}

// Purely atomic two-point measure: the mean is an affine Beta variable.
// Serves the integer-jump cases where the integral formulas degenerate.
bool two_atom_beta(const BaseMeasure& m, double theta, double& a0, double& len,
                   double& shape1, double& shape0) {
    if (!m.purely_atomic() || m.atoms().size() != 2) return false;
    const auto& at = m.atoms();
    a0 = at[0].x;
    len = at[1].x - at[0].x;
    shape1 = theta * at[1].w;
    shape0 = theta * at[0].w;
    return true;
}

bool needs_integer_jump_fallback(const BaseMeasure& m, double theta) {
    for (const auto& a : m.atoms()) {
        double s = theta * a.w;
        if (s >= 1.0 && std::fabs(s - std::round(s)) < 0.02) return true;
    }
    return false;
}

} // namespace

double dirichlet_density(const BaseMeasure& measure, double theta, double y) {
    if (!(theta > 0.0)) throw UnsupportedCombination("dirichlet regime requires theta > 0");
    SupportHull hull = measure.hull();
    if (measure.purely_atomic() && measure.atoms().size() == 1)
        throw UnsupportedCombination("degenerate measure has no density; use the cdf");
    if (y <= hull.lo || y >= hull.hi) return 0.0;

    if (!measure.has_atoms()) {
        // differentiated-kernel route: d(t) = e^{-theta R} [pi theta psi cos(pi theta Psi)
        //                                                  - theta R' sin(pi theta Psi)]
        auto f = [&](double t) {
            double r = measure.log_kernel_r(t);
            double psi = measure.ac_density(t);
            double cpsi = measure.cdf_psi(t);
            double rp = integrate_pv_log(measure, t);
            return std::exp(-theta * r) *
                   (kPi * theta * psi * std::cos(kPi * theta * cpsi) -
                    theta * rp * std::sin(kPi * theta * cpsi)) / kPi;
        };
        WeightedIntegrand w;
        w.lower = hull.lo;
        w.upper = y;
        w.endpoint_exponent_at_upper = theta - 1.0;
        w.integrand = f;
        for (double s : measure.singular_points())
            if (s > hull.lo && s < y) w.breakpoints.push_back(BreakPoint{s, 0.0});
        w.abs_tol = 1e-9;
        QuadResult r = integrate_endpoint_weight(w);
        double v = r.value;
        return v < 0.0 && v > -1e-9 ? 0.0 : v;
    }

    if (needs_integer_jump_fallback(measure, theta)) {
        double a0, len, s1, s0;
        if (two_atom_beta(measure, theta, a0, len, s1, s0))
            return beta_pdf((y - a0) / len, s1, s0) / len;
        throw JumpTooLarge("integer atom jump outside the two-atom closed form");
    }

    if (theta == 1.0) {
        if (measure.atom_at(y) != nullptr)
            throw NonIntegrable("density evaluation at an atom location");
        return dirichlet_integrand(measure, theta, y);
    }
    if (theta > 1.0)
        return (theta - 1.0) * dirichlet_integral(measure, theta, y, theta - 2.0);
    throw UnsupportedCombination(
        "density with atoms needs theta >= 1; the cdf route remains available");
}

double dirichlet_cdf(const BaseMeasure& measure, double theta, double x) {
    if (!(theta > 0.0)) throw UnsupportedCombination("dirichlet regime requires theta > 0");
    SupportHull hull = measure.hull();
    if (measure.purely_atomic() && measure.atoms().size() == 1)
        return x >= hull.lo ? 1.0 : 0.0;
    if (x <= hull.lo) return 0.0;
    if (x > hull.hi) return 1.0;

    if (measure.has_atoms() && needs_integer_jump_fallback(measure, theta)) {
        double a0, len, s1, s0;
        if (two_atom_beta(measure, theta, a0, len, s1, s0))
            return beta_cdf((x - a0) / len, s1, s0);
        throw JumpTooLarge("integer atom jump outside the two-atom closed form");
    }
    return clamp01(dirichlet_integral(measure, theta, x, theta - 1.0));
}

// ---------------------------------------------------------------------------
// Symmetric Dirichlet regime
// ---------------------------------------------------------------------------

namespace {

// h_m(t) = sum_{j=1}^m C(m,j) sin(pi j kappa) A_{-kappa}(t)^j A+_{-kappa}(t)^{m-j},
// evaluated in log space so large m stays stable.
double sym_h(const BaseMeasure& m, double kappa, int mm, double t) {
    double am = m.abel_minus(-kappa, t);
    double ap = m.abel_plus(-kappa, t);
    if (am <= 0.0 || ap <= 0.0) {
        // only the boundary terms survive
        if (am <= 0.0) return 0.0;                       // j >= 1 terms all vanish
        return std::sin(kPi * mm * kappa) * std::pow(am, mm);  // ap == 0
    }
    double la = std::log(am), lp = std::log(ap);
    double s = 0.0;
    for (int j = 1; j <= mm; ++j) {
        double sj = std::sin(kPi * j * kappa);
        if (sj == 0.0) continue;
        s += sj * std::exp(log_choose(mm, j) + j * la + (mm - j) * lp);
    }
    return s;
}

} // namespace

SymDirichletEval symdirichlet_density_cdf(const BaseMeasure& measure, double kappa, int m,
                                          double x) {
    if (!(kappa > 0.0) || m < 1)
        throw UnsupportedCombination("symmetric dirichlet needs kappa > 0 and m >= 1");
    const double theta = m * kappa;
    if (theta > 1.0 + 1e-12)
        throw UnsupportedCombination("symmetric dirichlet formulas require m*kappa <= 1");
    SupportHull hull = measure.hull();

    if (m == 1) {
        // a single draw from eta
        SymDirichletEval e;
        e.cdf = clamp01(measure.cdf_psi(x));
        if (!measure.has_atoms()) e.density = measure.ac_density(x);
        return e;
    }
    if (measure.has_atoms())
        throw UnsupportedCombination("symmetric dirichlet formulas need an atomless measure");

    if (x <= hull.lo) return SymDirichletEval{theta >= 1.0 - 1e-12 ? std::optional<double>(0.0) : std::nullopt, 0.0};
    if (x >= hull.hi) return SymDirichletEval{theta >= 1.0 - 1e-12 ? std::optional<double>(0.0) : std::nullopt, 1.0};

    const bool unit_theta = std::fabs(theta - 1.0) <= 1e-12;
    auto hfun = [&](double t) { return sym_h(measure, kappa, m, t) / kPi; };

    SymDirichletEval e;
    if (unit_theta) e.density = hfun(x);

    WeightedIntegrand w;
    w.lower = hull.lo;
    w.upper = x;
    w.endpoint_exponent_at_upper = unit_theta ? 0.0 : theta - 1.0;
    w.integrand = hfun;
    for (double s : measure.singular_points())
        if (s > hull.lo && s < x) w.breakpoints.push_back(BreakPoint{s, 0.0});
    w.abs_tol = 1e-9;
    QuadResult r = integrate_endpoint_weight(w);
    e.cdf = clamp01(r.value);
    return e;
}

// ---------------------------------------------------------------------------
// Grid evaluation
// ---------------------------------------------------------------------------

DistGrid eval_grid(const BaseMeasure& measure, const PDParams& params,
                   const std::vector<double>& points, int nthreads) {
    DistGrid grid;
    grid.params = params;
    grid.points = points;
    size_t n = points.size();
    grid.q.assign(n, 0.0);
    grid.Q.assign(n, 0.0);
    grid.flags.assign(n, PointFlag::ok);

    auto eval_point = [&](size_t i) {
        double y = points[i];
        if (measure.atom_at(y) != nullptr) {
            grid.flags[i] = PointFlag::atom_collision;
            return;
        }
        try {
            switch (params.regime) {
                case Regime::Stable:
                    grid.q[i] = stable_density(measure, params.alpha, y);
                    grid.Q[i] = stable_cdf(measure, params.alpha, y);
                    break;
                case Regime::General: {
                    EvalResult d = general_density_ex(measure, params, y);
                    EvalResult c = general_cdf_ex(measure, params, y);
                    grid.q[i] = d.value;
                    grid.Q[i] = c.value;
                    if (d.flag != PointFlag::ok) grid.flags[i] = d.flag;
                    else if (c.flag != PointFlag::ok) grid.flags[i] = c.flag;
                    break;
                }
                case Regime::Dirichlet:
                    grid.q[i] = dirichlet_density(measure, params.theta, y);
                    grid.Q[i] = dirichlet_cdf(measure, params.theta, y);
                    break;
                case Regime::SymDirichlet: {
                    SymDirichletEval e =
                        symdirichlet_density_cdf(measure, params.kappa, params.m, y);
                    grid.q[i] = e.density.value_or(std::numeric_limits<double>::quiet_NaN());
                    grid.Q[i] = e.cdf;
                    break;
                }
            }
        } catch (const OffThetaSet&) {
            grid.flags[i] = PointFlag::off_theta_set;
        } catch (const NonIntegrable&) {
            grid.flags[i] = PointFlag::atom_collision;
        }
    };

    nthreads = std::max(1, nthreads);
    if (nthreads == 1 || n < 2) {
        for (size_t i = 0; i < n; ++i) eval_point(i);
    } else {
        std::vector<std::thread> workers;
        std::atomic<size_t> next{0};
        int count = std::min<int>(nthreads, static_cast<int>(n));
        for (int t = 0; t < count; ++t) {
            workers.emplace_back([&]() {
                for (size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) eval_point(i);
            });
        }
        for (auto& th : workers) th.join();
    }
    return grid;
}

} // namespace pdmean
