#include "pdmean/quadrature.hpp"
#include "pdmean/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace pdmean {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kUMax = 6.56;  // abscissa cutoff; endpoint offsets underflow beyond

struct DeNode {
    double off;   // distance to the nearer endpoint
    double dxdu;  // transformed weight
    bool upper;   // node belongs to the upper half (near b)
};

bool de_node(double u, double half, DeNode& out) {
    double w = 0.5 * kPi * std::sinh(std::fabs(u));
    double ew = std::exp(-2.0 * w);
    if (ew <= 0.0) return false;
    double denom = 1.0 + ew;
    double off = half * 2.0 * ew / denom;
    if (off <= 0.0) return false;
    out.off = off;
    out.dxdu = half * 2.0 * kPi * std::cosh(u) * ew / (denom * denom);
    out.upper = u > 0.0;
    return true;
}

// Nodes exponentially close to a panel end can round onto a genuinely
// divergent point; their true contribution is below the tolerance floor,
// so such evaluations are dropped rather than propagated.
double guarded(const std::function<double(double, double, double)>& h,
               double t, double da, double db) {
    try {
        double v = h(t, da, db);
        return std::isfinite(v) ? v : 0.0;
    } catch (const std::exception&) {
        return 0.0;
    }
}

} // namespace

QuadResult de_panel(const std::function<double(double, double, double)>& h,
                    double a, double b, double abs_tol, int max_level) {
    QuadResult r;
    if (!(b > a)) return r;
    double half = 0.5 * (b - a);
    double len = b - a;

    auto eval_at = [&](double u) -> double {
        if (u == 0.0) {
            double mid = a + half;
            return guarded(h, mid, half, half) * half * 0.5 * kPi;
        }
        DeNode n;
        if (!de_node(u, half, n)) return 0.0;
        double t, da, db;
        if (n.upper) {
            t = b - n.off;
            db = n.off;
            da = len - n.off;
        } else {
            t = a + n.off;
            da = n.off;
            db = len - n.off;
        }
        return guarded(h, t, da, db) * n.dxdu;
    };

    double hstep = 1.0;
    double sum = eval_at(0.0);
    for (int k = 1; k * hstep <= kUMax; ++k) {
        sum += eval_at(k * hstep) + eval_at(-k * hstep);
    }
    double prev = sum * hstep;
    r.value = prev;
    r.error_estimate = std::fabs(prev);
    for (int level = 1; level <= max_level; ++level) {
        hstep *= 0.5;
        double add = 0.0;
        for (int k = 1; (2 * k - 1) * hstep <= kUMax; ++k) {
            double u = (2 * k - 1) * hstep;
            add += eval_at(u) + eval_at(-u);
        }
        double cur = 0.5 * prev + hstep * add;
        // level difference with a roundoff floor
        r.error_estimate = std::max(std::fabs(cur - prev), 64 * 2.2e-16 * std::fabs(cur));
        r.value = cur;
        prev = cur;
        if (r.error_estimate <= std::max(abs_tol, 1e-15 * std::fabs(cur))) {
            r.converged = true;
            return r;
        }
    }
    r.converged = r.error_estimate <= abs_tol;
    return r;
}

QuadResult integrate_smooth(const std::function<double(double)>& f,
                            double a, double b, double abs_tol) {
    return de_panel([&f](double t, double, double) { return f(t); }, a, b, abs_tol);
}

namespace {

struct Panel {
    double a, b;
    double exp_a = 0.0;   // integrand behavior (t-a)^{exp_a}
    double exp_b = 0.0;   // integrand behavior (b-t)^{exp_b}, excluding the global weight
    bool touches_upper = false;
};

// One panel of the weighted integral. Applies the global (upper-t)^we weight
// from exact offsets when the panel abuts the upper endpoint, and substitutes
// t = a + v^k (resp. b - v^k) when the integrand has negative power behavior
// at an interior breakpoint.
QuadResult integrate_one_panel(const WeightedIntegrand& w, const Panel& p, double tol) {
    const double we = w.endpoint_exponent_at_upper;
    const bool weighted = p.touches_upper && we != 0.0;

    auto weight_interior = [&](double t) {
        return we == 0.0 ? 1.0 : std::pow(w.upper - t, we);
    };

    // Both ends singular: split in half, each side handled by recursion.
    if (p.exp_a < 0.0 && (p.exp_b < 0.0 || weighted)) {
        double mid = 0.5 * (p.a + p.b);
        Panel left{p.a, mid, p.exp_a, 0.0, false};
        Panel right{mid, p.b, 0.0, p.exp_b, p.touches_upper};
        QuadResult rl = integrate_one_panel(w, left, 0.5 * tol);
        QuadResult rr = integrate_one_panel(w, right, 0.5 * tol);
        return QuadResult{rl.value + rr.value, rl.error_estimate + rr.error_estimate,
                          rl.converged && rr.converged};
    }

    // Reconstructing t = anchor -+ u loses the integrand mass closer to the
    // anchor than its ulp; the declared exponent gives that sliver in closed
    // form from one sample at distance u0.
    auto ulp_tail = [&](double anchor, double sign, double beta, double len,
                        double& u_start) -> double {
        u_start = 0.0;
        if (anchor == 0.0) return 0.0;
        double u0 = std::min(1e-13 * std::fabs(anchor), 0.25 * len);
        if (u0 <= 0.0) return 0.0;
        u_start = u0;
        double t0 = anchor + sign * u0;
        double f0 = w.integrand(t0) * weight_interior(t0);
        if (!std::isfinite(f0)) return 0.0;
        return f0 * u0 / (beta + 1.0);
    };

    if (p.exp_a < 0.0) {
        // substitute t = a + v^k: the transformed integrand vanishes at v = 0
        double k = std::clamp(2.0 / (1.0 + p.exp_a), 2.0, 60.0);
        double u_start;
        double tail = ulp_tail(p.a, +1.0, p.exp_a, p.b - p.a, u_start);
        double vmin = u_start > 0.0 ? std::pow(u_start, 1.0 / k) : 0.0;
        double vmax = std::pow(p.b - p.a, 1.0 / k);
        auto h = [&](double, double dva, double) {
            double u = std::pow(vmin + dva, k);   // t - a, exact in the substituted variable
            if (u <= 0.0) return 0.0;
            double t = p.a + u;
            if (t >= p.b) return 0.0;
            double val = w.integrand(t) * k * std::pow(vmin + dva, k - 1.0);
            return val * weight_interior(t);
        };
        QuadResult r = de_panel(h, 0.0, vmax - vmin, tol);
        r.value += tail;
        return r;
    }

    if (p.exp_b < 0.0 && !weighted) {
        double k = std::clamp(2.0 / (1.0 + p.exp_b), 2.0, 60.0);
        double u_start;
        double tail = ulp_tail(p.b, -1.0, p.exp_b, p.b - p.a, u_start);
        double vmin = u_start > 0.0 ? std::pow(u_start, 1.0 / k) : 0.0;
        double vmax = std::pow(p.b - p.a, 1.0 / k);
        auto h = [&](double, double dva, double) {
            double u = std::pow(vmin + dva, k);   // b - t
            if (u <= 0.0) return 0.0;
            double t = p.b - u;
            if (t <= p.a) return 0.0;
            double val = w.integrand(t) * k * std::pow(vmin + dva, k - 1.0);
            return val * weight_interior(t);
        };
        QuadResult r = de_panel(h, 0.0, vmax - vmin, tol);
        r.value += tail;
        return r;
    }

    if (weighted) {
        // weight factor computed from the exact offset to the upper endpoint
        auto h = [&](double t, double, double db) {
            return w.integrand(t) * std::pow(db, we);
        };
        return de_panel(h, p.a, p.b, tol);
    }

    auto h = [&](double t, double, double) { return w.integrand(t) * weight_interior(t); };
    return de_panel(h, p.a, p.b, tol);
}

} // namespace

QuadResult integrate_endpoint_weight(const WeightedIntegrand& w) {
    QuadResult total;
    if (!(w.upper > w.lower)) return total;
    if (w.endpoint_exponent_at_upper <= -1.0)
        throw NonIntegrable("endpoint weight exponent must exceed -1");

    const double span = w.upper - w.lower;
    std::vector<Panel> panels;
    {
        std::vector<BreakPoint> bps;
        for (const auto& bp : w.breakpoints)
            if (bp.x > w.lower + 1e-14 * span && bp.x < w.upper - 1e-14 * span)
                bps.push_back(bp);
        std::sort(bps.begin(), bps.end(), [](const BreakPoint& a, const BreakPoint& b) { return a.x < b.x; });
        double left = w.lower;
        double left_exp = w.lower_exponent;
        for (const auto& bp : bps) {
            if (bp.x - left < 1e-14 * span) { left_exp = std::min(left_exp, bp.exponent); continue; }
            panels.push_back(Panel{left, bp.x, left_exp, bp.exponent, false});
            left = bp.x;
            left_exp = bp.exponent;
        }
        panels.push_back(Panel{left, w.upper, left_exp, 0.0, true});
    }

    int budget = w.max_subdivisions;
    double tol_each = w.abs_tol / static_cast<double>(panels.size());

    struct Piece {
        Panel p;
        QuadResult r;
    };
    std::vector<Piece> pieces;
    for (const auto& p : panels) {
        pieces.push_back(Piece{p, integrate_one_panel(w, p, tol_each)});
        --budget;
    }

    auto recompute = [&]() {
        total = QuadResult{};
        for (const auto& pc : pieces) {
            total.value += pc.r.value;
            total.error_estimate += pc.r.error_estimate;
            total.converged = total.converged && pc.r.converged;
        }
    };
    recompute();

    // Bisect the worst panel while the summed estimate misses the tolerance.
    while (total.error_estimate > w.abs_tol && budget > 1) {
        size_t worst = 0;
        for (size_t i = 1; i < pieces.size(); ++i)
            if (pieces[i].r.error_estimate > pieces[worst].r.error_estimate) worst = i;
        Panel p = pieces[worst].p;
        if (!(p.b - p.a > 1e-13 * span)) break;
        double mid = 0.5 * (p.a + p.b);
        Panel left{p.a, mid, p.exp_a, 0.0, false};
        Panel right{mid, p.b, 0.0, p.exp_b, p.touches_upper};
        pieces[worst] = Piece{left, integrate_one_panel(w, left, 0.5 * tol_each)};
        pieces.push_back(Piece{right, integrate_one_panel(w, right, 0.5 * tol_each)});
        budget -= 2;
        recompute();
    }
    total.converged = total.error_estimate <= std::max(w.abs_tol, 1e-14 * std::fabs(total.value));
    return total;
}

double integrate_pv_log(const BaseMeasure& measure, double t) {
    if (measure.atom_at(t) != nullptr)
        throw NonIntegrable("principal value evaluated at an atom location");
    double total = 0.0;
    for (const auto& a : measure.atoms()) total += a.w / (t - a.x);

    // Each linear piece contributes c0*log|t-x0| - c0*log|t-x1| - slope*(x1-x0)
    // with c0 the piece's line evaluated at t. Coefficients of log|t-b| are
    // accumulated per boundary so that continuity cancels the singular terms
    // at interior breakpoints.
    std::map<double, double> log_coef;
    for (const auto& p : measure.ac_pieces()) {
        double slope = p.slope();
        double c0 = p.p0 + slope * (t - p.x0);
        log_coef[p.x0] += c0;
        log_coef[p.x1] -= c0;
        total -= slope * (p.x1 - p.x0);
    }
    for (const auto& [b, coef] : log_coef) {
        double d = std::fabs(t - b);
        if (d <= 1e-300) {
            if (std::fabs(coef) > 1e-10)
                throw NonIntegrable("principal value at a density discontinuity");
            continue;
        }
        total += coef * std::log(d);
    }
    return total;
}

} // namespace pdmean
