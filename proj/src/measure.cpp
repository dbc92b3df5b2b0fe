#include "pdmean/measure.hpp"
#include "pdmean/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace pdmean {

namespace {

// int_0^u s^d (c0 + c1 s) ds for d > -1, u >= 0.
double power_linear_primitive(double u, double d, double c0, double c1) {
    if (u <= 0.0) return 0.0;
    double up = std::pow(u, d + 1.0);
    return c0 * up / (d + 1.0) + c1 * up * u / (d + 2.0);
}

// int_0^u (c0 + c1 s) log(s) ds, with the s->0 limit taken.
double log_linear_primitive(double u, double c0, double c1) {
    if (u <= 0.0) return 0.0;
    double lu = std::log(u);
    return c0 * u * (lu - 1.0) + c1 * u * u * (0.5 * lu - 0.25);
}

} // namespace

BaseMeasure::BaseMeasure(std::vector<Atom> atoms, std::vector<LinearPiece> pieces)
    : atoms_(std::move(atoms)), pieces_(std::move(pieces)) {
    std::sort(atoms_.begin(), atoms_.end(), [](const Atom& a, const Atom& b) { return a.x < b.x; });
    ac_mass_ = 0.0;
    for (const auto& p : pieces_) ac_mass_ += p.mass();
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& a : atoms_) {
        lo = std::min(lo, a.x);
        hi = std::max(hi, a.x);
    }
    if (!pieces_.empty()) {
        lo = std::min(lo, pieces_.front().x0);
        hi = std::max(hi, pieces_.back().x1);
    }
    hull_ = SupportHull{lo, hi};
    validate();
}

void BaseMeasure::validate() const {
    if (atoms_.empty() && pieces_.empty())
        throw MeasureParseError("measure has no atoms and no density");
    double total = ac_mass_;
    for (size_t i = 0; i < atoms_.size(); ++i) {
        const Atom& a = atoms_[i];
        if (a.x < 0.0) throw MeasureParseError("atom location must be nonnegative");
        if (!(a.w > 0.0 && a.w <= 1.0)) throw MeasureParseError("atom weight must lie in (0,1]");
        if (i > 0 && !(atoms_[i - 1].x < a.x))
            throw MeasureParseError("atom locations must be strictly increasing");
        total += a.w;
    }
    for (size_t i = 0; i < pieces_.size(); ++i) {
        const LinearPiece& p = pieces_[i];
        if (p.x0 < 0.0) throw MeasureParseError("density support must be nonnegative");
        if (!(p.x0 < p.x1)) throw MeasureParseError("density breakpoints must be strictly increasing");
        if (p.p0 < 0.0 || p.p1 < 0.0) throw MeasureParseError("density values must be nonnegative");
        if (i > 0 && pieces_[i - 1].x1 > p.x0)
            throw MeasureParseError("density pieces must not overlap");
    }
    if (std::fabs(total - 1.0) > kMassTol) {
        std::ostringstream os;
        os << "total mass " << total << " differs from 1 beyond tolerance";
        throw MeasureParseError(os.str());
    }
}

BaseMeasure BaseMeasure::from_atoms(std::vector<Atom> atoms) {
    return BaseMeasure(std::move(atoms), {});
}

BaseMeasure BaseMeasure::uniform(double a, double b) {
    if (!(a < b)) throw MeasureParseError("uniform measure needs a < b");
    double h = 1.0 / (b - a);
    return BaseMeasure({}, {LinearPiece{a, b, h, h}});
}

BaseMeasure BaseMeasure::bernoulli(double p) {
    if (!(p > 0.0 && p < 1.0)) throw MeasureParseError("bernoulli parameter must lie in (0,1)");
    return BaseMeasure({Atom{0.0, 1.0 - p}, Atom{1.0, p}}, {});
}

BaseMeasure BaseMeasure::table(const std::vector<double>& x, const std::vector<double>& pdf) {
    return mixed({}, x, pdf);
}

BaseMeasure BaseMeasure::mixed(std::vector<Atom> atoms,
                               const std::vector<double>& x,
                               const std::vector<double>& pdf) {
    if (x.size() != pdf.size()) throw MeasureParseError("table x and pdf lengths differ");
    std::vector<LinearPiece> pieces;
    if (!x.empty()) {
        if (x.size() < 2) throw MeasureParseError("table needs at least two breakpoints");
        for (size_t i = 0; i + 1 < x.size(); ++i) {
            if (!(x[i] < x[i + 1])) throw MeasureParseError("table breakpoints must be strictly increasing");
            pieces.push_back(LinearPiece{x[i], x[i + 1], pdf[i], pdf[i + 1]});
        }
    }
    return BaseMeasure(std::move(atoms), std::move(pieces));
}

const Atom* BaseMeasure::atom_at(double t) const {
    for (const auto& a : atoms_)
        if (std::fabs(a.x - t) <= kAtomLocationTol) return &a;
    return nullptr;
}

double BaseMeasure::ac_density(double t) const {
    for (const auto& p : pieces_)
        if (t >= p.x0 && t <= p.x1) return p.density_at(t);
    return 0.0;
}

double BaseMeasure::cdf_psi(double t) const {
    double s = 0.0;
    for (const auto& a : atoms_) {
        if (a.x <= t) s += a.w;
        else break;
    }
    for (const auto& p : pieces_) {
        if (t >= p.x1) {
            s += p.mass();
        } else if (t > p.x0) {
            double u = t - p.x0;
            s += p.p0 * u + 0.5 * p.slope() * u * u;
        }
    }
    return s;
}

double BaseMeasure::abel_plus(double d, double t) const {
    if (d <= -1.0) throw NonIntegrable("abel transform exponent must exceed -1");
    double s = 0.0;
    for (const auto& a : atoms_) {
        double u = a.x - t;
        // Only an exact hit diverges; quadrature nodes may probe arbitrarily close.
        if (std::fabs(u) <= kExactHitTol) {
            if (d < 0.0) throw NonIntegrable("abel transform evaluated on an atom with negative exponent");
            continue; // zero contribution for d >= 0
        }
        if (u > 0.0) s += a.w * std::pow(u, d);
    }
    for (const auto& p : pieces_) {
        if (p.x1 <= t) continue;
        double lo = std::max(p.x0, t);
        // density as c0 + c1*u with u = x - t
        double c1 = p.slope();
        double c0 = p.p0 + c1 * (t - p.x0);
        s += power_linear_primitive(p.x1 - t, d, c0, c1) - power_linear_primitive(lo - t, d, c0, c1);
    }
    return s;
}

double BaseMeasure::abel_minus(double d, double t) const {
    if (d <= -1.0) throw NonIntegrable("abel transform exponent must exceed -1");
    double s = 0.0;
    for (const auto& a : atoms_) {
        double u = t - a.x;
        if (std::fabs(u) <= kExactHitTol) {
            if (d < 0.0) throw NonIntegrable("abel transform evaluated on an atom with negative exponent");
            continue;
        }
        if (u > 0.0) s += a.w * std::pow(u, d);
    }
    for (const auto& p : pieces_) {
        if (p.x0 >= t) continue;
        double hi = std::min(p.x1, t);
        // density as c0 + c1*u with u = t - x
        double slope = p.slope();
        double c0 = p.p0 + slope * (t - p.x0);
        double c1 = -slope;
        s += power_linear_primitive(t - p.x0, d, c0, c1) - power_linear_primitive(t - hi, d, c0, c1);
    }
    return s;
}

double BaseMeasure::log_kernel_r(double t) const {
    double s = 0.0;
    for (const auto& a : atoms_) {
        double u = std::fabs(a.x - t);
        if (u <= kExactHitTol)
            throw NonIntegrable("log kernel evaluated at an atom location");
        s += a.w * std::log(u);
    }
    for (const auto& p : pieces_) {
        double slope = p.slope();
        if (t <= p.x0 || t >= p.x1) {
            // whole piece on one side of t; u = |x - t|
            double a = std::fabs(p.x0 - t), b = std::fabs(p.x1 - t);
            if (a > b) std::swap(a, b);
            double c0, c1;
            if (t <= p.x0) {           // u = x - t
                c0 = p.p0 + slope * (t - p.x0);
                c1 = slope;
            } else {                   // u = t - x
                c0 = p.p0 + slope * (t - p.x0);
                c1 = -slope;
            }
            s += log_linear_primitive(b, c0, c1) - log_linear_primitive(a, c0, c1);
        } else {
            // split at t; density value at t is shared by both halves
            double pt = p.density_at(t);
            s += log_linear_primitive(t - p.x0, pt, -slope);
            s += log_linear_primitive(p.x1 - t, pt, slope);
        }
    }
    return s;
}

bool BaseMeasure::theta_set_contains(double alpha, double t) const {
    (void)alpha; // bounded-density sufficient condition does not depend on alpha
    if (!hull_.contains(t)) return false;
    if (atom_at(t) != nullptr) return false;
    return true;
}

std::vector<double> BaseMeasure::singular_points() const {
    std::vector<double> pts;
    for (const auto& a : atoms_) pts.push_back(a.x);
    for (const auto& p : pieces_) {
        pts.push_back(p.x0);
        pts.push_back(p.x1);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](double a, double b) { return std::fabs(a - b) <= kAtomLocationTol; }),
              pts.end());
    return pts;
}

} // namespace pdmean
