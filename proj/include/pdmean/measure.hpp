#ifndef PDMEAN_MEASURE_HPP
#define PDMEAN_MEASURE_HPP

#include <optional>
#include <vector>

namespace pdmean {

struct Atom {
    double x;
    double w;
};

// One linear piece of the absolutely continuous density on [x0, x1],
// interpolating between density values p0 and p1.
struct LinearPiece {
    double x0, x1;
    double p0, p1;

    double density_at(double t) const {
        return p0 + (p1 - p0) * (t - x0) / (x1 - x0);
    }
    double slope() const { return (p1 - p0) / (x1 - x0); }
    double mass() const { return 0.5 * (p0 + p1) * (x1 - x0); }
};

struct SupportHull {
    double lo = 0.0;
    double hi = 0.0;
    bool contains(double t) const { return t >= lo && t <= hi; }
};

// A probability measure on [0, inf) made of finitely many atoms plus an
// optional compactly supported piecewise-linear density. Immutable after
// construction; all evaluations are pure.
class BaseMeasure {
public:
    static constexpr double kAtomLocationTol = 1e-12;  // user-facing collision detection
    static constexpr double kExactHitTol = 1e-300;     // genuine divergence in the transforms
    static constexpr double kMassTol = 1e-12;

    static BaseMeasure from_atoms(std::vector<Atom> atoms);
    static BaseMeasure uniform(double a, double b);
    static BaseMeasure bernoulli(double p);
    static BaseMeasure table(const std::vector<double>& x, const std::vector<double>& pdf);
    // General constructor: atoms plus an optional tabulated density whose
    // joint mass must be 1.
    static BaseMeasure mixed(std::vector<Atom> atoms,
                             const std::vector<double>& x,
                             const std::vector<double>& pdf);

    const std::vector<Atom>& atoms() const { return atoms_; }
    const std::vector<LinearPiece>& ac_pieces() const { return pieces_; }
    bool has_atoms() const { return !atoms_.empty(); }
    bool has_ac() const { return !pieces_.empty(); }
    bool purely_atomic() const { return pieces_.empty(); }
    double ac_mass() const { return ac_mass_; }
    SupportHull hull() const { return hull_; }

    // Atom within location tolerance of t, if any.
    const Atom* atom_at(double t) const;

    // Density of the a.c. part at t (0 outside its support).
    double ac_density(double t) const;

    // Psi(t): total mass at or below t.
    double cdf_psi(double t) const;

    // A+_{d}(t) = int_t^inf (x-t)^d eta(dx).  Exact per atom / per linear piece.
    double abel_plus(double d, double t) const;

    // A_{d}(t) = int_0^t (t-x)^d eta(dx).
    double abel_minus(double d, double t) const;

    // R(t) = int log|t-x| eta(dx), t not an atom.
    double log_kernel_r(double t) const;

    // Membership in the admissible evaluation set for exponent alpha-1
    // transforms: inside the hull, off every atom, density locally bounded
    // (always true for the admitted measure classes).
    bool theta_set_contains(double alpha, double t) const;

    // Interior points where integrands built from this measure lose
    // smoothness: atom locations and density breakpoints.
    std::vector<double> singular_points() const;

private:
    BaseMeasure(std::vector<Atom> atoms, std::vector<LinearPiece> pieces);
    void validate() const;

    std::vector<Atom> atoms_;       // strictly increasing locations
    std::vector<LinearPiece> pieces_;
    double ac_mass_ = 0.0;
    SupportHull hull_;
};

} // namespace pdmean

#endif
