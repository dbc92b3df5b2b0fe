#ifndef PDMEAN_PARAMS_HPP
#define PDMEAN_PARAMS_HPP

namespace pdmean {

enum class Regime {
    Stable,        // alpha in (0,1), theta = 0
    General,       // alpha in (0,1), theta > 0
    Dirichlet,     // alpha = 0, theta > 0
    SymDirichlet,  // alpha = -kappa < 0, theta = m*kappa
};

// The (alpha, theta) pair with its regime tag. Construct through the named
// factories so the tag always agrees with the values.
struct PDParams {
    double alpha = 0.0;
    double theta = 0.0;
    Regime regime = Regime::Stable;
    int m = 0;           // SymDirichlet only
    double kappa = 0.0;  // SymDirichlet only

    static PDParams stable(double alpha);
    static PDParams general(double alpha, double theta);
    static PDParams dirichlet(double theta);
    static PDParams sym_dirichlet(double kappa, int m);

    // Factory that infers the regime from raw (alpha, theta) values.
    static PDParams from_values(double alpha, double theta);
};

} // namespace pdmean

#endif
