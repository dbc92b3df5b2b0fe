#include "pdmean/params.hpp"
#include "pdmean/errors.hpp"

#include <cmath>

namespace pdmean {

PDParams PDParams::stable(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw UnsupportedCombination("stable regime needs alpha in (0,1)");
    return PDParams{alpha, 0.0, Regime::Stable, 0, 0.0};
}

PDParams PDParams::general(double alpha, double theta) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw UnsupportedCombination("general regime needs alpha in (0,1)");
    if (!(theta > 0.0))
        throw UnsupportedCombination("general regime needs theta > 0");
    return PDParams{alpha, theta, Regime::General, 0, 0.0};
}

PDParams PDParams::dirichlet(double theta) {
    if (!(theta > 0.0))
        throw UnsupportedCombination("dirichlet regime needs theta > 0");
    return PDParams{0.0, theta, Regime::Dirichlet, 0, 0.0};
}

PDParams PDParams::sym_dirichlet(double kappa, int m) {
    if (!(kappa > 0.0) || m < 1)
        throw UnsupportedCombination("symmetric dirichlet regime needs kappa > 0 and m >= 1");
    return PDParams{-kappa, m * kappa, Regime::SymDirichlet, m, kappa};
}

PDParams PDParams::from_values(double alpha, double theta) {
    if (alpha == 0.0) return dirichlet(theta);
    if (alpha < 0.0) {
        double ratio = theta / (-alpha);
        int m = static_cast<int>(std::lround(ratio));
        if (m < 1 || std::fabs(ratio - m) > 1e-9)
            throw UnsupportedCombination("negative alpha needs theta = m * (-alpha) for integer m");
        return sym_dirichlet(-alpha, m);
    }
    if (theta == 0.0) return stable(alpha);
    return general(alpha, theta);
}

} // namespace pdmean
