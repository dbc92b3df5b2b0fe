#include <doctest.h>

#include <cmath>
#include <initializer_list>

#include "pdmean/closed_forms.hpp"
#include "pdmean/dist.hpp"
#include "pdmean/errors.hpp"
#include "pdmean/quadrature.hpp"
#include "pdmean/sampler.hpp"
#include "pdmean/special.hpp"

using namespace pdmean;

TEST_CASE("stable density recovers the occupation-time laws") {
    BaseMeasure b = BaseMeasure::bernoulli(0.5);
    CHECK(stable_density(b, 0.5, 0.5) == doctest::Approx(2.0 / M_PI).epsilon(1e-13));
    for (double alpha : {0.2, 0.35, 0.5, 0.65, 0.8})
        for (double p : {0.2, 0.35, 0.5, 0.65, 0.8}) {
            BaseMeasure m = BaseMeasure::bernoulli(p);
            for (int i = 1; i <= 9; ++i) {
                double y = i / 10.0;
                double got = stable_density(m, alpha, y);
                double want = lamperti_density(alpha, p, y);
                CHECK(std::fabs(got - want) / want < 1e-12);
            }
        }
}

TEST_CASE("stable density of the uniform measure") {
    BaseMeasure u = BaseMeasure::uniform(0.0, 1.0);
    CHECK(stable_density(u, 0.5, 0.5) == doctest::Approx(6.0 / M_PI).epsilon(1e-13));
}

TEST_CASE("stable density rejects inadmissible points") {
    BaseMeasure b = BaseMeasure::bernoulli(0.5);
    CHECK_THROWS_AS(stable_density(b, 0.5, 1.0), OffThetaSet);
    CHECK_THROWS_AS(stable_density(b, 0.5, 1.5), OffThetaSet);
}

TEST_CASE("stable cdf values and clamps") {
    BaseMeasure b = BaseMeasure::bernoulli(0.5);
    CHECK(stable_cdf(b, 0.5, 0.5) == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(stable_cdf(b, 0.5, -0.2) == 0.0);
    CHECK(stable_cdf(b, 0.5, 1.2) == 1.0);
    // indicator-mean distribution function in explicit form
    for (double alpha : {0.3, 0.7})
        for (double p : {0.2, 0.6}) {
            BaseMeasure m = BaseMeasure::bernoulli(p);
            for (double x : {0.2, 0.5, 0.8})
                CHECK(stable_cdf(m, alpha, x) ==
                      doctest::Approx(lamperti_cdf(alpha, p, x)).epsilon(1e-13));
        }
}

TEST_CASE("stable cdf agrees with integrated density") {
    double alpha = 0.3, p = 0.3, x = 0.6;
    BaseMeasure b = BaseMeasure::bernoulli(p);
    WeightedIntegrand w;
    w.lower = 0.0;
    w.upper = x;
    w.lower_exponent = alpha - 1.0;
    w.integrand = [&](double y) { return stable_density(b, alpha, y); };
    w.abs_tol = 1e-11;
    double quad = integrate_endpoint_weight(w).value;
    CHECK(std::fabs(stable_cdf(b, alpha, x) - quad) < 1e-8);
}

TEST_CASE("uniform law of the half-half indicator mean") {
    BaseMeasure b = BaseMeasure::bernoulli(0.5);
    PDParams pr = PDParams::general(0.5, 0.5);
    for (double y : {0.1, 0.35, 0.6, 0.9}) {
        CHECK(general_density(b, pr, y) == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(general_cdf(b, pr, y) == doctest::Approx(y).epsilon(1e-6));
    }
    CHECK(general_cdf(b, pr, 0.25) == doctest::Approx(0.25).epsilon(1e-6));
}

TEST_CASE("beta family through the theta-above-one path") {
    BaseMeasure b = BaseMeasure::bernoulli(0.5);
    PDParams pr = PDParams::general(0.5, 2.0);
    for (double y : {0.25, 0.5, 0.75})
        CHECK(general_density(b, pr, y) == doctest::Approx(beta_pdf(y, 2.5, 2.5)).epsilon(2e-6));
    // the distribution-function route carries no extra jump condition for
    // atomic measures
    for (double x : {0.3, 0.5, 0.7})
        CHECK(general_cdf(b, pr, x) == doctest::Approx(beta_cdf(x, 2.5, 2.5)).epsilon(1e-5));
}

TEST_CASE("unit-theta path equals the boundary jump") {
    BaseMeasure u = BaseMeasure::uniform(0.0, 1.0);
    PDParams pr = PDParams::general(0.5, 1.0);
    CHECK(general_density(u, pr, 0.5) == doctest::Approx(9.0 / M_PI).epsilon(1e-12));
}

TEST_CASE("general cdf reaches one at the upper hull point") {
    BaseMeasure b = BaseMeasure::bernoulli(0.5);
    PDParams pr = PDParams::general(0.5, 0.5);
    CHECK(general_cdf(b, pr, 1.0) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("general density outside the hull is rejected") {
    BaseMeasure b = BaseMeasure::bernoulli(0.5);
    PDParams pr = PDParams::general(0.5, 0.5);
    CHECK_THROWS_AS(general_density(b, pr, 1.5), OffThetaSet);
}

TEST_CASE("dirichlet density of the uniform measure") {
    BaseMeasure u = BaseMeasure::uniform(0.0, 1.0);
    CHECK(dirichlet_density(u, 1.0, 0.5) ==
          doctest::Approx(2.0 * std::exp(1.0) / M_PI).epsilon(1e-8));
    // the closed form with the classical exponent matches across the support
    for (double y : {0.2, 0.4, 0.7})
        CHECK(dirichlet_density(u, 1.0, y) ==
              doctest::Approx(dirichlet_uniform_unit_density(y)).epsilon(1e-8));
}

TEST_CASE("dirichlet regime routing for atomic measures") {
    // integer jumps on a two-point measure go through the affine beta form
    BaseMeasure half = BaseMeasure::bernoulli(0.5);
    for (double y : {0.2, 0.5, 0.9})
        CHECK(dirichlet_density(half, 2.0, y) == doctest::Approx(1.0).epsilon(1e-12));

    BaseMeasure single = BaseMeasure::from_atoms({{0.7, 1.0}});
    CHECK_THROWS_AS(dirichlet_density(single, 1.0, 0.7), UnsupportedCombination);
    CHECK(dirichlet_cdf(single, 1.0, 0.6) == 0.0);
    CHECK(dirichlet_cdf(single, 1.0, 0.8) == 1.0);

    // density below theta = 1 is not served with atoms present
    CHECK_THROWS_AS(dirichlet_density(half, 0.5, 0.5), UnsupportedCombination);
}

TEST_CASE("dirichlet cdf matches the beta law for indicator means") {
    for (double theta : {1.5, 2.0}) {
        for (double p : {0.3, 0.5}) {
            BaseMeasure b = BaseMeasure::bernoulli(p);
            for (double x : {0.25, 0.5, 0.75}) {
                double want = beta_cdf(x, theta * p, theta * (1 - p));
                CHECK(dirichlet_cdf(b, theta, x) == doctest::Approx(want).epsilon(2e-6));
            }
        }
    }
    // symmetric case stays at one half
    BaseMeasure b = BaseMeasure::bernoulli(0.5);
    CHECK(dirichlet_cdf(b, 3.0, 0.5) == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("dirichlet cdf for a three-atom measure against stick sampling") {
    // small jumps: the plain integral route with an interior atom
    BaseMeasure m3 = BaseMeasure::from_atoms({{0.0, 0.3}, {0.5, 0.3}, {1.0, 0.4}});
    SamplerConfig cfg;
    cfg.seed = 424242;
    SampleBatch b = sample_stick(m3, PDParams::dirichlet(2.0), 20000, cfg);
    CHECK(ks_distance(b, [&](double x) { return dirichlet_cdf(m3, 2.0, x); }) < 0.02);
}

TEST_CASE("dirichlet cdf with a heavy interior atom against stick sampling") {
    // the interior atom carries weight above 1/theta, exercising the
    // regularized panels on both of its sides
    BaseMeasure m3 = BaseMeasure::from_atoms({{0.0, 0.2}, {0.5, 0.6}, {1.0, 0.2}});
    SamplerConfig cfg;
    cfg.seed = 434343;
    SampleBatch b = sample_stick(m3, PDParams::dirichlet(1.8), 20000, cfg);
    CHECK(ks_distance(b, [&](double x) { return dirichlet_cdf(m3, 1.8, x); }) < 0.02);
}

TEST_CASE("dirichlet jump guard for mixed measures") {
    BaseMeasure mixed = BaseMeasure::mixed({ {0.25, 0.6} }, {0.5, 1.0}, {0.8, 0.8});
    CHECK_THROWS_AS(dirichlet_cdf(mixed, 2.0, 0.9), JumpTooLarge);
    // small jumps integrate fine
    CHECK(dirichlet_cdf(mixed, 1.2, 1.0) == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("symmetric dirichlet single-draw case") {
    BaseMeasure u = BaseMeasure::uniform(0.0, 1.0);
    SymDirichletEval e = symdirichlet_density_cdf(u, 0.7, 1, 0.3);
    CHECK(e.cdf == doctest::Approx(0.3).epsilon(1e-12));
    BaseMeasure b = BaseMeasure::bernoulli(0.4);
    CHECK(symdirichlet_density_cdf(b, 0.7, 1, 0.5).cdf == doctest::Approx(0.6).epsilon(1e-12));
}

TEST_CASE("symmetric dirichlet two-draw arcsine mixture") {
    BaseMeasure u = BaseMeasure::uniform(0.0, 1.0);
    SymDirichletEval e = symdirichlet_density_cdf(u, 0.5, 2, 0.5);
    CHECK(e.cdf == doctest::Approx(0.5).epsilon(1e-9));
    REQUIRE(e.density.has_value());
    CHECK(*e.density == doctest::Approx(4.0 / M_PI).epsilon(1e-12));
}

TEST_CASE("symmetric dirichlet rejects unsupported combinations") {
    BaseMeasure u = BaseMeasure::uniform(0.0, 1.0);
    CHECK_THROWS_AS(symdirichlet_density_cdf(u, 0.8, 2, 0.5), UnsupportedCombination);
    BaseMeasure b = BaseMeasure::bernoulli(0.5);
    CHECK_THROWS_AS(symdirichlet_density_cdf(b, 0.5, 2, 0.5), UnsupportedCombination);
}

TEST_CASE("symmetric dirichlet converges to the dirichlet law") {
    BaseMeasure u = BaseMeasure::uniform(0.0, 1.0);
    double prev = 1e9;
    for (int m : {8, 32, 128}) {
        double sup = 0.0;
        for (int i = 1; i <= 20; ++i) {
            double x = i / 21.0;
            double a = symdirichlet_density_cdf(u, 1.0 / m, m, x).cdf;
            double d = dirichlet_cdf(u, 1.0, x);
            sup = std::max(sup, std::fabs(a - d));
        }
        CHECK(sup < prev);
        prev = sup;
    }
    CHECK(prev < 0.02);
}

TEST_CASE("small-alpha general path approaches the dirichlet law") {
    BaseMeasure u = BaseMeasure::uniform(0.0, 1.0);
    PDParams pr = PDParams::general(1e-4, 1.0);
    for (double y : {0.2, 0.5, 0.8})
        CHECK(std::fabs(general_density(u, pr, y) - dirichlet_density(u, 1.0, y)) < 5e-3);
}

TEST_CASE("grid evaluation routes and flags") {
    BaseMeasure b = BaseMeasure::bernoulli(0.5);
    PDParams pr = PDParams::general(0.5, 0.5);
    DistGrid g = eval_grid(b, pr, {0.25, 0.5, 0.75});
    REQUIRE(g.points.size() == 3);
    for (size_t i = 0; i < 3; ++i) {
        CHECK(g.flags[i] == PointFlag::ok);
        CHECK(g.q[i] == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(g.Q[i] == doctest::Approx(g.points[i]).epsilon(1e-6));
    }

    DistGrid empty = eval_grid(b, pr, {});
    CHECK(empty.points.empty());

    DistGrid with_atom = eval_grid(b, pr, {0.5, 1.0});
    CHECK(with_atom.flags[0] == PointFlag::ok);
    CHECK(with_atom.flags[1] == PointFlag::atom_collision);
}

TEST_CASE("grid evaluation in parallel matches serial") {
    BaseMeasure b = BaseMeasure::bernoulli(0.4);
    PDParams pr = PDParams::general(0.4, 0.8);
    std::vector<double> pts;
    for (int i = 1; i <= 12; ++i) pts.push_back(i / 13.0);
    DistGrid serial = eval_grid(b, pr, pts, 1);
    DistGrid parallel = eval_grid(b, pr, pts, 4);
    for (size_t i = 0; i < pts.size(); ++i) {
        CHECK(serial.q[i] == parallel.q[i]);
        CHECK(serial.Q[i] == parallel.Q[i]);
    }
}

TEST_CASE("cdf stays monotone over grids") {
    BaseMeasure b = BaseMeasure::bernoulli(0.3);
    PDParams pr = PDParams::general(0.6, 1.5);
    std::vector<double> pts;
    for (int i = 1; i <= 15; ++i) pts.push_back(i / 16.0);
    DistGrid g = eval_grid(b, pr, pts);
    for (size_t i = 1; i < pts.size(); ++i) CHECK(g.Q[i] >= g.Q[i - 1] - 1e-9);
    for (double q : g.q) CHECK(q >= 0.0);
}
