#include <doctest.h>

#include <cmath>
#include <functional>
#include <initializer_list>
#include <vector>

#include "pdmean/closed_forms.hpp"
#include "pdmean/dist.hpp"
#include "pdmean/kernel.hpp"
#include "pdmean/quadrature.hpp"
#include "pdmean/special.hpp"

using namespace pdmean;

TEST_CASE("lamperti density point values") {
    CHECK(lamperti_density(0.5, 0.5, 0.5) == doctest::Approx(2.0 / M_PI).epsilon(1e-14));
    CHECK(lamperti_density(0.5, 0.5, 0.2) == doctest::Approx(1.0 / (0.4 * M_PI)).epsilon(1e-14));
    CHECK(lamperti_density(0.5, 0.5, 0.0) == 0.0);
}

TEST_CASE("lamperti density symmetry under (p,x) reflection") {
    for (double alpha : {0.3, 0.6})
        for (double p : {0.2, 0.45})
            for (double x : {0.1, 0.37, 0.8})
                CHECK(lamperti_density(alpha, p, x) ==
                      doctest::Approx(lamperti_density(alpha, 1.0 - p, 1.0 - x)).epsilon(1e-13));
}

TEST_CASE("lamperti cdf values and limits") {
    CHECK(lamperti_cdf(0.5, 0.5, 0.5) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(lamperti_cdf(0.5, 0.5, 0.25) == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
    CHECK(lamperti_cdf(0.5, 0.5, 0.0) == 0.0);
    CHECK(lamperti_cdf(0.5, 0.5, 1.0) == 1.0);
    // arcsine law across the support
    for (double x : {0.1, 0.4, 0.9})
        CHECK(lamperti_cdf(0.5, 0.5, x) ==
              doctest::Approx(2.0 / M_PI * std::asin(std::sqrt(x))).epsilon(1e-13));
}

TEST_CASE("unit-theta closed form for the uniform measure") {
    BaseMeasure u = BaseMeasure::uniform(0.0, 1.0);
    CHECK(pd_alpha1_density(u, 0.5, 0.5) == doctest::Approx(9.0 / M_PI).epsilon(1e-13));
    // explicit display: (9/2pi) y^{3/2}(1-y)^{3/2} / (y^3 + (1-y)^3)^2
    for (double y : {0.2, 0.6, 0.85}) {
        double num = std::pow(y, 1.5) * std::pow(1.0 - y, 1.5);
        double den = std::pow(y, 3.0) + std::pow(1.0 - y, 3.0);
        CHECK(pd_alpha1_density(u, 0.5, y) ==
              doctest::Approx(4.5 / M_PI * num / (den * den)).epsilon(1e-13));
    }
    CHECK(pd_alpha1_density(u, 0.5, 0.0) == 0.0);
    CHECK(pd_alpha1_density(u, 0.5, 1.0) == 0.0);
}

TEST_CASE("unit-theta closed form agrees with the transform-kernel route") {
    BaseMeasure b = BaseMeasure::bernoulli(0.35);
    for (double alpha : {0.4, 0.5, 0.7}) {
        PDParams pr = PDParams::general(alpha, 1.0);
        for (double y : {0.15, 0.5, 0.85}) {
            CHECK(pd_alpha1_density(b, alpha, y) ==
                  doctest::Approx(delta(b, pr, y)).epsilon(1e-12));
            CHECK(bernoulli_pd_alpha1_density(alpha, 0.35, y) ==
                  doctest::Approx(delta(b, pr, y)).epsilon(1e-12));
        }
    }
}

TEST_CASE("multiple-angle reduction at reciprocal-integer alpha") {
    BaseMeasure b = BaseMeasure::bernoulli(0.4);
    for (int n : {2, 3}) {
        for (double y : {0.2, 0.5, 0.8}) {
            GammaZeta g = gamma_zeta(b, 1.0 / n, y);
            if (g.zeta <= 1e-8) continue;
            CHECK(pd_alpha1_multiple_angle(b, n, y) ==
                  doctest::Approx(pd_alpha1_density(b, 1.0 / n, y)).epsilon(1e-10));
        }
    }
}

TEST_CASE("mixture identity density is uniform in the half-half case") {
    BaseMeasure b = BaseMeasure::bernoulli(0.5);
    for (double t : {0.12, 0.4, 0.5, 0.77})
        CHECK(pd_alpha_one_minus_alpha_density(b, 0.5, t) == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(pd_alpha_one_minus_alpha_density(b, 0.5, 1.3) == 0.0);
}

TEST_CASE("mixture identity density matches the generic pipeline") {
    BaseMeasure b = BaseMeasure::bernoulli(0.3);
    PDParams pr = PDParams::general(0.4, 0.6);
    for (int i = 1; i <= 9; ++i) {
        double y = i / 10.0;
        CHECK(std::fabs(pd_alpha_one_minus_alpha_density(b, 0.4, y) -
                        general_density(b, pr, y)) < 1e-4);
    }
}

TEST_CASE("mixture identity for an atomless measure") {
    BaseMeasure u = BaseMeasure::uniform(0.0, 1.0);
    PDParams pr = PDParams::general(0.5, 0.5);
    for (double y : {0.3, 0.6})
        CHECK(std::fabs(pd_alpha_one_minus_alpha_density(u, 0.5, y) -
                        general_density(u, pr, y)) < 1e-4);
}

TEST_CASE("bridge occupation density is uniform in the symmetric half case") {
    for (double y : {0.1, 0.5, 0.9})
        CHECK(pd_alpha_alpha_density_bernoulli(0.5, 0.5, y) == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("bridge occupation density matches the generic pipeline") {
    BaseMeasure b = BaseMeasure::bernoulli(0.3);
    PDParams pr = PDParams::general(0.5, 0.5);
    for (int i = 1; i <= 9; ++i) {
        double y = i / 10.0;
        CHECK(std::fabs(pd_alpha_alpha_density_bernoulli(0.5, 0.3, y) -
                        general_density(b, pr, y)) < 1e-4);
    }
}

TEST_CASE("bridge occupation density symmetry") {
    for (double alpha : {0.35, 0.6})
        for (double p : {0.25, 0.4})
            for (double y : {0.2, 0.7})
                CHECK(pd_alpha_alpha_density_bernoulli(alpha, p, y) ==
                      doctest::Approx(pd_alpha_alpha_density_bernoulli(alpha, 1 - p, 1 - y))
                          .epsilon(1e-9));
}

TEST_CASE("beta special cases") {
    ClosedForm cf = dirichlet_indicator_closed_form(2.0, 0.3);
    CHECK(cf.density(0.5) == doctest::Approx(beta_pdf(0.5, 0.6, 1.4)).epsilon(1e-14));
    ClosedForm ch = half_stable_indicator_closed_form(2.0);
    CHECK(ch.density(0.5) == doctest::Approx(beta_pdf(0.5, 2.5, 2.5)).epsilon(1e-14));
    // theta = 1/2 at alpha = 1/2 degenerates to the uniform law
    ClosedForm cu = half_stable_indicator_closed_form(0.5);
    for (double x : {0.2, 0.8}) CHECK(cu.density(x) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("every closed form integrates to one") {
    struct Entry {
        const char* name;
        std::function<double(double)> density;
        double edge_exp;  // known algebraic edge behavior
    };
    std::vector<Entry> entries;
    entries.push_back({"lamperti", [](double x) { return lamperti_density(0.6, 0.3, x); }, -0.4});
    entries.push_back(
        {"stable-uniform", [](double x) { return stable_uniform_density(0.4, x); }, 0.4});
    entries.push_back(
        {"pd-alpha-1", [](double x) { return bernoulli_pd_alpha1_density(0.6, 0.4, x); }, 0.0});
    entries.push_back({"pd-alpha-alpha",
                       [](double x) { return pd_alpha_alpha_density_bernoulli(0.4, 0.3, x); },
                       0.0});
    entries.push_back({"beta", [](double x) { return beta_pdf(x, 2.5, 2.5); }, 0.0});
    for (const auto& e : entries) {
        WeightedIntegrand w;
        w.lower = 0.0;
        w.upper = 1.0;
        w.lower_exponent = std::min(e.edge_exp, 0.0);
        w.integrand = e.density;
        w.abs_tol = 1e-9;
        QuadResult r = integrate_endpoint_weight(w);
        INFO(e.name);
        CHECK(r.value == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("closed form registry lookup") {
    auto cf = closed_form_by_name("lamperti", 0.5, 0.0, 0.5);
    REQUIRE(cf.has_value());
    CHECK(cf->density(0.5) == doctest::Approx(2.0 / M_PI).epsilon(1e-13));
    CHECK_FALSE(closed_form_by_name("nope", 0.5, 0.0, 0.5).has_value());
}
