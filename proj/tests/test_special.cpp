#include <doctest.h>

#include <cmath>
#include <initializer_list>

#include "pdmean/special.hpp"

using namespace pdmean;

TEST_CASE("log_beta matches gamma identities") {
    CHECK(std::exp(log_beta(0.5, 0.5)) == doctest::Approx(M_PI).epsilon(1e-12));
    CHECK(std::exp(log_beta(2.0, 3.0)) == doctest::Approx(1.0 / 12.0).epsilon(1e-12));
}

TEST_CASE("incomplete beta endpoints and symmetry") {
    CHECK(incomplete_beta(0.0, 2.0, 3.0) == 0.0);
    CHECK(incomplete_beta(1.0, 2.0, 3.0) == 1.0);
    CHECK(incomplete_beta(0.5, 2.5, 2.5) == doctest::Approx(0.5).epsilon(1e-12));
    // I_x(a,b) = 1 - I_{1-x}(b,a)
    double x = 0.37, a = 1.3, b = 2.9;
    CHECK(incomplete_beta(x, a, b) ==
          doctest::Approx(1.0 - incomplete_beta(1.0 - x, b, a)).epsilon(1e-12));
}

TEST_CASE("incomplete beta against closed-form cases") {
    // I_x(1,b) = 1-(1-x)^b, I_x(a,1) = x^a
    for (double x : {0.1, 0.4, 0.8}) {
        CHECK(incomplete_beta(x, 1.0, 3.5) ==
              doctest::Approx(1.0 - std::pow(1.0 - x, 3.5)).epsilon(1e-12));
        CHECK(incomplete_beta(x, 2.5, 1.0) == doctest::Approx(std::pow(x, 2.5)).epsilon(1e-12));
    }
    // arcsine law
    for (double x : {0.2, 0.5, 0.9})
        CHECK(incomplete_beta(x, 0.5, 0.5) ==
              doctest::Approx(2.0 / M_PI * std::asin(std::sqrt(x))).epsilon(1e-12));
}

TEST_CASE("beta pdf integrates the cdf") {
    double a = 2.5, b = 2.5;
    double h = 1e-6;
    for (double x : {0.2, 0.5, 0.7}) {
        double fd = (beta_cdf(x + h, a, b) - beta_cdf(x - h, a, b)) / (2 * h);
        CHECK(fd == doctest::Approx(beta_pdf(x, a, b)).epsilon(1e-6));
    }
}

TEST_CASE("log_choose small values") {
    CHECK(std::exp(log_choose(5, 2)) == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(std::exp(log_choose(20, 10)) == doctest::Approx(184756.0).epsilon(1e-10));
}
