#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "infodens/quadrature.hpp"

using namespace infodens;

TEST_CASE("polynomial integrals are exact to tolerance") {
    CHECK(integrate([](double x) { return x * x; }, 0.0, 1.0) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(integrate([](double x) { return 3.0 * x * x - 2.0 * x + 1.0; }, -1.0, 2.0) ==
          doctest::Approx(9.0 - 3.0 + 3.0).epsilon(1e-12));
}

TEST_CASE("gaussian mass over a wide window") {
    auto phi = [](double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI); };
    CHECK(integrate(phi, -10.0, 10.0) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("a peak much thinner than the interval is still captured") {
    // regression: a single Simpson pass sees ~0 at every node on these windows
    const double mu = 0.4, s = 0.05;
    auto peak = [=](double x) {
        double t = (x - mu) / s;
        return std::exp(-0.5 * t * t) / (s * std::sqrt(2.0 * M_PI));
    };
    // forced initial bisections place a node inside the peak's bulk
    CHECK(integrate(peak, -8.0, 8.0) == doctest::Approx(1.0).epsilon(1e-8));
    // a window too wide for blind bisection needs a split hint at the feature
    CHECK(integrate(peak, 1e-3, 1100.0, std::vector<double>{mu})
          == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("interior kinks integrate exactly when split") {
    double v = integrate([](double x) { return std::fabs(x); }, -1.0, 2.0,
                         std::vector<double>{0.0});
    CHECK(v == doctest::Approx(2.5).epsilon(1e-12));
}

TEST_CASE("find_root brackets and converges") {
    double r = find_root([](double x) { return std::cos(x); }, 1.0, 2.0);
    CHECK(r == doctest::Approx(M_PI / 2.0).epsilon(1e-12));
    CHECK_THROWS_AS(find_root([](double x) { return 1.0 + x * x; }, -1.0, 1.0),
                    NumericError);
}

TEST_CASE("maximize finds interior and boundary maxima") {
    auto m1 = maximize([](double x) { return -(x - 0.3) * (x - 0.3); }, 0.0, 1.0);
    CHECK(m1.x_max == doctest::Approx(0.3).epsilon(1e-7));
    CHECK(m1.g_max == doctest::Approx(0.0).epsilon(1e-10));

    // taller of two separated peaks wins
    auto bimodal = [](double x) {
        return std::exp(-50.0 * (x - 0.2) * (x - 0.2)) +
               1.5 * std::exp(-50.0 * (x - 0.8) * (x - 0.8));
    };
    auto m2 = maximize(bimodal, 0.0, 1.0, 256);
    CHECK(m2.x_max == doctest::Approx(0.8).epsilon(1e-4));
    CHECK(m2.g_max == doctest::Approx(1.5).epsilon(1e-6));

    auto m3 = maximize([](double x) { return x; }, 0.0, 2.0);
    CHECK(m3.x_max == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("central difference derivative") {
    CHECK(derivative([](double x) { return std::sin(x); }, 0.3, 1e-6) ==
          doctest::Approx(std::cos(0.3)).epsilon(1e-9));
}
