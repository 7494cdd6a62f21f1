#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "infodens/density.hpp"
#include "infodens/measures.hpp"
#include "infodens/transforms.hpp"

using namespace infodens;

TEST_CASE("relation names round-trip") {
    for (Relation r : {Relation::location, Relation::dispersion, Relation::skewness,
                       Relation::kurtosis, Relation::information}) {
        CHECK(relation_from_name(relation_name(r)) == r);
    }
    CHECK_THROWS_AS(relation_from_name("banana"), std::invalid_argument);
}

TEST_CASE("shift function recovers the transport map") {
    ShiftFunction s = shift_function(make_density("norm:0,1"), make_density("norm:2,1"));
    for (double x : {-1.0, 0.0, 1.5}) {
        CHECK(s.delta(x) == doctest::Approx(2.0).epsilon(1e-9));
    }
    ShiftFunction t = shift_function(make_density("norm:0,1"), make_density("norm:0,2"));
    for (double x : {-1.0, 0.5, 2.0}) {
        CHECK(t.delta(x) == doctest::Approx(x).epsilon(1e-8));
    }
}

TEST_CASE("location ordering") {
    OrderingVerdict v =
        check_ordering(make_density("norm:0,1"), make_density("norm:1,1"), Relation::location);
    CHECK(v.holds);
    CHECK(v.margin == doctest::Approx(1.0).epsilon(1e-6));

    OrderingVerdict rev =
        check_ordering(make_density("norm:1,1"), make_density("norm:0,1"), Relation::location);
    CHECK_FALSE(rev.holds);
    CHECK(rev.margin < -0.5);

    // identical distributions sit exactly on the boundary, inside the slack
    OrderingVerdict eq =
        check_ordering(make_density("norm:0,1"), make_density("norm:0,1"), Relation::location);
    CHECK(eq.holds);
}

TEST_CASE("dispersion ordering") {
    CHECK(check_ordering(make_density("norm:0,1"), make_density("norm:0,2"),
                         Relation::dispersion)
              .holds);
    OrderingVerdict rev = check_ordering(make_density("norm:0,2"), make_density("norm:0,1"),
                                         Relation::dispersion);
    CHECK_FALSE(rev.holds);
    // a pure shift never changes dispersion
    CHECK(check_ordering(make_density("norm:0,1"), make_density("norm:5,1"),
                         Relation::dispersion)
              .holds);
}

TEST_CASE("skewness ordering") {
    CHECK(check_ordering(make_density("norm:0,1"), make_density("lognorm:0,1"),
                         Relation::skewness)
              .holds);
    CHECK_FALSE(check_ordering(make_density("lognorm:0,1"), make_density("norm:0,1"),
                               Relation::skewness)
                    .holds);
}

TEST_CASE("kurtosis ordering") {
    CHECK(check_ordering(make_density("norm:0,1"), make_density("laplace:1"),
                         Relation::kurtosis)
              .holds);
    CHECK(check_ordering(make_density("unif:0,1"), make_density("norm:0,1"),
                         Relation::kurtosis)
              .holds);
    OrderingVerdict rev =
        check_ordering(make_density("norm:0,1"), make_density("unif:0,1"), Relation::kurtosis);
    CHECK_FALSE(rev.holds);
}

TEST_CASE("dilation necessary conditions") {
    OrderingVerdict v = dilation_check(make_density("norm:0,1"), make_density("norm:0,2"));
    CHECK(v.holds);
    CHECK(v.margin > 0.0);

    OrderingVerdict rev = dilation_check(make_density("norm:0,2"), make_density("norm:0,1"));
    CHECK_FALSE(rev.holds);
    CHECK(rev.margin < 0.0);

    // centering makes the check location-free
    CHECK(dilation_check(make_density("norm:5,1"), make_density("norm:0,2")).holds);
    CHECK(dilation_check(make_density("unif:0,1"), make_density("norm:0,1")).holds);
}

TEST_CASE("pdq of the uniform is flat at one") {
    GridDensity g = pdq(make_density("unif:0,1"));
    for (double v : g.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(g.mass() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("pdq of the normal is symmetric with center sqrt(2)") {
    GridDensity g = pdq(make_density("norm:0,1"), 512);
    CHECK(g.value_at(0.5) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-5));
    CHECK(g.value_at(0.2) == doctest::Approx(g.value_at(0.8)).epsilon(1e-9));
    double peak = *std::max_element(g.values.begin(), g.values.end());
    CHECK(peak == doctest::Approx(std::sqrt(2.0)).epsilon(1e-4));
    CHECK(g.mass() == doctest::Approx(1.0).epsilon(1e-2));
}

TEST_CASE("pdq is affine invariant") {
    GridDensity a = pdq(make_density("norm:0,1"), 256);
    GridDensity b = pdq(make_density("norm:3,2"), 256);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a.values[i] == doctest::Approx(b.values[i]).epsilon(1e-8));
    }
}

TEST_CASE("f:g entropy approximates relative entropy") {
    GridDensity g = f_colon_g(make_density("norm:1,1"), make_density("norm:0,1"), 512);
    // midpoint truncation keeps the grid value a few percent under KL = 0.5
    CHECK(-entropy(g) == doctest::Approx(0.484964015).epsilon(1e-6));
    CHECK(-entropy(g) == doctest::Approx(0.5).epsilon(0.05));
    CHECK(g.mass() == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("f:g rejects support escapes") {
    CHECK_THROWS_AS(f_colon_g(make_density("unif:0,2"), make_density("unif:0,1")),
                    NumericError);
    CHECK_THROWS_AS(f_colon_g(make_density("norm:0,1"), make_density("lognorm:0,1")),
                    NumericError);
}

TEST_CASE("f~ of any normal is flat at one") {
    for (const char* spec : {"norm:0,1", "norm:3,2"}) {
        GridDensity g = f_tilde(make_density(spec));
        CAPTURE(spec);
        for (double v : g.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("f~ entropy power is maximal exactly at the normal") {
    double lap = std::exp(2.0 * entropy(f_tilde(make_density("laplace:1"), 1024)));
    double lgn = std::exp(2.0 * entropy(f_tilde(make_density("lognorm:0,1"), 1024)));
    CHECK(lap < 1.0);
    CHECK(lap > 0.8);
    CHECK(lgn < lap);
}

TEST_CASE("decreasing rearrangement sorts and preserves mass") {
    GridDensity g = pdq(make_density("lognorm:0,1"), 256);
    GridDensity r = decreasing_rearrangement(g);
    REQUIRE(r.size() == g.size());
    CHECK(std::is_sorted(r.values.begin(), r.values.end(), std::greater<double>()));
    CHECK(r.mass() == doctest::Approx(g.mass()).epsilon(1e-12));
}

TEST_CASE("information order ranks flat below peaked") {
    GridDensity u = pdq(make_density("unif:0,1"), 512);
    GridDensity n = pdq(make_density("norm:0,1"), 512);

    OrderingVerdict up = info_order(u, n);
    CHECK(up.holds); // the normal is more informative than the uniform
    OrderingVerdict down = info_order(n, u);
    CHECK_FALSE(down.holds);
    CHECK(down.margin < 0.0);

    OrderingVerdict self = info_order(n, n);
    CHECK(self.holds);

    GridDensity small = pdq(make_density("norm:0,1"), 128);
    CHECK_THROWS_AS(info_order(small, n), NumericError);
}

TEST_CASE("information relation goes through check_ordering") {
    CHECK(check_ordering(make_density("unif:0,1"), make_density("norm:0,1"),
                         Relation::information)
              .holds);
    CHECK_FALSE(check_ordering(make_density("norm:0,1"), make_density("unif:0,1"),
                               Relation::information)
                    .holds);
}
