#include "hyperlap/hyperbolic.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "hyperlap/numerics.hpp"

using namespace hyperlap;

TEST_CASE("radius/euclidean dictionary") {
    CHECK(radius_from_euclidean(0.0) == 0.0);
    CHECK(radius_from_euclidean(0.5) == doctest::Approx(std::log(3.0)).epsilon(1e-14));
    CHECK(radius_from_euclidean(std::tanh(1.0)) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK_THROWS_AS(radius_from_euclidean(1.0), std::domain_error);
    CHECK_THROWS_AS(radius_from_euclidean(-0.1), std::domain_error);

    CHECK(euclidean_from_radius(0.0).value == 0.0);
    CHECK(euclidean_from_radius(2.0).value ==
          doctest::Approx(0.7615941559557649).epsilon(1e-14));
    // 1 - t = 2 e^{-r} / (1 + e^{-r}); far beyond double resolution of t itself
    CHECK(euclidean_from_radius(40.0).complement ==
          doctest::Approx(8.496708510583178e-18).epsilon(1e-13));
}

TEST_CASE("round trips") {
    for (double t : {0.0, 0.1, 0.5, 0.9, 0.999}) {
        const double r = radius_from_euclidean(t);
        CHECK(euclidean_from_radius(r).value == doctest::Approx(t).epsilon(1e-14));
    }
    // complement-based inverse covers the whole working range r in [0, 64]
    for (double r = 0.25; r <= 64.0; r *= 2.0) {
        const EuclideanRadius t = euclidean_from_radius(r);
        CHECK(radius_from_euclidean(t) == doctest::Approx(r).epsilon(1e-14));
    }
}

TEST_CASE("conformal factor") {
    CHECK(conformal_factor(0.0) == 2.0);
    CHECK(conformal_factor(0.5) == doctest::Approx(8.0 / 3.0).epsilon(1e-15));
    CHECK_THROWS_AS(conformal_factor(1.0), std::domain_error);
    // its radial line integral is the hyperbolic radius
    const double arc =
        numerics::integrate([](double t) { return conformal_factor(t); }, 0.0, 0.5);
    CHECK(arc == doctest::Approx(std::log(3.0)).epsilon(1e-10));
}

TEST_CASE("distance: examples") {
    const BallPoint origin{{0.0, 0.0, 0.0}};
    const BallPoint half{{0.5, 0.0, 0.0}};
    CHECK(distance(origin, half) == doctest::Approx(std::log(3.0)).epsilon(1e-13));
    CHECK(distance(half, half) == 0.0);
    const BallPoint anti{{-0.5, 0.0, 0.0}};
    CHECK(distance(half, anti) == doctest::Approx(2.0 * std::log(3.0)).epsilon(1e-13));
    CHECK_THROWS_AS(distance(origin, BallPoint{{1.0, 0.0, 0.0}}), std::domain_error);
}

TEST_CASE("distance: radial identity, symmetry, triangle, rotations") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> unit(-0.57, 0.57);
    auto random_point = [&] { return BallPoint{{unit(rng), unit(rng), unit(rng)}}; };
    const BallPoint origin{{0.0, 0.0, 0.0}};
    const double c = std::cos(0.7), s = std::sin(0.7);
    auto rotate = [&](const BallPoint& p) {
        return BallPoint{{c * p.coords[0] - s * p.coords[1],
                          s * p.coords[0] + c * p.coords[1], p.coords[2]}};
    };
    for (int i = 0; i < 50; ++i) {
        const BallPoint x = random_point(), y = random_point(), z = random_point();
        const double nx = std::sqrt(x.coords[0] * x.coords[0] +
                                    x.coords[1] * x.coords[1] +
                                    x.coords[2] * x.coords[2]);
        CHECK(distance(origin, x) ==
              doctest::Approx(radius_from_euclidean(nx)).epsilon(1e-12));
        CHECK(distance(x, y) == doctest::Approx(distance(y, x)).epsilon(1e-13));
        CHECK(distance(x, z) <= distance(x, y) + distance(y, z) + 1e-12);
        CHECK(distance(rotate(x), rotate(y)) ==
              doctest::Approx(distance(x, y)).epsilon(1e-12));
    }
}

TEST_CASE("spherical coordinate helpers") {
    const SphericalCoords sc{0.3, {0.6, 0.8, 0.0}};
    const BallPoint p = point_from_spherical(sc);
    CHECK(p.coords[0] == doctest::Approx(0.18));
    const SphericalCoords back = spherical_from_point(p);
    CHECK(back.t == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(back.theta[1] == doctest::Approx(0.8).epsilon(1e-14));
}

TEST_CASE("log_sinh and coth") {
    for (double t : {0.01, 0.5, 1.0, 5.0, 40.0, 300.0}) {
        if (t <= 20.0)
            CHECK(log_sinh(t) == doctest::Approx(std::log(std::sinh(t))).epsilon(1e-13));
        CHECK(coth(t) == doctest::Approx(1.0 / std::tanh(t)).epsilon(1e-15));
    }
    CHECK(log_sinh(300.0) == doctest::Approx(300.0 - M_LN2).epsilon(1e-15));
    CHECK_THROWS_AS(log_sinh(0.0), std::domain_error);
}

TEST_CASE("Dimensions invariant") {
    CHECK_NOTHROW(Dimensions(2, 2));
    CHECK_NOTHROW(Dimensions(3, 7));
    CHECK_THROWS_AS(Dimensions(1, 2), std::domain_error);
    CHECK_THROWS_AS(Dimensions(3, 2), std::domain_error);
}
