#include "doctest.h"

#include <cmath>
#include <cstdint>

#include "entrolab/metric.hpp"
#include "entrolab/sample.hpp"
#include "entrolab/system.hpp"

using namespace entrolab;

namespace {
double mix(std::uint64_t& s) {
    s += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return uniform01(z ^ (z >> 31));
}
} // namespace

TEST_CASE("arc distance is the shortest way around") {
    const Metric m = Metric::circle_arc();
    CHECK(distance(m, Point::circle(0.1), Point::circle(0.9)) == doctest::Approx(0.2));
    CHECK(distance(m, Point::circle(0.0), Point::circle(0.5)) == doctest::Approx(0.5));
    CHECK(distance(m, Point::circle(0.3), Point::circle(0.3)) == 0.0);
}

TEST_CASE("chord distance is bounded by 1/pi") {
    const Metric m = Metric::circle_chord();
    CHECK(distance(m, Point::circle(0.0), Point::circle(0.5)) ==
          doctest::Approx(0.3183098861837907).epsilon(1e-12));
    CHECK(distance(m, Point::circle(0.0), Point::circle(0.25)) ==
          doctest::Approx(0.22507907903927651).epsilon(1e-12));
    // chord and arc agree to second order for small separations
    CHECK(distance(m, Point::circle(0.0), Point::circle(0.001)) ==
          doctest::Approx(0.001).epsilon(1e-4));
}

TEST_CASE("torus distance is the max of per-coordinate arcs") {
    const Metric m = Metric::torus_max();
    CHECK(distance(m, Point::torus({0.1, 0.9}), Point::torus({0.9, 0.2})) ==
          doctest::Approx(0.3));
}

TEST_CASE("symbolic distance decays with the cylinder depth") {
    const Metric m = Metric::symbolic_cylinder(0.5);
    const Point a = Point::word({0, 1, 0}, 2);
    const Point b = Point::word({0, 1, 1}, 2);
    CHECK(distance(m, a, b) == doctest::Approx(0.25));
    CHECK(distance(m, a, a) == 0.0);
    CHECK(distance(m, Point::word({1, 1, 0}, 2), a) == doctest::Approx(1.0));
    CHECK_THROWS_AS(Metric::symbolic_cylinder(1.0), DomainError);
    CHECK_THROWS_AS(Metric::symbolic_cylinder(0.0), DomainError);
}

TEST_CASE("symbolic distance is an ultrametric") {
    const Metric m = Metric::symbolic_cylinder(0.5);
    std::uint64_t s = 7;
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<int> wa(6), wb(6), wc(6);
        for (int i = 0; i < 6; ++i) {
            wa[i] = mix(s) < 0.5 ? 0 : 1;
            wb[i] = mix(s) < 0.5 ? 0 : 1;
            wc[i] = mix(s) < 0.5 ? 0 : 1;
        }
        const Point a = Point::word(wa, 2), b = Point::word(wb, 2), c = Point::word(wc, 2);
        const double ab = distance(m, a, b), bc = distance(m, b, c), ac = distance(m, a, c);
        CHECK(ac <= std::max(ab, bc) + 1e-15);
        CHECK(ab == distance(m, b, a));
    }
}

TEST_CASE("arc distance satisfies the triangle inequality on random triples") {
    const Metric m = Metric::circle_arc();
    std::uint64_t s = 11;
    for (int trial = 0; trial < 100; ++trial) {
        const Point a = Point::circle(mix(s)), b = Point::circle(mix(s)), c = Point::circle(mix(s));
        CHECK(distance(m, a, c) <= distance(m, a, b) + distance(m, b, c) + 1e-12);
    }
}

TEST_CASE("compactified distance matches the explicit chordal formula") {
    const Point x = Point::euclidean({1.0});
    const Point y = Point::euclidean({3.0});
    // 2|x-y| / sqrt((1+x^2)(1+y^2)) = 4 / sqrt(20)
    CHECK(compactified_distance(x, y) == doctest::Approx(0.8944271909999159).epsilon(1e-12));
    CHECK(distance(Metric::compactified(), x, y) == doctest::Approx(0.8944271909999159));
}

TEST_CASE("compactified distance extends to the point at infinity") {
    // far-out points approach diameter 2 from the origin
    CHECK(distance(Metric::compactified(), Point::euclidean({0.0}), Point::euclidean({1e9})) >
          1.99);
    // distance to infinity shrinks monotonically along the tail
    double prev = compactified_distance_to_infinity(Point::euclidean({10.0}));
    for (double t : {100.0, 1000.0, 10000.0}) {
        const double cur = compactified_distance_to_infinity(Point::euclidean({t}));
        CHECK(cur < prev);
        prev = cur;
    }
    CHECK(compactified_distance_to_infinity(Point::euclidean({0.0})) == doctest::Approx(2.0));
}

TEST_CASE("metrics reject points from the wrong space") {
    CHECK_THROWS_AS(distance(Metric::circle_arc(), Point::euclidean({0.1}), Point::euclidean({0.2})),
                    SpaceMismatch);
    CHECK_THROWS_AS(distance(Metric::euclidean(), Point::euclidean({0.1}), Point::circle(0.2)),
                    SpaceMismatch);
    CHECK_THROWS_AS(distance(Metric::compactified(), Point::circle(0.1), Point::circle(0.2)),
                    SpaceMismatch);
    CHECK_THROWS_AS(
        distance(Metric::symbolic_cylinder(0.5), Point::word({0}, 2), Point::word({0}, 3)),
        SpaceMismatch);
    CHECK(metric_matches_space(Metric::circle_arc(), SpaceKind::circle));
    CHECK_FALSE(metric_matches_space(Metric::circle_arc(), SpaceKind::euclidean));
    CHECK(metric_matches_space(Metric::compactified(), SpaceKind::euclidean));
}

TEST_CASE("iterated distance is the running orbit max") {
    const DynamicalSystem T = DynamicalSystem::circle_affine(2, 0.0);
    const Metric m = Metric::circle_arc();
    const Point x = Point::circle(0.01), y = Point::circle(0.03);
    CHECK(iterated_distance(m, T, 1, x, y) == doctest::Approx(0.02));
    CHECK(iterated_distance(m, T, 3, x, y) == doctest::Approx(0.08));
    CHECK(iterated_distance(m, T, 4, x, y) == doctest::Approx(0.16));
    CHECK_THROWS_AS(iterated_distance(m, T, 0, x, y), DomainError);

    CHECK(dn_ball_contains(m, T, 3, x, 0.1, y));
    CHECK_FALSE(dn_ball_contains(m, T, 4, x, 0.1, y));
    // membership is strict
    CHECK_FALSE(dn_ball_contains(m, T, 1, Point::circle(0.0), 0.25, Point::circle(0.25)));
    CHECK_THROWS_AS(dn_ball_contains(m, T, 1, x, 0.0, y), DomainError);
}

TEST_CASE("iterated distance under the identity never grows") {
    const DynamicalSystem I = DynamicalSystem::identity({SpaceKind::circle, 1, 0});
    const Metric m = Metric::circle_arc();
    const Point x = Point::circle(0.2), y = Point::circle(0.45);
    CHECK(iterated_distance(m, I, 8, x, y) == doctest::Approx(0.25));
}
