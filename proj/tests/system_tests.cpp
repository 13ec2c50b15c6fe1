#include "doctest.h"

#include <cmath>

#include "entrolab/point.hpp"
#include "entrolab/system.hpp"

using namespace entrolab;

namespace {
constexpr double kLog2 = 0.6931471805599453;
constexpr double kLogPhi = 0.4812118250596035; // log((1+sqrt 5)/2)

DynamicalSystem golden_mean() { return DynamicalSystem::shift_sft({{1, 1}, {1, 0}}); }
DynamicalSystem full_two_shift() { return DynamicalSystem::shift_sft({{1, 1}, {1, 1}}); }
} // namespace

TEST_CASE("circle coordinates reduce into [0,1) with endpoint snapping") {
    CHECK(reduce_mod1(1.0) == 0.0);
    CHECK(reduce_mod1(-0.25) == doctest::Approx(0.75));
    CHECK(reduce_mod1(2.75) == doctest::Approx(0.75));
    // values a hair below 1 snap to 0 so both sides of the seam agree
    CHECK(reduce_mod1(0.9999999999999999) == 0.0);
    CHECK(reduce_mod1(-1e-15) == 0.0);
}

TEST_CASE("points carry their space and order deterministically") {
    const Point a = Point::circle(0.25);
    const Point b = Point::euclidean({0.25});
    CHECK(a.space().kind == SpaceKind::circle);
    CHECK(b.space().kind == SpaceKind::euclidean);
    CHECK_FALSE(a.space() == b.space());
    CHECK(a.dim() == 1);

    const Point w = Point::word({0, 1, 0}, 2);
    CHECK(w.space().kind == SpaceKind::word);
    CHECK(w.space().alphabet == 2);
    CHECK(w.dim() == 3);

    CHECK(Point::circle(0.1) < Point::circle(0.2));
    CHECK(Point::circle(0.0) == Point::circle(1.0));
}

TEST_CASE("doubling map orbit on the circle") {
    const DynamicalSystem T = DynamicalSystem::circle_affine(2, 0.0);
    const std::vector<Point> o = orbit(T, Point::circle(0.1), 3);
    REQUIRE(o.size() == 3);
    CHECK(o[0].coords()[0] == doctest::Approx(0.1));
    CHECK(o[1].coords()[0] == doctest::Approx(0.2));
    CHECK(o[2].coords()[0] == doctest::Approx(0.4));
    CHECK(apply(T, Point::circle(0.75)).coords()[0] == doctest::Approx(0.5));
}

TEST_CASE("rotation is an isometry of the circle grid") {
    const DynamicalSystem R = DynamicalSystem::circle_affine(1, 0.3);
    CHECK(apply(R, Point::circle(0.9)).coords()[0] == doctest::Approx(0.2));
}

TEST_CASE("tent map folds the unit interval") {
    const DynamicalSystem T = DynamicalSystem::tent(2.0);
    CHECK(apply(T, Point::euclidean({0.25})).coords()[0] == doctest::Approx(0.5));
    CHECK(apply(T, Point::euclidean({0.75})).coords()[0] == doctest::Approx(0.5));
}

TEST_CASE("linear map doubles euclidean points") {
    const DynamicalSystem L = DynamicalSystem::linear({{2.0}});
    const std::vector<Point> o = orbit(L, Point::euclidean({1.0}), 4);
    REQUIRE(o.size() == 4);
    CHECK(o[3].coords()[0] == doctest::Approx(8.0));
}

TEST_CASE("torus endomorphism applies the integer matrix mod 1") {
    const DynamicalSystem A = DynamicalSystem::torus_endomorphism({{2, 1}, {1, 1}});
    const Point y = apply(A, Point::torus({0.5, 0.5}));
    CHECK(y.coords()[0] == doctest::Approx(0.5));
    CHECK(y.coords()[1] == doctest::Approx(0.0));
}

TEST_CASE("shift drops the leading symbol of admissible words") {
    const DynamicalSystem S = golden_mean();
    const Point y = apply(S, Point::word({0, 1, 0, 0}, 2));
    REQUIRE(y.symbols().size() == 3);
    CHECK(y.symbols()[0] == 1);
    // 1 cannot follow 1 in the golden-mean graph
    CHECK_THROWS_AS(apply(S, Point::word({1, 1, 0}, 2)), SpaceMismatch);
}

TEST_CASE("system power uses closed forms") {
    const DynamicalSystem T = DynamicalSystem::circle_affine(2, 0.0);
    const DynamicalSystem T2 = T.power(2);
    CHECK(apply(T2, Point::circle(0.3)).coords()[0] == doctest::Approx(0.2));

    const DynamicalSystem L = DynamicalSystem::linear({{2.0}}).power(3);
    CHECK(apply(L, Point::euclidean({1.0})).coords()[0] == doctest::Approx(8.0));

    const DynamicalSystem S3 = golden_mean().power(3);
    CHECK(S3.iterate_count() == 3);
    const Point y = apply(S3, Point::word({0, 1, 0, 0, 1}, 2));
    REQUIRE(y.symbols().size() == 2);
    CHECK(y.symbols()[0] == 0);
    CHECK(y.symbols()[1] == 1);
}

TEST_CASE("golden-mean word counts follow the Fibonacci recursion") {
    const DynamicalSystem S = golden_mean();
    CHECK(admissible_words(S, 1) == 2);
    CHECK(admissible_words(S, 2) == 3);
    CHECK(admissible_words(S, 3) == 5);
    CHECK(admissible_words(S, 4) == 8);
    CHECK(admissible_words(S, 5) == 13);
    CHECK(admissible_words(full_two_shift(), 10) == 1024);
}

TEST_CASE("shift entropy equals the log Perron root") {
    CHECK(sft_entropy_exact(golden_mean()) == doctest::Approx(kLogPhi).epsilon(1e-9));
    CHECK(sft_entropy_exact(full_two_shift()) == doctest::Approx(kLog2).epsilon(1e-9));
    // finite-n word counts converge to the same rate
    const double h20 = std::log(double(admissible_words(golden_mean(), 20))) / 20.0;
    CHECK(std::abs(h20 - kLogPhi) < 0.05);
}

TEST_CASE("system construction validates its data") {
    CHECK_THROWS_AS(DynamicalSystem::linear({}), DomainError);
    CHECK_THROWS_AS(DynamicalSystem::linear({{1.0, 2.0}}), DomainError);
    CHECK_THROWS_AS(DynamicalSystem::tent(-1.0), DomainError);
    CHECK_THROWS_AS(DynamicalSystem::shift_sft({{1, 0}, {0, 0}}), DomainError);
    CHECK_THROWS_AS(DynamicalSystem::shift_sft({{1, 2}, {1, 0}}), DomainError);
    CHECK_THROWS_AS(DynamicalSystem::circle_affine(2, 0.0).power(0), DomainError);
}

TEST_CASE("apply rejects points from the wrong space") {
    const DynamicalSystem T = DynamicalSystem::circle_affine(2, 0.0);
    CHECK_THROWS_AS(apply(T, Point::euclidean({0.5})), SpaceMismatch);
    CHECK_THROWS_AS(apply(DynamicalSystem::linear({{2.0}}), Point::circle(0.5)), SpaceMismatch);
    CHECK_THROWS_AS(orbit(T, Point::circle(0.1), 0), DomainError);
}
