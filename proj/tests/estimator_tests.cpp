#include "doctest.h"

#include <cmath>
#include <vector>

#include "entrolab/estimator.hpp"
#include "entrolab/sample.hpp"

using namespace entrolab;

namespace {
constexpr double kLog2 = 0.6931471805599453;

DynamicalSystem doubling() { return DynamicalSystem::circle_affine(2, 0.0); }
} // namespace

TEST_CASE("rate fit recovers an exact line and validates its window") {
    GrowthSeries s;
    for (int n = 1; n <= 8; ++n) s.entries.push_back({n, 0.7 * n + 0.1});
    CHECK(fit_rate(s) == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(s.residual <= 1e-12);
    CHECK(fit_rate(s, std::pair<int, int>{3, 6}) == doctest::Approx(0.7));
    CHECK(s.window_lo == 3);
    CHECK(s.window_hi == 6);

    GrowthSeries split;
    for (int n = 1; n <= 8; ++n) split.entries.push_back({n, n <= 4 ? 0.0 : double(n) - 4.0});
    CHECK(fit_rate(split, std::pair<int, int>{5, 8}) == doctest::Approx(1.0));

    GrowthSeries tiny;
    tiny.entries = {{1, 0.0}, {2, 0.5}};
    CHECK_THROWS_AS(fit_rate(tiny), DomainError);
    CHECK_THROWS_AS(fit_rate(s, std::pair<int, int>{7, 7}), DomainError);
    CHECK_THROWS_AS(fit_rate(s, std::pair<int, int>{6, 3}), DomainError);
}

TEST_CASE("orbit tables reproduce iterated distances") {
    const WitnessSample sample = grid_sample_circle(64);
    const OrbitTable T(doubling(), Metric::circle_arc(), sample, 6);
    CHECK(T.size() == 64);
    CHECK(T.levels() == 6);
    for (int n : {1, 3, 6}) {
        const double direct =
            iterated_distance(Metric::circle_arc(), doubling(), n, sample.points[3], sample.points[11]);
        CHECK(T.dn(3, 11, n) == doctest::Approx(direct).epsilon(1e-12));
        CHECK(T.dn_at_least(3, 11, n, direct - 1e-9));
        CHECK_FALSE(T.dn_at_least(3, 11, n, direct + 1e-9));
    }
    CHECK(T.escaped_count() == 0);
}

TEST_CASE("orbit tables use the closed form for word distances") {
    const DynamicalSystem S = DynamicalSystem::shift_sft({{1, 1}, {1, 1}});
    const WitnessSample words = sft_word_sample(S, 6);
    const OrbitTable T(S, Metric::symbolic_cylinder(0.5), words, 4);
    for (size_t i : {0u, 5u, 17u})
        for (size_t j : {3u, 40u, 63u})
            for (int n = 1; n <= 4; ++n)
                CHECK(T.dn(i, j, n) ==
                      doctest::Approx(iterated_distance(Metric::symbolic_cylinder(0.5), S, n,
                                                        words.points[i], words.points[j]))
                          .epsilon(1e-12));
}

TEST_CASE("orbit tables reject mismatched metrics and flag escaping orbits") {
    const WitnessSample sample = grid_sample_circle(16);
    CHECK_THROWS_AS(OrbitTable(doubling(), Metric::euclidean(), sample, 4), Error);

    const DynamicalSystem L = DynamicalSystem::linear({{10.0}});
    WitnessSample far = grid_sample_box({{1.0, 2.0}}, 8);
    const OrbitTable T(L, Metric::compactified(), far, 16);
    CHECK(T.escaped_count() == 8); // every orbit passes 1e12 by level 13
}

TEST_CASE("greedy separated sets keep the first of each close pair") {
    WitnessSample s;
    s.points = {Point::circle(0.0), Point::circle(0.5), Point::circle(0.25), Point::circle(0.75)};
    const DynamicalSystem I = DynamicalSystem::identity({SpaceKind::circle, 1, 0});
    const OrbitTable T(I, Metric::circle_arc(), s, 2);
    const std::vector<size_t> kept = greedy_maximal_separated(T, 1, 0.3);
    REQUIRE(kept.size() == 2);
    CHECK(kept[0] == 0);
    CHECK(kept[1] == 1);
    // exactly eps apart counts as separated
    CHECK(greedy_maximal_separated(T, 1, 0.25).size() == 4);
}

TEST_CASE("separated counts on the doubling grid double per level") {
    const WitnessSample sample = grid_sample_circle(4096);
    const OrbitTable T(doubling(), Metric::circle_arc(), sample, 6);
    std::vector<long long> counts;
    const GrowthSeries s = separated_count_series(T, 0.25, 6, &counts);
    REQUIRE(counts.size() == 6);
    CHECK(counts[0] == 4);
    CHECK(counts[4] == 64);
    for (int n = 1; n < 6; ++n) CHECK(counts[size_t(n)] == 2 * counts[size_t(n) - 1]);
    CHECK(s.exact);
    CHECK(s.method == "separated");
}

TEST_CASE("spanning counts are minimal ball covers of the sample") {
    const WitnessSample sample = grid_sample_circle(90);
    const OrbitTable T(doubling(), Metric::circle_arc(), sample, 3);
    const SetCoverResult r1 = spanning_count(T, 1, 0.25);
    const SetCoverResult r2 = spanning_count(T, 2, 0.25);
    const SetCoverResult r3 = spanning_count(T, 3, 0.25);
    CHECK(r1.exact);
    CHECK(r2.exact);
    CHECK(r3.exact);
    // balls are arcs of radius eps / 2^(n-1); the optima are ceil covers
    CHECK(r1.count == 2);
    CHECK(r2.count == 4);
    CHECK(r3.count == 9);
}

TEST_CASE("spanning and separated counts sandwich each other") {
    const SandwichReport r =
        sandwich_check(doubling(), Metric::circle_arc(), grid_sample_circle(90), 3, 0.25);
    CHECK(r.cover_eps == 9);
    CHECK(r.separated == 15);
    CHECK(r.cover_half_eps == 18);
    CHECK(r.cover_eps_exact);
    CHECK(r.left_holds);
    CHECK(r.right_holds);
}

TEST_CASE("growth rate of separated counts recovers log 2 for doubling") {
    const EntropyReport rep = d_entropy_estimate(doubling(), Metric::circle_arc(),
                                                 grid_sample_circle(4096), {0.25, 0.125}, 8);
    CHECK(rep.estimator == "d_entropy");
    CHECK(rep.headline == doctest::Approx(kLog2).epsilon(1e-9));
    CHECK(rep.all_exact);
    CHECK(rep.bound == "lower");
    REQUIRE(rep.grid.size() == 2);
    CHECK(rep.grid[0].counts.size() == 8);
    // a finer eps can only see more points
    for (int n = 0; n < 8; ++n) CHECK(rep.grid[1].counts[size_t(n)] >= rep.grid[0].counts[size_t(n)]);
}

TEST_CASE("identity dynamics have zero growth at every scale") {
    const DynamicalSystem I = DynamicalSystem::identity({SpaceKind::circle, 1, 0});
    const EntropyReport rep =
        d_entropy_estimate(I, Metric::circle_arc(), grid_sample_circle(256), {0.25, 0.125}, 8);
    CHECK(rep.headline == doctest::Approx(0.0));
}

TEST_CASE("the eps grid must be strictly decreasing and non-empty") {
    CHECK_THROWS_AS(
        d_entropy_estimate(doubling(), Metric::circle_arc(), grid_sample_circle(64), {}, 6),
        DomainError);
    CHECK_THROWS_AS(d_entropy_estimate(doubling(), Metric::circle_arc(), grid_sample_circle(64),
                                       {0.125, 0.25}, 6),
                    DomainError);
}

TEST_CASE("compact-restricted counts bound the whole-line counts") {
    const DynamicalSystem L = DynamicalSystem::linear({{2.0}});
    const WitnessSample K = grid_sample_box({{0.0, 1.0}}, 128);
    const EntropyReport rep = bowen_entropy_estimate(L, Metric::euclidean(), {K}, {0.5, 0.25}, 8,
                                                     std::pair<int, int>{2, 6});
    CHECK(rep.estimator == "bowen");
    CHECK(rep.headline == doctest::Approx(kLog2).epsilon(0.05));
}

TEST_CASE("cover growth under doubling matches the shift rate") {
    const std::vector<std::pair<std::string, Cover>> fam = {
        {"delta=1/4", build_admissible_cover_circle(0.25)}};
    const EntropyReport rep =
        topological_entropy_estimate(doubling(), fam, grid_sample_circle(1024), 8,
                                     std::pair<int, int>{2, 7});
    CHECK(rep.estimator == "topological");
    CHECK(rep.headline == doctest::Approx(kLog2).epsilon(0.05));
}

TEST_CASE("topological estimates reject inadmissible families") {
    Cover plain;
    plain.space = SpaceKind::euclidean;
    BoxElem b;
    b.sides.push_back({0.0, 1.0, false});
    plain.elements.push_back({b});
    CHECK_THROWS_AS(topological_entropy_estimate(DynamicalSystem::linear({{2.0}}),
                                                 {{"plain", plain}}, grid_sample_box({{0.0, 1.0}}, 16),
                                                 6),
                    DomainError);
}

TEST_CASE("iterate scaling doubles the rate for the square of doubling") {
    const IterateScalingReport r = iterate_scaling_check(
        doubling(), Metric::circle_arc(), grid_sample_circle(2048), {0.25}, 6, 2,
        std::pair<int, int>{2, 5});
    CHECK(r.ratio_defined);
    CHECK(r.ratio == doctest::Approx(2.0).epsilon(0.1));
    CHECK(r.inequality_ok);

    const DynamicalSystem R = DynamicalSystem::circle_affine(1, 0.41421356237309515);
    const IterateScalingReport rot = iterate_scaling_check(
        R, Metric::circle_arc(), grid_sample_circle(512), {0.25}, 8, 3);
    CHECK(rot.base.headline <= 0.02);
    CHECK(rot.powered.headline <= 0.02);
    CHECK(rot.inequality_ok);
}
