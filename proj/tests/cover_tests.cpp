#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "entrolab/cover.hpp"
#include "entrolab/sample.hpp"
#include "entrolab/system.hpp"

using namespace entrolab;

namespace {
Cover one_arc(double lo, double hi) {
    Cover c;
    c.space = SpaceKind::circle;
    ArcsElem a;
    a.arcs.push_back({lo, hi, false});
    c.elements.push_back({a});
    return c;
}

// smallest cover size by exhaustive subset search
long long brute_force_cover(const std::vector<Bitset>& sets, size_t n_points) {
    const size_t m = sets.size();
    long long best = -1;
    for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << m); ++mask) {
        Bitset u(n_points);
        for (size_t i = 0; i < m; ++i)
            if ((mask >> i) & 1) u.or_with(sets[i]);
        if (u.count() == n_points) {
            const long long k = __builtin_popcountll(mask);
            if (best < 0 || k < best) best = k;
        }
    }
    return best;
}
} // namespace

TEST_CASE("arc elements wrap around the seam") {
    ArcsElem a;
    a.arcs.push_back({0.9, 1.2, false}); // the arc (0.9, 0.2)
    const CoverElement e{a};
    CHECK(element_contains(e, Point::circle(0.95)));
    CHECK(element_contains(e, Point::circle(0.1)));
    CHECK_FALSE(element_contains(e, Point::circle(0.5)));
    CHECK_FALSE(element_contains(e, Point::circle(0.9))); // open at the endpoint
}

TEST_CASE("partition cells are half-open and exhaustive") {
    const Cover z = dyadic_circle_partition(2);
    REQUIRE(z.size() == 4);
    CHECK(z.is_partition);
    for (double x : {0.0, 0.25, 0.4999, 0.5, 0.75, 0.999}) {
        int hits = 0;
        for (const CoverElement& e : z.elements) hits += element_contains(e, Point::circle(x)) ? 1 : 0;
        CHECK(hits == 1);
    }
}

TEST_CASE("box partition covers the top edge") {
    const Cover z = box_partition({{0.0, 1.0}}, 4);
    REQUIRE(z.size() == 4);
    int hits = 0;
    for (const CoverElement& e : z.elements) hits += element_contains(e, Point::euclidean({1.0})) ? 1 : 0;
    CHECK(hits == 1);
}

TEST_CASE("cylinder elements match word prefixes") {
    CylinderElem c;
    c.symbols = {0, 1};
    c.alphabet = 2;
    const CoverElement e{c};
    CHECK(element_contains(e, Point::word({0, 1, 0, 0}, 2)));
    CHECK_FALSE(element_contains(e, Point::word({0, 0, 1}, 2)));
}

TEST_CASE("admissibility distinguishes compact and non-compact complements") {
    const Cover circle = build_admissible_cover_circle(0.25);
    const Admissibility ac = is_admissible(circle);
    CHECK(ac.admissible);
    CHECK(ac.strong); // every complement is compact on a compact space

    const Cover box = build_admissible_cover_box({{0.0, 1.0}}, 0.5);
    const Admissibility ab = is_admissible(box);
    CHECK(ab.admissible);
    CHECK_FALSE(ab.strong); // interior mesh boxes have non-compact complements

    Cover plain;
    plain.space = SpaceKind::euclidean;
    BoxElem b;
    b.sides.push_back({0.0, 1.0, false});
    plain.elements.push_back({b});
    CHECK_FALSE(is_admissible(plain).admissible);
}

TEST_CASE("join multiplies at most and refines both factors") {
    const WitnessSample sample = grid_sample_circle(211);
    const Cover a = build_admissible_cover_circle(0.5);
    const Cover b = dyadic_circle_partition(2);
    const Cover j = join(a, b, &sample);
    CHECK(j.size() <= a.size() * b.size());
    CHECK(refines(j, a, sample));
    CHECK(refines(j, b, sample));
    CHECK(refines(b, b, sample));
    CHECK_FALSE(refines(a, b, sample));
}

TEST_CASE("iterating a partition under the doubling map squares the cell count") {
    const DynamicalSystem T = DynamicalSystem::circle_affine(2, 0.0);
    const WitnessSample sample = grid_sample_circle(1024);
    const Cover z = dyadic_circle_partition(1);
    const Cover z3 = iterate_cover(z, T, 3, &sample);
    CHECK(z3.is_partition);
    CHECK(min_subcover_cardinality(z3, sample).count == 8);
}

TEST_CASE("symbolic iteration enumerates admissible cylinders only") {
    const DynamicalSystem S = DynamicalSystem::shift_sft({{1, 1}, {1, 0}});
    const Cover z = cylinder_partition(S);
    const WitnessSample words = sft_word_sample(S, 8);
    for (int n = 2; n <= 5; ++n) {
        const Cover zn = iterate_cover(z, S, n, &words);
        CHECK(zn.is_partition);
        CHECK(zn.size() == size_t(admissible_words(S, n)));
        const SubcoverCount c = min_subcover_cardinality(zn, words);
        CHECK(c.exact);
        CHECK(c.count == static_cast<long long>(admissible_words(S, n)));
    }
}

TEST_CASE("minimal subcover is exact on partitions and errors on gaps") {
    const WitnessSample sample = grid_sample_circle(64);
    const Cover z = dyadic_circle_partition(3);
    const SubcoverCount c = min_subcover_cardinality(z, sample);
    CHECK(c.exact);
    CHECK(c.count == 8);

    const Cover gap = one_arc(0.1, 0.4);
    CHECK_THROWS_WITH_AS(min_subcover_cardinality(gap, sample), doctest::Contains("uncovered"),
                         Error);
}

TEST_CASE("overlapping arcs need fewer elements than their count") {
    // 4 arcs of width 0.55 at quarter spacing: either opposite pair covers,
    // one arc cannot
    Cover c;
    c.space = SpaceKind::circle;
    for (int k = 0; k < 4; ++k) {
        ArcsElem a;
        const double lo = reduce_mod1(0.25 * k - 0.275);
        a.arcs.push_back({lo, lo + 0.55, false});
        c.elements.push_back({a});
    }
    const WitnessSample sample = grid_sample_circle(400);
    const SubcoverCount n = min_subcover_cardinality(c, sample);
    CHECK(n.exact);
    CHECK(n.count == 2);
}

TEST_CASE("exact set cover search agrees with brute force on random instances") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 25; ++trial) {
        const size_t n_points = 8 + rng() % 12;
        const size_t n_sets = 6 + rng() % 8;
        std::vector<Bitset> sets;
        while (true) {
            sets.assign(n_sets, Bitset(n_points));
            for (size_t i = 0; i < n_sets; ++i)
                for (size_t p = 0; p < n_points; ++p)
                    if (rng() % 3 == 0) sets[i].set(p);
            Bitset u(n_points);
            for (const Bitset& s : sets) u.or_with(s);
            if (u.count() == n_points) break;
        }
        const SetCoverResult r = min_set_cover(sets, n_points);
        CHECK(r.exact);
        CHECK(r.count == brute_force_cover(sets, n_points));
    }
}

TEST_CASE("set cover falls back to flagged greedy above the exact budget") {
    const size_t n_points = 400;
    std::vector<Bitset> sets(200, Bitset(n_points));
    for (size_t i = 0; i < 200; ++i)
        for (size_t p = 0; p < n_points; ++p)
            if ((p + i) % 7 == 0 || p % 200 == i) sets[i].set(p);
    SetCoverOptions opt;
    opt.exact_max_sets = 8; // force the fallback
    const SetCoverResult r = min_set_cover(sets, n_points, opt);
    CHECK_FALSE(r.exact);
    CHECK(r.count >= 1);
}

TEST_CASE("bitset operations agree with definitions") {
    Bitset a(130), b(130);
    a.set(0);
    a.set(64);
    a.set(129);
    b.set(64);
    CHECK(a.count() == 3);
    CHECK(a.intersection_count(b) == 1);
    CHECK(b.subset_of(a));
    CHECK_FALSE(a.subset_of(b));
    Bitset c = a;
    c.andnot_with(b);
    CHECK(c.count() == 2);
    CHECK_FALSE(c.test(64));
    c.or_with(b);
    CHECK(c == a);
}
