#include "doctest.h"

#include <cmath>
#include <vector>

#include "entrolab/estimator.hpp"
#include "entrolab/measure.hpp"
#include "entrolab/sample.hpp"

using namespace entrolab;

namespace {
constexpr double kLog2 = 0.6931471805599453;
constexpr double kLogPhi = 0.4812118250596035;
} // namespace

TEST_CASE("atoms merge and weights validate") {
    const FiniteMeasure mu = FiniteMeasure::from_atoms(
        {Point::circle(0.5), Point::circle(0.5 + 1e-13)}, {0.25, 0.25});
    CHECK(mu.size() == 1);
    CHECK(mu.total() == doctest::Approx(0.5));
    CHECK(mu.weights()[0] == doctest::Approx(0.5));

    CHECK_THROWS_AS(FiniteMeasure::from_atoms({Point::circle(0.1)}, {-0.5}), DomainError);
    CHECK_THROWS_AS(FiniteMeasure::from_atoms({Point::circle(0.1)}, {1.5}), DomainError);
    CHECK_THROWS_AS(FiniteMeasure::from_atoms({Point::circle(0.1)}, {0.1, 0.2}), DomainError);
    CHECK_THROWS_AS(FiniteMeasure::uniform({}), DomainError);
}

TEST_CASE("pushforward transports mass and merges collisions") {
    const DynamicalSystem T = DynamicalSystem::circle_affine(2, 0.0);
    const FiniteMeasure mu = FiniteMeasure::uniform({Point::circle(0.1), Point::circle(0.6)});
    const FiniteMeasure nu = mu.pushforward(T);
    REQUIRE(nu.size() == 1); // both atoms land on 0.2
    CHECK(nu.points()[0].coords()[0] == doctest::Approx(0.2));
    CHECK(nu.total() == doctest::Approx(1.0));
}

TEST_CASE("partition entropy of the uniform measure is log of the cell count") {
    const FiniteMeasure mu = FiniteMeasure::uniform(
        {Point::circle(0.1), Point::circle(0.35), Point::circle(0.6), Point::circle(0.85)});
    const Cover z2 = dyadic_circle_partition(2);
    CHECK(partition_entropy(mu, z2) == doctest::Approx(std::log(4.0)).epsilon(1e-12));
    // coarsening can only lose entropy, and H <= log N always
    const Cover z1 = dyadic_circle_partition(1);
    CHECK(partition_entropy(mu, z1) == doctest::Approx(kLog2).epsilon(1e-12));
    CHECK(partition_entropy(mu, z2) <= std::log(double(z2.size())) + 1e-12);
}

TEST_CASE("entropy scales exactly under mass scaling") {
    const FiniteMeasure mu = FiniteMeasure::uniform(
        {Point::circle(0.1), Point::circle(0.35), Point::circle(0.6), Point::circle(0.85)});
    const Cover z = dyadic_circle_partition(2);
    const double alpha = 0.5;
    const double lhs = partition_entropy(mu.scaled(alpha), z);
    const double rhs = alpha * partition_entropy(mu, z) + alpha * mu.total() * std::log(1.0 / alpha);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("conditional entropy of an independent refinement is its own entropy") {
    const FiniteMeasure mu = FiniteMeasure::uniform(
        {Point::circle(0.1), Point::circle(0.35), Point::circle(0.6), Point::circle(0.85)});
    const Cover coarse = dyadic_circle_partition(1);
    const Cover fine = dyadic_circle_partition(2);
    // each half splits evenly, so H(fine | coarse) = log 2
    CHECK(conditional_entropy(mu, fine, coarse) == doctest::Approx(kLog2).epsilon(1e-12));
    // and the chain rule H(fine and coarse) = H(coarse) + H(fine | coarse)
    const WitnessSample sample = grid_sample_circle(64);
    const Cover both = join(fine, coarse, &sample);
    CHECK(partition_entropy(mu, both) ==
          doctest::Approx(partition_entropy(mu, coarse) + conditional_entropy(mu, fine, coarse))
              .epsilon(1e-12));
}

TEST_CASE("invariance defect measures how far a measure is from invariant") {
    const DynamicalSystem T = DynamicalSystem::circle_affine(2, 0.0);
    const Cover halves = dyadic_circle_partition(1);
    // the dyadic grid is cell-exactly invariant under doubling
    const FiniteMeasure grid = FiniteMeasure::uniform(grid_sample_circle(4096).points);
    CHECK(invariance_defect(grid, T, halves) <= 1e-12);
    // two atoms that pile onto one half are not
    const FiniteMeasure mu = FiniteMeasure::uniform({Point::circle(0.0), Point::circle(0.3)});
    CHECK(invariance_defect(mu, T, halves) == doctest::Approx(0.5));
}

TEST_CASE("block entropy of doubling along dyadic cells grows at log 2 per step") {
    const DynamicalSystem T = DynamicalSystem::circle_affine(2, 0.0);
    const FiniteMeasure mu = FiniteMeasure::uniform(grid_sample_circle(4096).points);
    const KSEstimate est = ks_entropy_over_partition(mu, T, dyadic_circle_partition(1), 10);
    CHECK(est.rate == doctest::Approx(kLog2).epsilon(1e-9));
    CHECK(est.invariant);
    CHECK(est.invariance_defect <= 1e-12);
    REQUIRE(est.series.entries.size() == 10);
    CHECK(est.series.entries[2].second == doctest::Approx(3.0 * kLog2).epsilon(1e-12));
    CHECK_THROWS_AS(ks_entropy_over_partition(mu, T, dyadic_circle_partition(1), 3), DomainError);
}

TEST_CASE("uniform word measure on the full shift is exactly Bernoulli") {
    const DynamicalSystem S = DynamicalSystem::shift_sft({{1, 1}, {1, 1}});
    const FiniteMeasure mu = FiniteMeasure::uniform(sft_word_sample(S, 12).points);
    const KSEstimate est = ks_entropy_over_partition(mu, S, cylinder_partition(S), 8);
    CHECK(est.rate == doctest::Approx(kLog2).epsilon(1e-9));
    CHECK(est.series.residual <= 1e-9);
    CHECK(est.invariant);
}

TEST_CASE("the Perron-weighted word measure attains the shift entropy") {
    const DynamicalSystem S = DynamicalSystem::shift_sft({{1, 1}, {1, 0}});
    const FiniteMeasure mu = parry_word_measure(S, 12);
    // cylinder masses come from eigendata iterated to 1e-10
    CHECK(mu.total() == doctest::Approx(1.0).epsilon(1e-8));
    const KSEstimate est = ks_entropy_over_partition(mu, S, cylinder_partition(S), 8);
    CHECK(est.rate == doctest::Approx(kLogPhi).epsilon(1e-9));
    // block entropies of a Markov measure are affine in n, so the fit is exact
    CHECK(est.series.residual <= 1e-9);
    CHECK(est.invariance_defect <= 1e-9);
}

TEST_CASE("the separated-set chain inequality holds on a doubling instance") {
    const DynamicalSystem T = DynamicalSystem::circle_affine(2, 0.0);
    const WitnessSample sample = grid_sample_circle(4096);
    const OrbitTable tab(T, Metric::circle_arc(), sample, 6);
    const std::vector<size_t> kept = greedy_maximal_separated(tab, 6, 0.25);
    std::vector<Point> e;
    for (size_t i : kept) e.push_back(sample.points[i]);

    const ChainCheckResult r = finite_chain_check(e, T, dyadic_circle_partition(2), 6, 2,
                                                  Metric::circle_arc(), 0.25, sample);
    CHECK(r.holds);
    CHECK(r.diameters_ok);
    CHECK(r.sigma_entropy_exact);
    CHECK(r.separated_count == 128); // spacing 1/4 in d_6 means 2^6 * 4 / 2 points
    CHECK(r.lhs <= r.rhs);
    CHECK_THROWS_AS(
        finite_chain_check(e, T, dyadic_circle_partition(2), 6, 6, Metric::circle_arc(), 0.25, sample),
        DomainError);
}
