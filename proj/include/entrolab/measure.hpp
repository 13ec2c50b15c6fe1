#pragma once

#include <optional>
#include <vector>

#include "entrolab/cover.hpp"
#include "entrolab/series.hpp"

namespace entrolab {

// A finite non-negative atomic measure with total mass at most 1. Atoms are
// kept sorted; atoms closer than 1e-12 in coordinates are merged so that
// pushforwards do not split mass over floating-point twins.
class FiniteMeasure {
  public:
    FiniteMeasure() = default;

    static FiniteMeasure from_atoms(std::vector<Point> points, std::vector<double> weights);
    static FiniteMeasure uniform(const std::vector<Point>& points);

    const std::vector<Point>& points() const { return pts_; }
    const std::vector<double>& weights() const { return w_; }
    double total() const { return total_; }
    size_t size() const { return pts_.size(); }

    FiniteMeasure pushforward(const DynamicalSystem& sys) const;
    FiniteMeasure scaled(double factor) const;

  private:
    std::vector<Point> pts_;
    std::vector<double> w_;
    double total_ = 0.0;
};

// H_mu(Z) = sum over cells of mu(C) log(1 / mu(C)), with 0 log(1/0) = 0.
// Defined for sub-probability masses as well. Every atom must land in a cell.
double partition_entropy(const FiniteMeasure& mu, const Cover& Z);

// H_mu(fine | coarse) = sum over pairs of mu(F and C) log(mu(C) / mu(F and C)).
double conditional_entropy(const FiniteMeasure& mu, const Cover& fine, const Cover& coarse);

// max over cells of |mu(T^-1 C) - mu(C)|; zero for exactly invariant atoms.
double invariance_defect(const FiniteMeasure& mu, const DynamicalSystem& sys, const Cover& Z);

struct KSEstimate {
    GrowthSeries series; // (n, H_mu(Z^n))
    double rate = 0.0;
    double invariance_defect = 0.0;
    bool invariant = false; // defect within 1e-9
};

// Entropy of mu along the iterated partition Z^n for n = 1..n_max, with the
// growth rate fitted over the window. Atom itineraries are folded into cell
// ids level by level, so the cost is atoms x levels, not atoms x cells^n.
KSEstimate ks_entropy_over_partition(const FiniteMeasure& mu, const DynamicalSystem& sys,
                                     const Cover& Z, int n_max,
                                     std::optional<std::pair<int, int>> window = std::nullopt);

// The Parry measure of a shift system, materialized on its admissible words
// of the given length. Cylinder masses are pi[w0] * prod P[wt][wt+1] built
// from the Perron eigendata of the adjacency matrix.
FiniteMeasure parry_word_measure(const DynamicalSystem& sft, int length);

struct ChainCheckResult {
    int n = 0;
    int q = 0;
    int m = 0; // smallest m with m q >= n
    long long separated_count = 0;
    double max_cell_diameter = 0.0; // over witness points sharing a cell
    bool diameters_ok = false;      // every such pair is closer than eps
    double sigma_block_entropy = 0.0;
    bool sigma_entropy_exact = false; // equals log |E| within 1e-9
    long long iterated_cell_count = 0;
    double empirical_block_entropy = 0.0;
    double lhs = 0.0; // q log |E|
    double rhs = 0.0; // 2 q log N_q + n H_{mu_n}(Z^q)
    bool holds = false;
};

// Finite-sample chain linking the log-count of an (n,eps)-separated set E to
// partition entropies of its empirical measures:
//
//   q log|E|  =  q H_sigma(Z^n)  <=  2 q log N_q  +  n H_{mu_n}(Z^q)
//
// where sigma is uniform on E, mu_n averages the first n pushforwards of
// sigma, Z is a partition whose cells have diameter below eps, Z^q has N_q
// cells witnessed by the orbit points, and 1 < q < n. Separation of E is
// validated; the other two preconditions are reported as flags.
ChainCheckResult finite_chain_check(const std::vector<Point>& separated,
                                    const DynamicalSystem& sys, const Cover& Z, int n, int q,
                                    const Metric& metric, double eps, const WitnessSample& sample);

} // namespace entrolab
