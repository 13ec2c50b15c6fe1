#pragma once

#include <optional>
#include <string>
#include <vector>

#include "entrolab/cover.hpp"
#include "entrolab/measure.hpp"
#include "entrolab/metric.hpp"
#include "entrolab/sample.hpp"
#include "entrolab/series.hpp"
#include "entrolab/setcover.hpp"

namespace entrolab {

// Orbits of every sample point to n_max levels, stored level-major, so that
// d_n(x_i, x_j) is a running max over prefix levels. This is the performance
// kernel: estimators touch pairs many times, orbits are built once.
// Word points skip the table; their d_n has the closed form
// lambda^max(0, p - n + 1) with p the first disagreement index.
class OrbitTable {
  public:
    OrbitTable(const DynamicalSystem& sys, const Metric& m, const WitnessSample& sample,
               int n_max);

    size_t size() const { return count_; }
    int levels() const { return n_; }
    const Metric& metric() const { return m_; }

    double dn(size_t i, size_t j, int n) const;
    // d_n(i,j) >= eps, scanning levels from the top where expanding systems
    // separate first.
    bool dn_at_least(size_t i, size_t j, int n, double eps) const;

    // points whose orbit max-norm exceeded 1e12 at some level; they stay in
    // the table (the compactified metric tames them) but Euclidean-metric
    // estimators surface the count.
    long long escaped_count() const { return escaped_total_; }
    bool escaped(size_t i) const { return escaped_[i] != 0; }

  private:
    double level_dist(int l, size_t i, size_t j) const;

    Metric m_;
    int n_ = 0;
    size_t count_ = 0;
    int dim_ = 0;
    bool words_ = false;
    double lambda_ = 0.5;
    long stride_ = 1; // shift steps per application (iterated shifts)
    std::vector<std::vector<double>> lv_; // level -> flattened coordinates
    std::vector<std::vector<double>> w2_; // level -> 1 + |x|^2, compactified only
    std::vector<std::vector<int>> sym_;   // word symbols per point
    std::vector<char> escaped_;
    long long escaped_total_ = 0;
};

// Greedy in sample order: point j joins E unless it is within eps (in d_n) of
// an earlier member. The rejection scan doubles as the maximality
// certificate: every sample point is either in E or witnessed inside an
// eps-ball around a member.
std::vector<size_t> greedy_maximal_separated(const OrbitTable& T, int n, double eps);

// (n, log |E_n|) for n = 1..n_max. Counts are asserted nondecreasing in n;
// once every sample point is kept, later levels are filled without rescans
// (all pairs already separate). counts_out, if given, receives |E_n|.
GrowthSeries separated_count_series(const OrbitTable& T, double eps, int n_max,
                                    std::vector<long long>* counts_out = nullptr);

// Minimum number of d_n-eps-balls centered at sample points covering the
// sample (exact search within the solver's budget, flagged greedy beyond).
SetCoverResult spanning_count(const OrbitTable& T, int n, double eps);

// (n, log r_n) for n = 1..n_max. all_exact reports whether every count came
// out of the exact search.
GrowthSeries spanning_count_series(const OrbitTable& T, double eps, int n_max,
                                   std::vector<long long>* counts_out = nullptr,
                                   bool* all_exact = nullptr);

struct SandwichReport {
    int n = 0;
    double eps = 0.0;
    long long cover_eps = 0;      // N(B_{d_n}(eps))
    long long separated = 0;      // |E| from the greedy maximal set
    long long cover_half_eps = 0; // N(B_{d_n}(eps/2))
    bool cover_eps_exact = false;
    bool cover_half_eps_exact = false;
    bool left_holds = false;  // cover_eps <= separated, needs the exact count
    bool right_holds = false; // separated <= cover_half_eps, safe with greedy
};

// N(B_{d_n}(eps)) <= s_n(eps) <= N(B_{d_n}(eps/2)) on the sample.
SandwichReport sandwich_check(const DynamicalSystem& sys, const Metric& m,
                              const WitnessSample& sample, int n, double eps);

struct SeriesEntry {
    std::string label;
    GrowthSeries series;
    std::vector<long long> counts; // empty for measure-entropy series
    long long escaped = 0;
    double invariance_defect = 0.0; // measure series only
    bool invariant = true;
};

struct EntropyReport {
    std::string estimator;  // "d_entropy", "bowen", "topological", "ks"
    std::string system;     // descriptive, set by the caller
    std::string instrument; // metric / cover family / partition family label
    std::vector<SeriesEntry> grid;
    double headline = 0.0; // max over the grid of fitted rates
    std::string bound;     // "lower" or "exact"
    bool all_exact = true;
};

// Growth rate of separated counts over the whole witness sample, maximized
// over the eps grid (nonempty, strictly decreasing). Counts are asserted
// nonincreasing in eps at every n.
EntropyReport d_entropy_estimate(const DynamicalSystem& sys, const Metric& m,
                                 const WitnessSample& sample, const std::vector<double>& eps_grid,
                                 int n_max, std::optional<std::pair<int, int>> window = std::nullopt,
                                 int jobs = 1);

// Same counts with starting points confined to compact witness sets (orbits
// still run free), maximized over (compact, eps). Each compact's sample
// carries its label in provenance.
EntropyReport bowen_entropy_estimate(const DynamicalSystem& sys, const Metric& m,
                                     const std::vector<WitnessSample>& compacts,
                                     const std::vector<double>& eps_grid, int n_max,
                                     std::optional<std::pair<int, int>> window = std::nullopt,
                                     int jobs = 1);

// log N(A^n) growth over a family of admissible covers. Every cover must pass
// is_admissible; the report's exact flag tracks the subcover counts.
EntropyReport topological_entropy_estimate(const DynamicalSystem& sys,
                                           const std::vector<std::pair<std::string, Cover>>& family,
                                           const WitnessSample& sample, int n_max,
                                           std::optional<std::pair<int, int>> window = std::nullopt);

// H_mu(Z^n) growth over a family of partitions, headline the best rate.
EntropyReport ks_entropy_estimate(const DynamicalSystem& sys, const FiniteMeasure& mu,
                                  const std::vector<std::pair<std::string, Cover>>& partitions,
                                  int n_max,
                                  std::optional<std::pair<int, int>> window = std::nullopt);

struct IterateScalingReport {
    int k = 0;
    EntropyReport base;
    EntropyReport powered;
    double ratio = 0.0; // headline(T^k) / headline(T)
    bool ratio_defined = false;
    bool inequality_ok = false; // k * h(T) >= h(T^k) - tol
};

// d-entropy of T and of T^k on the same sample and eps grid.
IterateScalingReport iterate_scaling_check(const DynamicalSystem& sys, const Metric& m,
                                           const WitnessSample& sample,
                                           const std::vector<double>& eps_grid, int n_max, int k,
                                           std::optional<std::pair<int, int>> window = std::nullopt,
                                           double tol = 0.05);

struct VariationalAuditReport {
    EntropyReport ks;
    EntropyReport top;
    struct PerMetric {
        std::string name;
        EntropyReport bowen;
        EntropyReport d_whole;
        bool top_le_bowen = false;
        bool bowen_le_d = false;
    };
    std::vector<PerMetric> per_metric;
    bool ks_le_top = false;
    bool chain_ok = false;
    bool has_compactified = false;
    bool compactified_attains_min = false; // |h^d - h_top| within flag_tol
    double tol_chain = 0.0;
};

// Estimates the full chain h_KS <= h_top <= h_B^d <= h^d per metric and
// checks it within tol_chain plus the fit residuals of the two sides. The
// whole-space sample should list each compact's points first (in the same
// order) so the estimated h_B <= h^d comparison is not a sampling artifact.
VariationalAuditReport variational_audit(
    const DynamicalSystem& sys, const FiniteMeasure& mu,
    const std::vector<std::pair<std::string, Cover>>& partitions,
    const std::vector<std::pair<std::string, Cover>>& cover_family,
    const WitnessSample& cover_sample, const std::vector<Metric>& metrics,
    const std::vector<WitnessSample>& compacts, const WitnessSample& whole_sample,
    const std::vector<double>& eps_grid, int n_max,
    std::optional<std::pair<int, int>> window = std::nullopt, double tol_chain = 0.05,
    double flag_tol = 0.1);

} // namespace entrolab
