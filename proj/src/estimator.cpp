#include "entrolab/estimator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <thread>

namespace entrolab {

namespace {

double arc_gap(double a, double b) {
    const double d = std::fabs(a - b);
    return std::min(d, 1.0 - d);
}

std::string num_label(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", x);
    return buf;
}

void validate_eps_grid(const std::vector<double>& g) {
    if (g.empty()) throw DomainError("epsilon grid must be nonempty");
    for (double e : g)
        if (!(e > 0.0) || !std::isfinite(e)) throw DomainError("epsilon values must be positive");
    for (size_t i = 0; i + 1 < g.size(); ++i)
        if (!(g[i + 1] < g[i])) throw DomainError("epsilon grid must be strictly decreasing");
}

double max_residual(const EntropyReport& r) {
    double m = 0.0;
    for (const SeriesEntry& e : r.grid) m = std::max(m, e.series.residual);
    return m;
}

// Runs body(k) for k = 0..count-1 on up to jobs threads; exceptions are
// re-thrown on the caller thread. Slot-indexed outputs keep determinism.
template <class F>
void run_indexed(size_t count, int jobs, F&& body) {
    if (jobs <= 1 || count <= 1) {
        for (size_t k = 0; k < count; ++k) body(k);
        return;
    }
    std::atomic<size_t> next{0};
    const size_t workers = std::min<size_t>(size_t(jobs), count);
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (size_t w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            try {
                for (size_t k = next.fetch_add(1); k < count; k = next.fetch_add(1)) body(k);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace

OrbitTable::OrbitTable(const DynamicalSystem& sys, const Metric& m, const WitnessSample& sample,
                       int n_max)
    : m_(m), n_(n_max), count_(sample.points.size()) {
    if (n_max < 1) throw DomainError("orbit table needs n_max >= 1");
    if (count_ == 0) throw DomainError("orbit table needs a non-empty sample");
    const SpaceDescriptor sp = sample.points.front().space();
    for (const Point& p : sample.points)
        if (!(p.space() == sp)) throw SpaceMismatch("orbit table needs a single-space sample");
    if (!metric_matches_space(m, sp.kind))
        throw SpaceMismatch("metric does not fit the sample space " + sp.str());
    escaped_.assign(count_, 0);

    if (sp.kind == SpaceKind::word) {
        words_ = true;
        lambda_ = m.lambda;
        if (sys.kind() == SystemKind::shift_sft) {
            stride_ = 1;
        } else if (sys.kind() == SystemKind::identity) {
            stride_ = 0;
        } else if (sys.kind() == SystemKind::iterated &&
                   sys.base().kind() == SystemKind::shift_sft) {
            stride_ = sys.iterate_count();
        } else {
            throw SpaceMismatch("word samples need a shift (or iterated shift) system");
        }
        sym_.reserve(count_);
        for (const Point& p : sample.points) sym_.push_back(p.symbols());
        return;
    }

    dim_ = int(sample.points.front().coords().size());
    const bool comp = m_.kind == MetricKind::compactified;
    lv_.assign(size_t(n_), {});
    if (comp) w2_.assign(size_t(n_), {});
    std::vector<Point> cur = sample.points;
    for (int l = 0; l < n_; ++l) {
        if (l > 0)
            for (size_t k = 0; k < count_; ++k) cur[k] = apply(sys, cur[k]);
        auto& row = lv_[l];
        row.resize(count_ * size_t(dim_));
        if (comp) w2_[l].resize(count_);
        for (size_t k = 0; k < count_; ++k) {
            const auto& c = cur[k].coords();
            double nrm2 = 0.0, mx = 0.0;
            for (int d = 0; d < dim_; ++d) {
                row[k * size_t(dim_) + size_t(d)] = c[d];
                nrm2 += c[d] * c[d];
                mx = std::max(mx, std::fabs(c[d]));
            }
            if (comp) w2_[l][k] = 1.0 + nrm2;
            if (mx > 1e12) escaped_[k] = 1;
        }
    }
    for (char e : escaped_) escaped_total_ += e;
}

double OrbitTable::level_dist(int l, size_t i, size_t j) const {
    const double* a = &lv_[l][i * size_t(dim_)];
    const double* b = &lv_[l][j * size_t(dim_)];
    switch (m_.kind) {
        case MetricKind::euclidean: {
            double s = 0.0;
            for (int d = 0; d < dim_; ++d) s += (a[d] - b[d]) * (a[d] - b[d]);
            return std::sqrt(s);
        }
        case MetricKind::circle_arc:
            return arc_gap(a[0], b[0]);
        case MetricKind::circle_chord:
            return std::sin(std::numbers::pi * arc_gap(a[0], b[0])) / std::numbers::pi;
        case MetricKind::torus_max: {
            double s = 0.0;
            for (int d = 0; d < dim_; ++d) s = std::max(s, arc_gap(a[d], b[d]));
            return s;
        }
        case MetricKind::compactified: {
            double s = 0.0;
            for (int d = 0; d < dim_; ++d) s += (a[d] - b[d]) * (a[d] - b[d]);
            return 2.0 * std::sqrt(s) / std::sqrt(w2_[l][i] * w2_[l][j]);
        }
        case MetricKind::symbolic_cylinder:
            break;
    }
    throw ComputeError("level distance is undefined for this metric");
}

double OrbitTable::dn(size_t i, size_t j, int n) const {
    check(n >= 1 && n <= n_, "d_n level outside the orbit table");
    if (words_) {
        const auto& a = sym_[i];
        const auto& b = sym_[j];
        const size_t L = std::min(a.size(), b.size());
        long p = -1;
        for (size_t t = 0; t < L; ++t)
            if (a[t] != b[t]) {
                p = long(t);
                break;
            }
        if (p < 0) return 0.0; // agree on the stored overlap
        long idx = p - long(n - 1) * stride_;
        if (idx < 0) idx = 0;
        return std::pow(lambda_, double(idx));
    }
    double mx = 0.0;
    for (int l = 0; l < n; ++l) mx = std::max(mx, level_dist(l, i, j));
    return mx;
}

bool OrbitTable::dn_at_least(size_t i, size_t j, int n, double eps) const {
    if (words_) return dn(i, j, n) >= eps;
    check(n >= 1 && n <= n_, "d_n level outside the orbit table");
    for (int l = n - 1; l >= 0; --l)
        if (level_dist(l, i, j) >= eps) return true;
    return false;
}

std::vector<size_t> greedy_maximal_separated(const OrbitTable& T, int n, double eps) {
    if (!(eps > 0.0)) throw DomainError("separation scale must be positive");
    if (n < 1 || n > T.levels()) throw DomainError("separation level outside the orbit table");
    std::vector<size_t> kept;
    for (size_t j = 0; j < T.size(); ++j) {
        bool free = true;
        // most recent members first: in grid order they sit closest
        for (auto it = kept.rbegin(); it != kept.rend(); ++it)
            if (!T.dn_at_least(*it, j, n, eps)) {
                free = false;
                break;
            }
        if (free) kept.push_back(j);
    }
    // The rejection scan is the maximality certificate: every point not in
    // the set was matched with a member closer than eps in d_n.
    return kept;
}

GrowthSeries separated_count_series(const OrbitTable& T, double eps, int n_max,
                                    std::vector<long long>* counts_out) {
    if (n_max < 1 || n_max > T.levels()) throw DomainError("n_max outside the orbit table");
    GrowthSeries s;
    s.method = "separated";
    s.exact = true;
    std::vector<long long> counts;
    counts.reserve(size_t(n_max));
    for (int n = 1; n <= n_max; ++n) {
        long long c;
        if (!counts.empty() && counts.back() == static_cast<long long>(T.size()))
            c = counts.back(); // everything already separates; d_n only grows
        else
            c = static_cast<long long>(greedy_maximal_separated(T, n, eps).size());
        if (!counts.empty() && c < counts.back())
            throw ComputeError("separated counts decreased at n=" + std::to_string(n));
        counts.push_back(c);
        s.entries.emplace_back(n, std::log(double(c)));
    }
    if (counts_out) *counts_out = std::move(counts);
    return s;
}

SetCoverResult spanning_count(const OrbitTable& T, int n, double eps) {
    if (!(eps > 0.0)) throw DomainError("spanning scale must be positive");
    if (n < 1 || n > T.levels()) throw DomainError("spanning level outside the orbit table");
    const size_t S = T.size();
    std::vector<Bitset> balls(S, Bitset(S));
    for (size_t i = 0; i < S; ++i) {
        balls[i].set(i);
        for (size_t j = i + 1; j < S; ++j)
            if (!T.dn_at_least(i, j, n, eps)) { // d_n < eps: open-ball membership
                balls[i].set(j);
                balls[j].set(i);
            }
    }
    return min_set_cover(balls, S);
}

GrowthSeries spanning_count_series(const OrbitTable& T, double eps, int n_max,
                                   std::vector<long long>* counts_out, bool* all_exact) {
    if (n_max < 1 || n_max > T.levels()) throw DomainError("n_max outside the orbit table");
    GrowthSeries s;
    s.method = "min_spanning";
    s.exact = true;
    std::vector<long long> counts;
    for (int n = 1; n <= n_max; ++n) {
        const SetCoverResult r = spanning_count(T, n, eps);
        s.exact = s.exact && r.exact;
        counts.push_back(r.count);
        s.entries.emplace_back(n, std::log(double(r.count)));
    }
    if (all_exact) *all_exact = s.exact;
    if (counts_out) *counts_out = std::move(counts);
    return s;
}

SandwichReport sandwich_check(const DynamicalSystem& sys, const Metric& m,
                              const WitnessSample& sample, int n, double eps) {
    if (!(eps > 0.0)) throw DomainError("sandwich scale must be positive");
    const OrbitTable T(sys, m, sample, n);
    SandwichReport r;
    r.n = n;
    r.eps = eps;
    const SetCoverResult lo = spanning_count(T, n, eps);
    const SetCoverResult hi = spanning_count(T, n, eps / 2.0);
    r.cover_eps = lo.count;
    r.cover_eps_exact = lo.exact;
    r.cover_half_eps = hi.count;
    r.cover_half_eps_exact = hi.exact;
    r.separated = static_cast<long long>(greedy_maximal_separated(T, n, eps).size());
    r.left_holds = r.cover_eps <= r.separated;
    r.right_holds = r.separated <= r.cover_half_eps;
    return r;
}

EntropyReport d_entropy_estimate(const DynamicalSystem& sys, const Metric& m,
                                 const WitnessSample& sample, const std::vector<double>& eps_grid,
                                 int n_max, std::optional<std::pair<int, int>> window, int jobs) {
    validate_eps_grid(eps_grid);
    const OrbitTable T(sys, m, sample, n_max);
    EntropyReport rep;
    rep.estimator = "d_entropy";
    rep.instrument = metric_kind_name(m.kind);
    rep.bound = "lower";
    rep.grid.resize(eps_grid.size());
    run_indexed(eps_grid.size(), jobs, [&](size_t k) {
        SeriesEntry e;
        e.label = "eps=" + num_label(eps_grid[k]);
        e.series = separated_count_series(T, eps_grid[k], n_max, &e.counts);
        fit_rate(e.series, window);
        if (m.kind == MetricKind::euclidean) e.escaped = T.escaped_count();
        rep.grid[k] = std::move(e);
    });
    for (size_t k = 0; k + 1 < rep.grid.size(); ++k)
        for (size_t t = 0; t < rep.grid[k].counts.size(); ++t)
            if (rep.grid[k + 1].counts[t] < rep.grid[k].counts[t])
                throw ComputeError("separated counts increased with eps at n=" +
                                   std::to_string(t + 1));
    rep.headline = 0.0;
    for (const SeriesEntry& e : rep.grid) rep.headline = std::max(rep.headline, e.series.fitted_rate);
    rep.all_exact = true;
    return rep;
}

EntropyReport bowen_entropy_estimate(const DynamicalSystem& sys, const Metric& m,
                                     const std::vector<WitnessSample>& compacts,
                                     const std::vector<double>& eps_grid, int n_max,
                                     std::optional<std::pair<int, int>> window, int jobs) {
    validate_eps_grid(eps_grid);
    if (compacts.empty()) throw DomainError("at least one compact witness set is required");
    EntropyReport rep;
    rep.estimator = "bowen";
    rep.instrument = metric_kind_name(m.kind);
    rep.bound = "lower";
    rep.grid.resize(compacts.size() * eps_grid.size());
    for (size_t c = 0; c < compacts.size(); ++c) {
        const OrbitTable T(sys, m, compacts[c], n_max);
        const std::string kname =
            compacts[c].provenance.empty() ? "K" + std::to_string(c) : compacts[c].provenance;
        run_indexed(eps_grid.size(), jobs, [&](size_t k) {
            SeriesEntry e;
            e.label = kname + " eps=" + num_label(eps_grid[k]);
            e.series = separated_count_series(T, eps_grid[k], n_max, &e.counts);
            fit_rate(e.series, window);
            if (m.kind == MetricKind::euclidean) e.escaped = T.escaped_count();
            rep.grid[c * eps_grid.size() + k] = std::move(e);
        });
        for (size_t k = 0; k + 1 < eps_grid.size(); ++k) {
            const auto& a = rep.grid[c * eps_grid.size() + k];
            const auto& b = rep.grid[c * eps_grid.size() + k + 1];
            for (size_t t = 0; t < a.counts.size(); ++t)
                if (b.counts[t] < a.counts[t])
                    throw ComputeError("separated counts increased with eps at n=" +
                                       std::to_string(t + 1));
        }
    }
    rep.headline = 0.0;
    for (const SeriesEntry& e : rep.grid) rep.headline = std::max(rep.headline, e.series.fitted_rate);
    rep.all_exact = true;
    return rep;
}

EntropyReport topological_entropy_estimate(const DynamicalSystem& sys,
                                           const std::vector<std::pair<std::string, Cover>>& family,
                                           const WitnessSample& sample, int n_max,
                                           std::optional<std::pair<int, int>> window) {
    if (family.empty()) throw DomainError("cover family must be nonempty");
    if (n_max < 4) throw DomainError("cover entropy needs n_max >= 4 for a rate fit");
    EntropyReport rep;
    rep.estimator = "topological";
    rep.instrument = "admissible covers";
    rep.bound = "lower";
    for (size_t idx = 0; idx < family.size(); ++idx) {
        const auto& [label, cover] = family[idx];
        if (!is_admissible(cover).admissible)
            throw DomainError("cover " + std::to_string(idx) + " (" + label +
                              ") is not admissible: rejected");
        SeriesEntry e;
        e.label = label;
        e.series.method = "min_subcover";
        e.series.exact = true;
        for (int n = 1; n <= n_max; ++n) {
            const Cover an = iterate_cover(cover, sys, n, &sample);
            const SubcoverCount c = min_subcover_cardinality(an, sample);
            e.counts.push_back(c.count);
            e.series.exact = e.series.exact && c.exact;
            e.series.entries.emplace_back(n, std::log(double(c.count)));
        }
        fit_rate(e.series, window);
        rep.all_exact = rep.all_exact && e.series.exact;
        rep.grid.push_back(std::move(e));
    }
    rep.headline = 0.0;
    for (const SeriesEntry& e : rep.grid) rep.headline = std::max(rep.headline, e.series.fitted_rate);
    return rep;
}

EntropyReport ks_entropy_estimate(const DynamicalSystem& sys, const FiniteMeasure& mu,
                                  const std::vector<std::pair<std::string, Cover>>& partitions,
                                  int n_max, std::optional<std::pair<int, int>> window) {
    if (partitions.empty()) throw DomainError("partition family must be nonempty");
    EntropyReport rep;
    rep.estimator = "ks";
    rep.instrument = "partition blocks";
    rep.bound = "lower";
    for (const auto& [label, Z] : partitions) {
        const KSEstimate est = ks_entropy_over_partition(mu, sys, Z, n_max, window);
        SeriesEntry e;
        e.label = label;
        e.series = est.series;
        e.invariance_defect = est.invariance_defect;
        e.invariant = est.invariant;
        rep.grid.push_back(std::move(e));
    }
    rep.headline = 0.0;
    for (const SeriesEntry& e : rep.grid) rep.headline = std::max(rep.headline, e.series.fitted_rate);
    return rep;
}

IterateScalingReport iterate_scaling_check(const DynamicalSystem& sys, const Metric& m,
                                           const WitnessSample& sample,
                                           const std::vector<double>& eps_grid, int n_max, int k,
                                           std::optional<std::pair<int, int>> window, double tol) {
    if (k < 2) throw DomainError("iterate scaling needs k >= 2");
    IterateScalingReport r;
    r.k = k;
    r.base = d_entropy_estimate(sys, m, sample, eps_grid, n_max, window);
    r.powered = d_entropy_estimate(sys.power(k), m, sample, eps_grid, n_max, window);
    if (std::fabs(r.base.headline) > 1e-12) {
        r.ratio = r.powered.headline / r.base.headline;
        r.ratio_defined = true;
    }
    r.inequality_ok = double(k) * r.base.headline >= r.powered.headline - tol;
    return r;
}

VariationalAuditReport variational_audit(
    const DynamicalSystem& sys, const FiniteMeasure& mu,
    const std::vector<std::pair<std::string, Cover>>& partitions,
    const std::vector<std::pair<std::string, Cover>>& cover_family,
    const WitnessSample& cover_sample, const std::vector<Metric>& metrics,
    const std::vector<WitnessSample>& compacts, const WitnessSample& whole_sample,
    const std::vector<double>& eps_grid, int n_max, std::optional<std::pair<int, int>> window,
    double tol_chain, double flag_tol) {
    if (metrics.empty()) throw DomainError("variational audit needs at least one metric");
    VariationalAuditReport r;
    r.tol_chain = tol_chain;
    r.ks = ks_entropy_estimate(sys, mu, partitions, n_max, window);
    r.top = topological_entropy_estimate(sys, cover_family, cover_sample, n_max, window);
    r.ks_le_top = r.ks.headline <=
                  r.top.headline + tol_chain + max_residual(r.ks) + max_residual(r.top);
    r.chain_ok = r.ks_le_top;
    for (const Metric& met : metrics) {
        VariationalAuditReport::PerMetric pm;
        pm.name = metric_kind_name(met.kind);
        pm.bowen = bowen_entropy_estimate(sys, met, compacts, eps_grid, n_max, window);
        pm.d_whole = d_entropy_estimate(sys, met, whole_sample, eps_grid, n_max, window);
        pm.top_le_bowen = r.top.headline <= pm.bowen.headline + tol_chain + max_residual(r.top) +
                                                max_residual(pm.bowen);
        pm.bowen_le_d = pm.bowen.headline <= pm.d_whole.headline + tol_chain +
                                                 max_residual(pm.bowen) + max_residual(pm.d_whole);
        if (met.kind == MetricKind::compactified) {
            r.has_compactified = true;
            r.compactified_attains_min = std::fabs(pm.d_whole.headline - r.top.headline) <= flag_tol;
        }
        r.chain_ok = r.chain_ok && pm.top_le_bowen && pm.bowen_le_d;
        r.per_metric.push_back(std::move(pm));
    }
    return r;
}

} // namespace entrolab
