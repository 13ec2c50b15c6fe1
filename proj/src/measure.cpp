#include "entrolab/measure.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "entrolab/metric.hpp"

namespace entrolab {

namespace {

double entropy_of(const std::vector<double>& mass) {
    double h = 0.0;
    for (double m : mass)
        if (m > 0.0) h += m * std::log(1.0 / m);
    return h;
}

int cell_of(const Cover& Z, const Point& p) {
    for (size_t i = 0; i < Z.size(); ++i)
        if (element_contains(Z.elements[i], p)) return int(i);
    return -1;
}

void require_partition(const Cover& Z, const char* what) {
    if (!Z.is_partition) throw DomainError(std::string(what) + " needs a partition");
    if (Z.elements.empty()) throw DomainError(std::string(what) + " needs a non-empty partition");
}

} // namespace

FiniteMeasure FiniteMeasure::from_atoms(std::vector<Point> points, std::vector<double> weights) {
    if (points.size() != weights.size())
        throw DomainError("measure needs one weight per atom");
    for (double w : weights)
        if (!std::isfinite(w) || w < 0.0) throw DomainError("atom weights must be finite and non-negative");

    std::vector<size_t> order(points.size());
    std::iota(order.begin(), order.end(), size_t{0});
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return points[a] < points[b]; });

    FiniteMeasure mu;
    for (size_t k : order) {
        if (weights[k] == 0.0) continue;
        if (!mu.pts_.empty() && coordinate_gap(mu.pts_.back(), points[k]) <= 1e-12) {
            mu.w_.back() += weights[k];
        } else {
            mu.pts_.push_back(std::move(points[k]));
            mu.w_.push_back(weights[k]);
        }
    }
    mu.total_ = std::accumulate(mu.w_.begin(), mu.w_.end(), 0.0);
    if (mu.total_ > 1.0 + 1e-9) throw DomainError("measure mass exceeds 1");
    return mu;
}

FiniteMeasure FiniteMeasure::uniform(const std::vector<Point>& points) {
    if (points.empty()) throw DomainError("uniform measure needs at least one atom");
    return from_atoms(points, std::vector<double>(points.size(), 1.0 / double(points.size())));
}

FiniteMeasure FiniteMeasure::pushforward(const DynamicalSystem& sys) const {
    std::vector<Point> img;
    img.reserve(pts_.size());
    for (const Point& p : pts_) img.push_back(apply(sys, p));
    return from_atoms(std::move(img), w_);
}

FiniteMeasure FiniteMeasure::scaled(double factor) const {
    if (!std::isfinite(factor) || factor < 0.0) throw DomainError("scale factor must be finite and non-negative");
    std::vector<double> w = w_;
    for (double& x : w) x *= factor;
    return from_atoms(pts_, std::move(w));
}

double partition_entropy(const FiniteMeasure& mu, const Cover& Z) {
    require_partition(Z, "partition entropy");
    std::vector<double> mass(Z.size(), 0.0);
    for (size_t k = 0; k < mu.size(); ++k) {
        const int c = cell_of(Z, mu.points()[k]);
        if (c < 0) throw DomainError("partition misses an atom: " + mu.points()[k].str());
        mass[c] += mu.weights()[k];
    }
    return entropy_of(mass);
}

double conditional_entropy(const FiniteMeasure& mu, const Cover& fine, const Cover& coarse) {
    require_partition(fine, "conditional entropy");
    require_partition(coarse, "conditional entropy");
    if (fine.space != coarse.space)
        throw SpaceMismatch("conditional entropy needs partitions of the same space");

    std::vector<double> mass_c(coarse.size(), 0.0);
    std::map<std::pair<int, int>, double> mass_fc;
    for (size_t k = 0; k < mu.size(); ++k) {
        const Point& p = mu.points()[k];
        const int f = cell_of(fine, p);
        const int c = cell_of(coarse, p);
        if (f < 0) throw DomainError("partition misses an atom: " + p.str());
        if (c < 0) throw DomainError("partition misses an atom: " + p.str());
        mass_c[c] += mu.weights()[k];
        mass_fc[{f, c}] += mu.weights()[k];
    }
    double h = 0.0;
    for (const auto& [fc, m] : mass_fc)
        if (m > 0.0) h += m * std::log(mass_c[fc.second] / m);
    return h;
}

double invariance_defect(const FiniteMeasure& mu, const DynamicalSystem& sys, const Cover& Z) {
    require_partition(Z, "invariance defect");
    const FiniteMeasure img = mu.pushforward(sys);
    std::vector<double> before(Z.size(), 0.0), after(Z.size(), 0.0);
    for (size_t k = 0; k < mu.size(); ++k) {
        const int c = cell_of(Z, mu.points()[k]);
        if (c < 0) throw DomainError("partition misses an atom: " + mu.points()[k].str());
        before[c] += mu.weights()[k];
    }
    for (size_t k = 0; k < img.size(); ++k) {
        const int c = cell_of(Z, img.points()[k]);
        if (c < 0) throw DomainError("partition misses an atom: " + img.points()[k].str());
        after[c] += img.weights()[k];
    }
    double defect = 0.0;
    for (size_t i = 0; i < Z.size(); ++i) defect = std::max(defect, std::fabs(after[i] - before[i]));
    return defect;
}

KSEstimate ks_entropy_over_partition(const FiniteMeasure& mu, const DynamicalSystem& sys,
                                     const Cover& Z, int n_max,
                                     std::optional<std::pair<int, int>> window) {
    require_partition(Z, "block entropy");
    if (n_max < 4) throw DomainError("block entropy needs n_max >= 4 for a rate fit");
    if (mu.size() == 0) throw DomainError("block entropy needs a non-empty measure");

    KSEstimate out;
    out.invariance_defect = invariance_defect(mu, sys, Z);
    out.invariant = out.invariance_defect <= 1e-9;
    out.series.method = "partition_blocks";
    out.series.exact = true;

    std::vector<Point> cur = mu.points();
    std::vector<int> id(mu.size(), 0);
    for (int n = 1; n <= n_max; ++n) {
        if (n > 1)
            for (size_t k = 0; k < cur.size(); ++k) cur[k] = apply(sys, cur[k]);
        std::map<std::pair<int, int>, int> fresh;
        std::vector<double> mass;
        for (size_t k = 0; k < cur.size(); ++k) {
            const int c = cell_of(Z, cur[k]);
            if (c < 0) throw DomainError("partition misses an atom: " + cur[k].str());
            const std::pair<int, int> key{n == 1 ? 0 : id[k], c};
            auto [it, inserted] = fresh.try_emplace(key, int(mass.size()));
            if (inserted) mass.push_back(0.0);
            id[k] = it->second;
            mass[it->second] += mu.weights()[k];
        }
        out.series.entries.emplace_back(n, entropy_of(mass));
    }
    out.rate = fit_rate(out.series, window);
    return out;
}

FiniteMeasure parry_word_measure(const DynamicalSystem& sft, int length) {
    if (sft.kind() != SystemKind::shift_sft)
        throw DomainError("word measure needs a shift system");
    if (length < 2) throw DomainError("word measure needs length >= 2");
    const double log_rho = sft_entropy_exact(sft); // validates irreducibility
    const double rho = std::exp(log_rho);
    const auto& A = sft.adjacency();
    const size_t k = A.size();

    // dominant right and left eigenvectors of (A + I), max-normalized
    auto iterate = [&](bool left) {
        std::vector<double> u(k, 1.0), v(k, 0.0);
        for (int it = 0; it < 20000; ++it) {
            for (size_t i = 0; i < k; ++i) {
                double s = u[i];
                for (size_t j = 0; j < k; ++j) s += left ? A[j][i] * u[j] : A[i][j] * u[j];
                v[i] = s;
            }
            double mx = 0.0;
            for (double x : v) mx = std::max(mx, x);
            double diff = 0.0;
            for (size_t i = 0; i < k; ++i) {
                v[i] /= mx;
                diff = std::max(diff, std::fabs(v[i] - u[i]));
            }
            u.swap(v);
            if (diff < 1e-14) break;
        }
        return u;
    };
    const std::vector<double> u = iterate(false);
    const std::vector<double> v = iterate(true);

    std::vector<std::vector<double>> P(k, std::vector<double>(k, 0.0));
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j)
            if (A[i][j]) P[i][j] = u[j] / (rho * u[i]);
    std::vector<double> pi(k, 0.0);
    double z = 0.0;
    for (size_t i = 0; i < k; ++i) z += u[i] * v[i];
    for (size_t i = 0; i < k; ++i) pi[i] = u[i] * v[i] / z;

    const WitnessSample words = sft_word_sample(sft, length);
    std::vector<double> w;
    w.reserve(words.points.size());
    for (const Point& p : words.points) {
        const auto& s = p.symbols();
        double mass = pi[s[0]];
        for (size_t t = 0; t + 1 < s.size(); ++t) mass *= P[s[t]][s[t + 1]];
        w.push_back(mass);
    }
    return FiniteMeasure::from_atoms(words.points, std::move(w));
}

ChainCheckResult finite_chain_check(const std::vector<Point>& separated,
                                    const DynamicalSystem& sys, const Cover& Z, int n, int q,
                                    const Metric& metric, double eps, const WitnessSample& sample) {
    require_partition(Z, "chain check");
    if (n < 3 || q <= 1 || q >= n) throw DomainError("chain check needs 1 < q < n");
    if (!(eps > 0.0)) throw DomainError("chain check needs eps > 0");
    if (separated.empty()) throw DomainError("chain check needs a non-empty separated set");

    ChainCheckResult r;
    r.n = n;
    r.q = q;
    r.m = (n + q - 1) / q;
    if (n <= r.m * (q - 1)) throw DomainError("block count collapses for this (n, q)");
    r.separated_count = static_cast<long long>(separated.size());

    for (size_t i = 0; i < separated.size(); ++i)
        for (size_t j = i + 1; j < separated.size(); ++j)
            if (iterated_distance(metric, sys, n, separated[i], separated[j]) < eps)
                throw DomainError("points are not (n,eps)-separated: " + separated[i].str() +
                                  " and " + separated[j].str());

    const int levels = r.m * q + q - 1;
    std::vector<std::vector<int>> cid(separated.size());
    std::vector<std::vector<Point>> orbits(separated.size());
    for (size_t e = 0; e < separated.size(); ++e) {
        orbits[e] = orbit(sys, separated[e], levels);
        cid[e].reserve(levels);
        for (const Point& p : orbits[e]) {
            const int c = cell_of(Z, p);
            if (c < 0) throw DomainError("partition misses an atom: " + p.str());
            cid[e].push_back(c);
        }
    }

    // diameter precondition over sample points and orbit points sharing a cell
    std::vector<Point> witness = sample.points;
    for (const auto& orb : orbits) witness.insert(witness.end(), orb.begin(), orb.end());
    std::sort(witness.begin(), witness.end());
    witness.erase(std::unique(witness.begin(), witness.end()), witness.end());
    std::vector<std::vector<size_t>> bucket(Z.size());
    for (size_t k = 0; k < witness.size(); ++k) {
        const int c = cell_of(Z, witness[k]);
        if (c < 0) throw DomainError("partition misses an atom: " + witness[k].str());
        bucket[c].push_back(k);
    }
    r.max_cell_diameter = 0.0;
    for (const auto& b : bucket)
        for (size_t i = 0; i < b.size(); ++i)
            for (size_t j = i + 1; j < b.size(); ++j)
                r.max_cell_diameter =
                    std::max(r.max_cell_diameter, distance(metric, witness[b[i]], witness[b[j]]));
    r.diameters_ok = r.max_cell_diameter < eps;

    const double inv_e = 1.0 / double(separated.size());

    // H_sigma(Z^n): one n-block itinerary per separated point
    {
        std::map<std::vector<int>, double> mass;
        for (size_t e = 0; e < separated.size(); ++e)
            mass[std::vector<int>(cid[e].begin(), cid[e].begin() + n)] += inv_e;
        double h = 0.0;
        for (const auto& [blk, m] : mass) h += m * std::log(1.0 / m);
        r.sigma_block_entropy = h;
        r.sigma_entropy_exact = std::fabs(h - std::log(double(separated.size()))) <= 1e-9;
    }

    // N_q: q-blocks witnessed anywhere along the first m q orbit positions
    {
        std::set<std::vector<int>> blocks;
        for (size_t e = 0; e < separated.size(); ++e)
            for (int p = 0; p < r.m * q; ++p)
                blocks.insert(std::vector<int>(cid[e].begin() + p, cid[e].begin() + p + q));
        r.iterated_cell_count = static_cast<long long>(blocks.size());
    }

    // H_{mu_n}(Z^q) with mu_n averaging the first n pushforwards of sigma
    {
        std::map<std::vector<int>, double> mass;
        const double w = inv_e / double(n);
        for (size_t e = 0; e < separated.size(); ++e)
            for (int j = 0; j < n; ++j)
                mass[std::vector<int>(cid[e].begin() + j, cid[e].begin() + j + q)] += w;
        double h = 0.0;
        for (const auto& [blk, m] : mass) h += m * std::log(1.0 / m);
        r.empirical_block_entropy = h;
    }

    r.lhs = double(q) * std::log(double(separated.size()));
    r.rhs = 2.0 * double(q) * std::log(double(r.iterated_cell_count)) +
            double(n) * r.empirical_block_entropy;
    r.holds = r.lhs <= r.rhs + 1e-9;
    return r;
}

} // namespace entrolab
