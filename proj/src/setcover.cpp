#include "entrolab/setcover.hpp"

#include <algorithm>
#include <bit>

namespace entrolab {

size_t Bitset::count() const {
    size_t c = 0;
    for (std::uint64_t x : w_) c += static_cast<size_t>(std::popcount(x));
    return c;
}

bool Bitset::any() const {
    for (std::uint64_t x : w_)
        if (x) return true;
    return false;
}

void Bitset::and_with(const Bitset& o) {
    for (size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
}

void Bitset::or_with(const Bitset& o) {
    for (size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
}

void Bitset::andnot_with(const Bitset& o) {
    for (size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
}

bool Bitset::subset_of(const Bitset& o) const {
    for (size_t i = 0; i < w_.size(); ++i)
        if (w_[i] & ~o.w_[i]) return false;
    return true;
}

size_t Bitset::intersection_count(const Bitset& o) const {
    size_t c = 0;
    for (size_t i = 0; i < w_.size(); ++i)
        c += static_cast<size_t>(std::popcount(w_[i] & o.w_[i]));
    return c;
}

std::uint64_t Bitset::hash() const {
    std::uint64_t h = 1469598103934665603ull;
    for (std::uint64_t x : w_) {
        h ^= x;
        h *= 1099511628211ull;
    }
    return h;
}

namespace {

struct Solver {
    const std::vector<Bitset>& sets;
    size_t n_points;
    const SetCoverOptions& opt;
    long long nodes = 0;
    long long best = 0;
    bool budget_ok = true;

    // Greedy: repeatedly take the set covering the most uncovered points,
    // ties broken by the lowest index. Gains only shrink as points get
    // covered, so stale heap keys are safe: an entry popped with a stale key
    // is re-keyed and reinserted, and the true maximum (with the lowest index
    // among equals) eventually surfaces with an accurate key.
    long long greedy(Bitset uncovered, const std::vector<int>& active) const {
        auto heap_less = [](const std::pair<size_t, int>& a, const std::pair<size_t, int>& b) {
            if (a.first != b.first) return a.first < b.first;
            return a.second > b.second; // lower index should pop first
        };
        std::vector<std::pair<size_t, int>> heap;
        heap.reserve(active.size());
        for (int idx : active)
            heap.emplace_back(sets[static_cast<size_t>(idx)].intersection_count(uncovered), idx);
        std::make_heap(heap.begin(), heap.end(), heap_less);

        long long used = 0;
        while (uncovered.any()) {
            check(!heap.empty(), "set cover: uncovered point with no covering set");
            std::pop_heap(heap.begin(), heap.end(), heap_less);
            auto [stored, idx] = heap.back();
            heap.pop_back();
            const size_t gain = sets[static_cast<size_t>(idx)].intersection_count(uncovered);
            if (gain == 0) continue;
            if (!heap.empty() && heap_less({gain, idx}, heap.front())) {
                heap.emplace_back(gain, idx); // key went stale; re-queue accurately
                std::push_heap(heap.begin(), heap.end(), heap_less);
                continue;
            }
            uncovered.andnot_with(sets[static_cast<size_t>(idx)]);
            ++used;
        }
        return used;
    }

    // Depth-first search branching on the uncovered point with the fewest
    // covering sets. chosen = sets already committed.
    void search(const Bitset& uncovered, const std::vector<int>& active, long long chosen) {
        if (!budget_ok) return;
        if (++nodes > opt.node_budget) {
            budget_ok = false;
            return;
        }
        if (!uncovered.any()) {
            best = std::min(best, chosen);
            return;
        }
        if (chosen + 1 >= best) return; // cannot improve

        // Lower bound: every set covers at most max_gain uncovered points.
        size_t max_gain = 0;
        for (int idx : active)
            max_gain = std::max(max_gain, sets[static_cast<size_t>(idx)].intersection_count(uncovered));
        if (max_gain == 0) return; // uncoverable from here (pruned too far)
        const size_t unc = uncovered.count();
        const long long lower =
            chosen + static_cast<long long>((unc + max_gain - 1) / max_gain);
        if (lower >= best) return;

        // Most constrained uncovered point.
        size_t pick = n_points;
        size_t pick_options = SIZE_MAX;
        for (size_t p = 0; p < n_points; ++p) {
            if (!uncovered.test(p)) continue;
            size_t options = 0;
            for (int idx : active)
                if (sets[static_cast<size_t>(idx)].test(p) && ++options >= pick_options) break;
            if (options < pick_options) {
                pick_options = options;
                pick = p;
                if (options <= 1) break;
            }
        }
        check(pick < n_points && pick_options > 0, "set cover search lost coverage");

        for (int idx : active) {
            const Bitset& s = sets[static_cast<size_t>(idx)];
            if (!s.test(pick)) continue;
            Bitset next = uncovered;
            next.andnot_with(s);
            std::vector<int> rest;
            rest.reserve(active.size());
            for (int j : active)
                if (j != idx && sets[static_cast<size_t>(j)].intersection_count(next) > 0)
                    rest.push_back(j);
            search(next, rest, chosen + 1);
            if (!budget_ok) return;
        }
    }
};

} // namespace

SetCoverResult min_set_cover(const std::vector<Bitset>& sets, size_t n_points,
                             const SetCoverOptions& opt) {
    Bitset uncovered(n_points);
    for (size_t p = 0; p < n_points; ++p) uncovered.set(p);
    std::vector<int> active;
    for (size_t i = 0; i < sets.size(); ++i)
        if (sets[i].any()) active.push_back(static_cast<int>(i));

    long long forced = 0;

    // Reduction loop: unit propagation plus pairwise dominance.
    bool changed = true;
    while (changed && uncovered.any()) {
        changed = false;

        // Points covered by exactly one active set force that set.
        for (size_t p = 0; p < n_points && uncovered.any(); ++p) {
            if (!uncovered.test(p)) continue;
            int only = -1;
            int hits = 0;
            for (int idx : active) {
                if (sets[static_cast<size_t>(idx)].test(p)) {
                    only = idx;
                    if (++hits > 1) break;
                }
            }
            check(hits > 0, "set cover: point not covered by any set");
            if (hits == 1) {
                uncovered.andnot_with(sets[static_cast<size_t>(only)]);
                ++forced;
                std::vector<int> rest;
                rest.reserve(active.size());
                for (int j : active)
                    if (j != only &&
                        sets[static_cast<size_t>(j)].intersection_count(uncovered) > 0)
                        rest.push_back(j);
                active.swap(rest);
                changed = true;
            }
        }
        if (!uncovered.any()) break;

        // Dominance: drop a set whose uncovered part is contained in another
        // set's uncovered part. Equal sets keep the lowest index.
        if (active.size() <= opt.dominance_max_sets && active.size() > 1) {
            std::vector<Bitset> masked(active.size());
            for (size_t a = 0; a < active.size(); ++a) {
                masked[a] = sets[static_cast<size_t>(active[a])];
                masked[a].and_with(uncovered);
            }
            std::vector<char> dead(active.size(), 0);
            for (size_t a = 0; a < active.size(); ++a) {
                if (dead[a]) continue;
                for (size_t b = 0; b < active.size(); ++b) {
                    if (a == b || dead[b] || dead[a]) continue;
                    if (masked[a].subset_of(masked[b])) {
                        if (masked[b].subset_of(masked[a]) && a < b)
                            dead[b] = 1; // equal: keep lower index
                        else if (!(masked[b].subset_of(masked[a])))
                            dead[a] = 1;
                    }
                }
            }
            std::vector<int> rest;
            for (size_t a = 0; a < active.size(); ++a)
                if (!dead[a]) rest.push_back(active[a]);
            if (rest.size() != active.size()) {
                active.swap(rest);
                changed = true;
            }
        }
    }

    if (!uncovered.any()) return {forced, true};

    Solver solver{sets, n_points, opt};
    if (active.size() <= opt.exact_max_sets) {
        solver.best = forced + solver.greedy(uncovered, active);
        solver.search(uncovered, active, forced);
        if (solver.budget_ok) return {solver.best, true};
        return {solver.best, false}; // best found is still a valid cover size
    }
    return {forced + solver.greedy(uncovered, active), false};
}

} // namespace entrolab
