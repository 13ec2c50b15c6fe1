#pragma once

#include <cstdint>
#include <cstddef>
#include <vector>

#include "entrolab/errors.hpp"

namespace entrolab {

// Fixed-size bitset over a sample universe.
class Bitset {
  public:
    Bitset() = default;
    explicit Bitset(size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    size_t size() const { return n_; }
    void set(size_t i) { w_[i >> 6] |= std::uint64_t(1) << (i & 63); }
    bool test(size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }

    size_t count() const;
    bool any() const;
    void and_with(const Bitset& o);
    void or_with(const Bitset& o);
    void andnot_with(const Bitset& o); // this &= ~o
    bool subset_of(const Bitset& o) const;
    bool operator==(const Bitset& o) const { return n_ == o.n_ && w_ == o.w_; }
    size_t intersection_count(const Bitset& o) const;
    std::uint64_t hash() const;

    const std::vector<std::uint64_t>& words() const { return w_; }

  private:
    size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

struct SetCoverOptions {
    // Exact branch-and-bound is attempted when, after dominance and unit
    // propagation, at most this many candidate sets remain.
    size_t exact_max_sets = 96;
    // Node budget for the search; exhausting it falls back to greedy.
    long long node_budget = 4'000'000;
    // Pairwise dominance reduction is skipped above this set count.
    size_t dominance_max_sets = 2048;
};

struct SetCoverResult {
    long long count = 0;
    bool exact = false;
};

// Minimum number of sets covering all n_points points. Preconditions: the
// union of the sets covers every point (callers report uncovered points with
// context before getting here). Deterministic: greedy ties break on the
// lowest set index and the search visits candidates in index order.
SetCoverResult min_set_cover(const std::vector<Bitset>& sets, size_t n_points,
                             const SetCoverOptions& opt = {});

} // namespace entrolab
