#pragma once

#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "entrolab/metric.hpp"
#include "entrolab/sample.hpp"
#include "entrolab/setcover.hpp"
#include "entrolab/system.hpp"

namespace entrolab {

struct Cover;
struct CoverElement;

// One interval piece. hi is always an open endpoint; lo is closed when
// lo_closed is set, so (lo,hi) and [lo,hi) are both representable. Partitions
// use the half-open form to make cell membership exact and disjoint.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool lo_closed = false;

    bool empty() const { return hi <= lo; }
    bool contains(double x) const { return (lo_closed ? x >= lo : x > lo) && x < hi; }
};

// Union of arcs on the circle. Arcs store lo in [0,1) and lo < hi <= lo + 1;
// hi may exceed 1 to express wrap-around.
struct ArcsElem {
    std::vector<Interval> arcs;
};

// Axis-aligned box in R^d (product of intervals).
struct BoxElem {
    std::vector<Interval> sides;
};

// All words starting with the given prefix.
struct CylinderElem {
    std::vector<int> symbols;
    int alphabet = 0;
};

// Open complement of a compact set K: a closed box in R^d or a union of
// closed arcs on the circle (each as {lo, hi} on the line, or wrapping).
struct ComplementOfCompactElem {
    SpaceKind space = SpaceKind::euclidean;
    std::vector<std::pair<double, double>> box;        // euclidean: per-dim closed range
    std::vector<std::pair<double, double>> arcs;       // circle: closed arcs, hi may exceed 1
};

// Open ball, optionally in the iterated metric d_n (iterate_n > 1 needs sys).
struct BallElem {
    Metric metric;
    Point center;
    double radius = 0.0;
    int iterate_n = 1;
    std::shared_ptr<const DynamicalSystem> sys;
};

// The whole space (complement of the empty compact).
struct WholeSpaceElem {};

// Generic finite intersection; produced by join() when no symbolic
// intersection rule applies.
struct IntersectionElem {
    std::vector<CoverElement> parts;
};

// Intersection of pullbacks: { x : T^j x in base[indices[j]] for all j }.
struct ItineraryElem {
    std::shared_ptr<const Cover> base;
    std::shared_ptr<const DynamicalSystem> sys;
    std::vector<int> indices;
};

struct CoverElement {
    std::variant<ArcsElem, BoxElem, CylinderElem, ComplementOfCompactElem, BallElem,
                 WholeSpaceElem, IntersectionElem, ItineraryElem>
        v;
};

// A finite family of elements. kind_partition marks families whose elements
// are pairwise disjoint and jointly exhaustive on their space; partition cells
// use half-open pieces so that membership is exact.
struct Cover {
    std::vector<CoverElement> elements;
    SpaceKind space = SpaceKind::euclidean;
    bool is_partition = false;

    size_t size() const { return elements.size(); }
};

bool element_contains(const CoverElement& e, const Point& x);

// Whether the complement of the element is compact. Exact on compact spaces
// (always true); on euclidean spaces true for complement-of-compact, whole
// space, and compactified balls reaching past the point at infinity.
bool element_complement_compact(const CoverElement& e, SpaceKind space);

struct Admissibility {
    bool admissible = false; // at least one element has compact complement
    bool strong = false;     // every element does
};
Admissibility is_admissible(const Cover& a);

// Every element of fine is contained in some element of coarse. Pairs of
// interval-like or cylinder elements are decided symbolically; other pairs
// fall back to sample containment and require a non-empty sample, else
// DomainError("undecidable refinement").
bool refines(const Cover& fine, const Cover& coarse, const WitnessSample& sample);

// Common refinement: pairwise intersections, dropping elements that are
// symbolically empty or (for non-symbolic pairs) empty on the sample.
Cover join(const Cover& a, const Cover& b, const WitnessSample* sample = nullptr);

// a^n = a v T^-1 a v ... v T^-(n-1) a. Cylinder covers of shift systems are
// iterated symbolically (exact emptiness from the adjacency); everything else
// keeps only itineraries that meet the sample.
Cover iterate_cover(const Cover& a, const DynamicalSystem& sys, int n,
                    const WitnessSample* sample = nullptr);

struct SubcoverCount {
    long long count = 0;
    bool exact = false;
};

// Minimal number of elements covering the sample. Exact for partitions
// (number of cells meeting the sample) and for small reduced instances of the
// set-cover search; flagged greedy otherwise. Errors if some sample point is
// uncovered, naming the point.
SubcoverCount min_subcover_cardinality(const Cover& a, const WitnessSample& sample);

// log of min_subcover_cardinality; the sample-based value is a lower bound
// for the true cover entropy.
double cover_entropy(const Cover& a, const WitnessSample& sample);

// Open cover of R^d from a delta-mesh of boxes over the compact box K,
// enlarged for overlap, plus one complement-of-compact patch around
// K shrunk by delta/2. Admissible by construction.
Cover build_admissible_cover_box(const std::vector<std::pair<double, double>>& K, double delta);

// Open cover of the circle by ceil(1/delta) overlapping arcs; strongly
// admissible since the circle is compact.
Cover build_admissible_cover_circle(double delta);

// Dyadic half-open partition of the circle into 2^depth cells.
Cover dyadic_circle_partition(int depth);

// Half-open partition of a box into per_dim^d cells (last cell closed at the
// top so the box is fully covered).
Cover box_partition(const std::vector<std::pair<double, double>>& K, int per_dim);

// Partition of a shift space into its depth-1 cylinders.
Cover cylinder_partition(const DynamicalSystem& sft);

// Membership bitsets of every element over the sample (used by the solver
// paths; exposed for estimators and tests).
std::vector<Bitset> element_masks(const Cover& a, const WitnessSample& sample);

} // namespace entrolab
