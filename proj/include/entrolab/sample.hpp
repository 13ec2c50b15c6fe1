#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "entrolab/point.hpp"
#include "entrolab/system.hpp"

namespace entrolab {

// A finite set of points standing in for the space in cover and estimator
// computations. Point order is part of the sample's identity: greedy
// procedures consume points in this order.
struct WitnessSample {
    std::vector<Point> points;
    std::string provenance;

    size_t size() const { return points.size(); }
};

// count equally spaced points k/count on the circle.
WitnessSample grid_sample_circle(int count);

// per_dim^d grid on a closed box in R^d, endpoints included.
WitnessSample grid_sample_box(const std::vector<std::pair<double, double>>& box, int per_dim);

// per_dim^d grid on the d-torus, spacing 1/per_dim.
WitnessSample grid_sample_torus(int dim, int per_dim);

// Points x = scale * tan(pi (u - 1/2)) for u on a uniform grid in (0,1):
// approximately equally spaced in the compactified (chordal) metric, dense
// near the origin and reaching far into both tails.
WitnessSample stereographic_sample_line(int count, double scale = 1.0);

// count i.i.d.-style uniform points in a box, from a fixed 64-bit seed.
WitnessSample random_sample_box(const std::vector<std::pair<double, double>>& box, int count,
                                std::uint64_t seed);

// count uniform points on the circle from a fixed seed.
WitnessSample random_sample_circle(int count, std::uint64_t seed);

// All admissible words of the given length, in lexicographic order.
WitnessSample sft_word_sample(const DynamicalSystem& sft, int length);

// Concatenation, left to right.
WitnessSample concat_samples(const std::vector<WitnessSample>& parts);

// Portable uniform double in [0,1) from a raw 64-bit draw.
inline double uniform01(std::uint64_t r) {
    return static_cast<double>(r >> 11) * 0x1.0p-53;
}

} // namespace entrolab
