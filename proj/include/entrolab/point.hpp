#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "entrolab/errors.hpp"

namespace entrolab {

enum class SpaceKind { euclidean, circle, torus, word };

std::string space_kind_name(SpaceKind k);

// Identifies a state space up to the data needed for compatibility checks.
// Word spaces are identified by alphabet only; word length is not part of the
// space (points are finite truncations of one-sided sequences).
struct SpaceDescriptor {
    SpaceKind kind = SpaceKind::euclidean;
    int dim = 1;      // euclidean / torus
    int alphabet = 0; // word

    bool operator==(const SpaceDescriptor&) const = default;
    std::string str() const;
};

// Reduce into [0,1). Values within 1e-12 of an integer snap to the integer
// first, so that 0.999999999999... and 1.0 land on 0 rather than on opposite
// ends of the interval.
inline double reduce_mod1(double x) {
    double r = x - std::floor(x);
    if (r >= 1.0) r -= 1.0;
    if (1.0 - r < 1e-12) r = 0.0;
    if (r < 0.0) r = 0.0;
    return r;
}

// A point of one of the supported state spaces. Circle coordinates are stored
// reduced into [0,1); torus coordinates reduced per axis; word symbols are
// indices into a finite alphabet.
class Point {
  public:
    Point() = default;

    static Point euclidean(std::vector<double> coords);
    static Point circle(double x);
    static Point torus(std::vector<double> coords);
    static Point word(std::vector<int> symbols, int alphabet);

    SpaceKind kind() const { return kind_; }
    const std::vector<double>& coords() const { return coords_; }
    const std::vector<int>& symbols() const { return symbols_; }
    int alphabet() const { return alphabet_; }

    // Spatial dimension for continuous points, word length for symbolic ones.
    int dim() const;
    SpaceDescriptor space() const;

    // Lexicographic order on (kind, alphabet, coordinates/symbols); used for
    // deterministic sorting and atom merging.
    bool operator<(const Point& o) const;
    bool operator==(const Point& o) const;

    std::string str() const;

  private:
    SpaceKind kind_ = SpaceKind::euclidean;
    std::vector<double> coords_;
    std::vector<int> symbols_;
    int alphabet_ = 0;
};

// Max-norm distance between raw coordinate vectors; helper for atom merging.
double coordinate_gap(const Point& a, const Point& b);

} // namespace entrolab
