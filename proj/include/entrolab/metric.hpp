#pragma once

#include "entrolab/point.hpp"
#include "entrolab/system.hpp"

namespace entrolab {

enum class MetricKind { euclidean, circle_arc, circle_chord, torus_max, symbolic_cylinder, compactified };

std::string metric_kind_name(MetricKind k);

// A metric on one of the supported spaces.
//  euclidean          |x - y| on R^d
//  circle_arc         shortest arc length on R/Z, diameter 1/2
//  circle_chord       chord length of the circle of circumference 1
//  torus_max          max of per-coordinate arc distances
//  symbolic_cylinder  lambda^(first disagreement index) on words
//  compactified       chordal distance of inverse stereographic images in S^d;
//                     bounded by 2 and extends to the one-point compactification
struct Metric {
    MetricKind kind = MetricKind::euclidean;
    double lambda = 0.5; // symbolic_cylinder only, in (0,1)

    static Metric euclidean() { return {MetricKind::euclidean, 0.5}; }
    static Metric circle_arc() { return {MetricKind::circle_arc, 0.5}; }
    static Metric circle_chord() { return {MetricKind::circle_chord, 0.5}; }
    static Metric torus_max() { return {MetricKind::torus_max, 0.5}; }
    static Metric symbolic_cylinder(double lambda = 0.5);
    static Metric compactified() { return {MetricKind::compactified, 0.5}; }
};

// Space the metric applies to; compactified applies to euclidean points.
bool metric_matches_space(const Metric& m, SpaceKind s);

double distance(const Metric& m, const Point& x, const Point& y);

// Chordal distance between the inverse stereographic images of x and y,
// 2|x - y| / sqrt((1+|x|^2)(1+|y|^2)).
double compactified_distance(const Point& x, const Point& y);

// Chordal distance from x to the north pole (the point at infinity),
// 2 / sqrt(1 + |x|^2).
double compactified_distance_to_infinity(const Point& x);

// d_n(x,y) = max_{0 <= j < n} d(T^j x, T^j y), computed along incrementally
// grown orbits. n >= 1; n = 1 recovers d.
double iterated_distance(const Metric& m, const DynamicalSystem& sys, int n, const Point& x,
                         const Point& y);

// Open-ball membership: iterated_distance(...) < eps (strict).
bool dn_ball_contains(const Metric& m, const DynamicalSystem& sys, int n, const Point& center,
                      double eps, const Point& q);

} // namespace entrolab
