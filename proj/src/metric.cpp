#include "entrolab/metric.hpp"

#include <algorithm>
#include <cmath>

namespace entrolab {

namespace {

constexpr double kPi = 3.14159265358979323846;

double arc_dist(double a, double b) {
    double d = std::fabs(reduce_mod1(a) - reduce_mod1(b));
    return std::min(d, 1.0 - d);
}

void require_space(const Metric& m, const Point& x) {
    if (!metric_matches_space(m, x.kind()))
        throw SpaceMismatch("wrong space: metric " + metric_kind_name(m.kind) +
                            " does not apply to " + space_kind_name(x.kind()) + " points");
}

void require_same_shape(const Point& x, const Point& y) {
    if (x.kind() != y.kind())
        throw SpaceMismatch("wrong space: points live in different spaces");
    if (x.kind() == SpaceKind::word) {
        if (x.alphabet() != y.alphabet())
            throw SpaceMismatch("wrong space: words over different alphabets");
    } else if (x.coords().size() != y.coords().size()) {
        throw SpaceMismatch("wrong space: points have different dimensions");
    }
}

} // namespace

std::string metric_kind_name(MetricKind k) {
    switch (k) {
        case MetricKind::euclidean: return "euclidean";
        case MetricKind::circle_arc: return "circle_arc";
        case MetricKind::circle_chord: return "circle_chord";
        case MetricKind::torus_max: return "torus_max";
        case MetricKind::symbolic_cylinder: return "symbolic";
        case MetricKind::compactified: return "compactified";
    }
    return "?";
}

Metric Metric::symbolic_cylinder(double lambda) {
    if (!(lambda > 0.0 && lambda < 1.0))
        throw DomainError("symbolic metric scale must lie in (0,1)");
    return {MetricKind::symbolic_cylinder, lambda};
}

bool metric_matches_space(const Metric& m, SpaceKind s) {
    switch (m.kind) {
        case MetricKind::euclidean:
        case MetricKind::compactified: return s == SpaceKind::euclidean;
        case MetricKind::circle_arc:
        case MetricKind::circle_chord: return s == SpaceKind::circle;
        case MetricKind::torus_max: return s == SpaceKind::torus;
        case MetricKind::symbolic_cylinder: return s == SpaceKind::word;
    }
    return false;
}

double compactified_distance(const Point& x, const Point& y) {
    require_same_shape(x, y);
    if (x.kind() != SpaceKind::euclidean)
        throw SpaceMismatch("wrong space: compactified metric needs euclidean points");
    double diff2 = 0.0, nx2 = 0.0, ny2 = 0.0;
    for (size_t i = 0; i < x.coords().size(); ++i) {
        const double a = x.coords()[i], b = y.coords()[i];
        diff2 += (a - b) * (a - b);
        nx2 += a * a;
        ny2 += b * b;
    }
    return 2.0 * std::sqrt(diff2) / std::sqrt((1.0 + nx2) * (1.0 + ny2));
}

double compactified_distance_to_infinity(const Point& x) {
    if (x.kind() != SpaceKind::euclidean)
        throw SpaceMismatch("wrong space: compactified metric needs euclidean points");
    double n2 = 0.0;
    for (double c : x.coords()) n2 += c * c;
    return 2.0 / std::sqrt(1.0 + n2);
}

double distance(const Metric& m, const Point& x, const Point& y) {
    require_space(m, x);
    require_space(m, y);
    require_same_shape(x, y);
    switch (m.kind) {
        case MetricKind::euclidean: {
            double acc = 0.0;
            for (size_t i = 0; i < x.coords().size(); ++i) {
                const double d = x.coords()[i] - y.coords()[i];
                acc += d * d;
            }
            return std::sqrt(acc);
        }
        case MetricKind::circle_arc:
            return arc_dist(x.coords()[0], y.coords()[0]);
        case MetricKind::circle_chord:
            // Circle of circumference 1 embedded in the plane (radius 1/(2 pi)).
            return std::sin(kPi * arc_dist(x.coords()[0], y.coords()[0])) / kPi;
        case MetricKind::torus_max: {
            double best = 0.0;
            for (size_t i = 0; i < x.coords().size(); ++i)
                best = std::max(best, arc_dist(x.coords()[i], y.coords()[i]));
            return best;
        }
        case MetricKind::symbolic_cylinder: {
            const auto& u = x.symbols();
            const auto& v = y.symbols();
            const size_t overlap = std::min(u.size(), v.size());
            for (size_t i = 0; i < overlap; ++i)
                if (u[i] != v[i]) return std::pow(m.lambda, static_cast<double>(i));
            return 0.0; // equal on the full overlap
        }
        case MetricKind::compactified:
            return compactified_distance(x, y);
    }
    throw ComputeError("unhandled metric kind in distance()");
}

double iterated_distance(const Metric& m, const DynamicalSystem& sys, int n, const Point& x,
                         const Point& y) {
    if (n < 1) throw DomainError("iterated distance needs n >= 1");
    Point cx = x, cy = y;
    double best = distance(m, cx, cy);
    for (int j = 1; j < n; ++j) {
        cx = apply(sys, cx);
        cy = apply(sys, cy);
        best = std::max(best, distance(m, cx, cy));
    }
    return best;
}

bool dn_ball_contains(const Metric& m, const DynamicalSystem& sys, int n, const Point& center,
                      double eps, const Point& q) {
    if (eps <= 0.0) throw DomainError("ball radius must be positive");
    return iterated_distance(m, sys, n, center, q) < eps;
}

} // namespace entrolab
