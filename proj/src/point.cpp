#include "entrolab/point.hpp"

#include <algorithm>
#include <sstream>

namespace entrolab {

std::string space_kind_name(SpaceKind k) {
    switch (k) {
        case SpaceKind::euclidean: return "euclidean";
        case SpaceKind::circle: return "circle";
        case SpaceKind::torus: return "torus";
        case SpaceKind::word: return "word";
    }
    return "?";
}

std::string SpaceDescriptor::str() const {
    std::ostringstream os;
    os << space_kind_name(kind);
    if (kind == SpaceKind::euclidean || kind == SpaceKind::torus) os << "^" << dim;
    if (kind == SpaceKind::word) os << "(" << alphabet << ")";
    return os.str();
}

std::string Point::str() const {
    std::ostringstream os;
    if (kind_ == SpaceKind::word) {
        for (int s : symbols_) os << s;
        return os.str();
    }
    os << "(";
    for (size_t i = 0; i < coords_.size(); ++i) {
        if (i) os << ", ";
        os << coords_[i];
    }
    os << ")";
    return os.str();
}

Point Point::euclidean(std::vector<double> coords) {
    if (coords.empty()) throw DomainError("euclidean point needs at least one coordinate");
    for (double c : coords)
        if (!std::isfinite(c)) throw DomainError("euclidean point has non-finite coordinate");
    Point p;
    p.kind_ = SpaceKind::euclidean;
    p.coords_ = std::move(coords);
    return p;
}

Point Point::circle(double x) {
    if (!std::isfinite(x)) throw DomainError("circle point has non-finite coordinate");
    Point p;
    p.kind_ = SpaceKind::circle;
    p.coords_ = {reduce_mod1(x)};
    return p;
}

Point Point::torus(std::vector<double> coords) {
    if (coords.empty()) throw DomainError("torus point needs at least one coordinate");
    Point p;
    p.kind_ = SpaceKind::torus;
    p.coords_.reserve(coords.size());
    for (double c : coords) {
        if (!std::isfinite(c)) throw DomainError("torus point has non-finite coordinate");
        p.coords_.push_back(reduce_mod1(c));
    }
    return p;
}

Point Point::word(std::vector<int> symbols, int alphabet) {
    if (alphabet < 1) throw DomainError("word alphabet must be positive");
    if (symbols.empty()) throw DomainError("word must have at least one symbol");
    for (int s : symbols)
        if (s < 0 || s >= alphabet) throw DomainError("word symbol outside alphabet");
    Point p;
    p.kind_ = SpaceKind::word;
    p.symbols_ = std::move(symbols);
    p.alphabet_ = alphabet;
    return p;
}

int Point::dim() const {
    return kind_ == SpaceKind::word ? static_cast<int>(symbols_.size())
                                    : static_cast<int>(coords_.size());
}

SpaceDescriptor Point::space() const {
    SpaceDescriptor d;
    d.kind = kind_;
    d.dim = kind_ == SpaceKind::word ? 1 : static_cast<int>(coords_.size());
    d.alphabet = alphabet_;
    return d;
}

bool Point::operator<(const Point& o) const {
    if (kind_ != o.kind_) return static_cast<int>(kind_) < static_cast<int>(o.kind_);
    if (alphabet_ != o.alphabet_) return alphabet_ < o.alphabet_;
    if (kind_ == SpaceKind::word)
        return std::lexicographical_compare(symbols_.begin(), symbols_.end(),
                                            o.symbols_.begin(), o.symbols_.end());
    return std::lexicographical_compare(coords_.begin(), coords_.end(),
                                        o.coords_.begin(), o.coords_.end());
}

bool Point::operator==(const Point& o) const {
    return kind_ == o.kind_ && alphabet_ == o.alphabet_ && coords_ == o.coords_ &&
           symbols_ == o.symbols_;
}

double coordinate_gap(const Point& a, const Point& b) {
    if (a.kind() != b.kind()) return 1e300;
    if (a.kind() == SpaceKind::word)
        return a.alphabet() == b.alphabet() && a.symbols() == b.symbols() ? 0.0 : 1e300;
    if (a.coords().size() != b.coords().size()) return 1e300;
    double g = 0.0;
    for (size_t i = 0; i < a.coords().size(); ++i)
        g = std::max(g, std::fabs(a.coords()[i] - b.coords()[i]));
    return g;
}

} // namespace entrolab
