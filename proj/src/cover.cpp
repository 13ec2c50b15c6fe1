#include "entrolab/cover.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <unordered_map>

namespace entrolab {

namespace {

// Intersection of two interval pieces on the line. The lower endpoint keeps
// the closedness of whichever bound is tighter.
Interval meet_interval(const Interval& a, const Interval& b) {
    Interval r;
    if (a.lo > b.lo) {
        r.lo = a.lo;
        r.lo_closed = a.lo_closed;
    } else if (b.lo > a.lo) {
        r.lo = b.lo;
        r.lo_closed = b.lo_closed;
    } else {
        r.lo = a.lo;
        r.lo_closed = a.lo_closed && b.lo_closed;
    }
    r.hi = std::min(a.hi, b.hi);
    return r;
}

bool interval_subset(const Interval& f, const Interval& c) {
    if (f.empty()) return true;
    const bool lo_ok = f.lo > c.lo || (f.lo == c.lo && (c.lo_closed || !f.lo_closed));
    return lo_ok && f.hi <= c.hi;
}

// Does the piece f meet the closed range [klo, khi]?
bool interval_meets_closed(const Interval& f, double klo, double khi) {
    if (f.empty() || khi < klo) return false;
    const double lo_pt = std::max(f.lo, klo);
    const double hi_pt = std::min(f.hi, khi);
    if (lo_pt < hi_pt) return true;
    return lo_pt == hi_pt && (lo_pt > f.lo || f.lo_closed) && hi_pt < f.hi;
}

bool arc_contains(const Interval& a, double r) { return a.contains(r) || a.contains(r + 1.0); }

void normalize_arc(Interval& m) {
    while (m.lo >= 1.0) {
        m.lo -= 1.0;
        m.hi -= 1.0;
    }
    while (m.lo < 0.0) {
        m.lo += 1.0;
        m.hi += 1.0;
    }
}

double circle_coord(const Point& x, const char* what) {
    if (x.kind() != SpaceKind::circle)
        throw SpaceMismatch(std::string("wrong space: ") + what + " needs a circle point, got " +
                            x.space().str());
    return x.coords()[0];
}

void flatten_into(const CoverElement& e, std::vector<CoverElement>& parts) {
    if (const auto* ie = std::get_if<IntersectionElem>(&e.v))
        parts.insert(parts.end(), ie->parts.begin(), ie->parts.end());
    else
        parts.push_back(e);
}

} // namespace

bool element_contains(const CoverElement& e, const Point& x) {
    if (const auto* arcs = std::get_if<ArcsElem>(&e.v)) {
        const double r = circle_coord(x, "arc element");
        for (const Interval& a : arcs->arcs)
            if (arc_contains(a, r)) return true;
        return false;
    }
    if (const auto* box = std::get_if<BoxElem>(&e.v)) {
        if (x.kind() != SpaceKind::euclidean && x.kind() != SpaceKind::torus)
            throw SpaceMismatch("wrong space: box element needs coordinates, got " + x.space().str());
        if (x.coords().size() != box->sides.size())
            throw SpaceMismatch("wrong space: box element dimension mismatch");
        for (size_t i = 0; i < box->sides.size(); ++i)
            if (!box->sides[i].contains(x.coords()[i])) return false;
        return true;
    }
    if (const auto* cyl = std::get_if<CylinderElem>(&e.v)) {
        if (x.kind() != SpaceKind::word || x.alphabet() != cyl->alphabet)
            throw SpaceMismatch("wrong space: cylinder element needs a word point on the same alphabet");
        if (x.symbols().size() < cyl->symbols.size())
            throw DomainError("word too short for cylinder membership: need " +
                              std::to_string(cyl->symbols.size()) + " symbols, have " +
                              std::to_string(x.symbols().size()));
        return std::equal(cyl->symbols.begin(), cyl->symbols.end(), x.symbols().begin());
    }
    if (const auto* cc = std::get_if<ComplementOfCompactElem>(&e.v)) {
        if (cc->space == SpaceKind::euclidean) {
            if (x.kind() != SpaceKind::euclidean)
                throw SpaceMismatch("wrong space: complement element needs a euclidean point");
            if (x.coords().size() != cc->box.size())
                throw SpaceMismatch("wrong space: complement element dimension mismatch");
            for (size_t i = 0; i < cc->box.size(); ++i) {
                const double c = x.coords()[i];
                if (c < cc->box[i].first || c > cc->box[i].second) return true; // outside K
            }
            return false;
        }
        const double r = circle_coord(x, "complement element");
        for (const auto& [lo, hi] : cc->arcs)
            if ((r >= lo && r <= hi) || (r + 1.0 >= lo && r + 1.0 <= hi)) return false;
        return true;
    }
    if (const auto* b = std::get_if<BallElem>(&e.v)) {
        if (b->iterate_n <= 1) return distance(b->metric, b->center, x) < b->radius;
        check(b->sys != nullptr, "iterated ball element is missing its system");
        return dn_ball_contains(b->metric, *b->sys, b->iterate_n, b->center, b->radius, x);
    }
    if (std::holds_alternative<WholeSpaceElem>(e.v)) return true;
    if (const auto* ie = std::get_if<IntersectionElem>(&e.v)) {
        for (const CoverElement& p : ie->parts)
            if (!element_contains(p, x)) return false;
        return true;
    }
    const auto& it = std::get<ItineraryElem>(e.v);
    check(it.base != nullptr && it.sys != nullptr, "itinerary element missing base cover or system");
    Point y = x;
    for (size_t j = 0; j < it.indices.size(); ++j) {
        const int idx = it.indices[j];
        if (idx < 0 || size_t(idx) >= it.base->size())
            throw DomainError("itinerary index out of range");
        if (j > 0) y = apply(*it.sys, y);
        if (!element_contains(it.base->elements[idx], y)) return false;
    }
    return true;
}

bool element_complement_compact(const CoverElement& e, SpaceKind space) {
    if (space != SpaceKind::euclidean) return true; // circle, torus, word are compact
    if (std::holds_alternative<WholeSpaceElem>(e.v)) return true;
    if (std::holds_alternative<ComplementOfCompactElem>(e.v)) return true;
    if (const auto* b = std::get_if<BallElem>(&e.v)) {
        // The complement of a chordal ball is compact once the ball swallows a
        // neighborhood of the point at infinity.
        if (b->metric.kind == MetricKind::compactified && b->iterate_n <= 1)
            return compactified_distance_to_infinity(b->center) < b->radius;
        return false;
    }
    if (const auto* ie = std::get_if<IntersectionElem>(&e.v)) {
        // complement of an intersection = union of the complements
        for (const CoverElement& p : ie->parts)
            if (!element_complement_compact(p, space)) return false;
        return !ie->parts.empty();
    }
    return false;
}

Admissibility is_admissible(const Cover& a) {
    if (a.elements.empty()) return {false, false};
    if (a.space != SpaceKind::euclidean) return {true, true};
    Admissibility r{false, true};
    for (const CoverElement& e : a.elements) {
        const bool c = element_complement_compact(e, a.space);
        r.admissible = r.admissible || c;
        r.strong = r.strong && c;
    }
    return r;
}

namespace {

// Certain subset (true), certain non-subset (false), or undecided (nullopt).
std::optional<bool> symbolic_subset(const CoverElement& f, const CoverElement& c) {
    if (std::holds_alternative<WholeSpaceElem>(c.v)) return true;

    const auto* fa = std::get_if<ArcsElem>(&f.v);
    const auto* ca = std::get_if<ArcsElem>(&c.v);
    if (fa && ca) {
        for (const Interval& piece : fa->arcs) {
            if (piece.empty()) continue;
            bool inside = false;
            for (const Interval& host : ca->arcs) {
                for (double s : {-1.0, 0.0, 1.0}) {
                    Interval shifted{host.lo + s, host.hi + s, host.lo_closed};
                    if (interval_subset(piece, shifted)) {
                        inside = true;
                        break;
                    }
                }
                if (inside) break;
            }
            if (!inside) return std::nullopt; // might still sit in a union of host arcs
        }
        return true;
    }

    const auto* fb = std::get_if<BoxElem>(&f.v);
    const auto* cb = std::get_if<BoxElem>(&c.v);
    if (fb && cb) {
        if (fb->sides.size() != cb->sides.size()) return false;
        for (const Interval& s : fb->sides)
            if (s.empty()) return true; // f is empty
        for (size_t i = 0; i < fb->sides.size(); ++i)
            if (!interval_subset(fb->sides[i], cb->sides[i])) return false;
        return true;
    }

    const auto* fc = std::get_if<CylinderElem>(&f.v);
    const auto* cc = std::get_if<CylinderElem>(&c.v);
    if (fc && cc) {
        if (fc->alphabet != cc->alphabet) return false;
        if (cc->symbols.size() > fc->symbols.size()) return false;
        return std::equal(cc->symbols.begin(), cc->symbols.end(), fc->symbols.begin());
    }

    const auto* ck = std::get_if<ComplementOfCompactElem>(&c.v);
    if (fa && ck && ck->space == SpaceKind::circle) {
        // f subset of K-complement iff f misses every closed arc of K
        for (const Interval& piece : fa->arcs)
            for (const auto& [klo, khi] : ck->arcs)
                for (double s : {-1.0, 0.0, 1.0})
                    if (interval_meets_closed(piece, klo + s, khi + s)) return false;
        return true;
    }
    if (fb && ck && ck->space == SpaceKind::euclidean) {
        if (fb->sides.size() != ck->box.size()) return false;
        bool meets = true;
        for (size_t i = 0; i < fb->sides.size(); ++i) {
            if (fb->sides[i].empty()) return true;
            if (!interval_meets_closed(fb->sides[i], ck->box[i].first, ck->box[i].second))
                meets = false;
        }
        return !meets;
    }

    const auto* fk = std::get_if<ComplementOfCompactElem>(&f.v);
    if (fk && ck && fk->space == ck->space) {
        if (fk->space == SpaceKind::euclidean) {
            // K_f-complement subset of K_c-complement iff K_c inside K_f
            if (fk->box.size() != ck->box.size()) return false;
            for (size_t i = 0; i < fk->box.size(); ++i)
                if (ck->box[i].first < fk->box[i].first || ck->box[i].second > fk->box[i].second)
                    return false;
            return true;
        }
        for (const auto& [clo, chi] : ck->arcs) {
            bool inside = false;
            for (const auto& [flo, fhi] : fk->arcs)
                for (double s : {-1.0, 0.0, 1.0})
                    if (clo >= flo + s && chi <= fhi + s) inside = true;
            if (!inside) return std::nullopt;
        }
        return true;
    }

    const auto* fball = std::get_if<BallElem>(&f.v);
    const auto* cball = std::get_if<BallElem>(&c.v);
    if (fball && cball && fball->metric.kind == cball->metric.kind &&
        fball->metric.lambda == cball->metric.lambda && fball->iterate_n == cball->iterate_n &&
        (fball->iterate_n <= 1 || fball->sys == cball->sys)) {
        double d;
        if (fball->iterate_n <= 1)
            d = distance(fball->metric, fball->center, cball->center);
        else
            d = iterated_distance(fball->metric, *fball->sys, fball->iterate_n, fball->center,
                                  cball->center);
        if (d + fball->radius <= cball->radius) return true; // triangle inequality
        return std::nullopt;
    }

    return std::nullopt;
}

} // namespace

bool refines(const Cover& fine, const Cover& coarse, const WitnessSample& sample) {
    if (fine.space != coarse.space)
        throw SpaceMismatch("cannot compare covers on different spaces");
    for (const CoverElement& f : fine.elements) {
        bool ok = false;
        bool any_unknown = false;
        for (const CoverElement& c : coarse.elements) {
            const auto s = symbolic_subset(f, c);
            if (s.has_value() && *s) {
                ok = true;
                break;
            }
            if (!s.has_value()) any_unknown = true;
        }
        if (ok) continue;
        if (!any_unknown) return false;
        if (sample.points.empty())
            throw DomainError("undecidable refinement: no witness sample");
        std::vector<const Point*> in_f;
        for (const Point& p : sample.points)
            if (element_contains(f, p)) in_f.push_back(&p);
        if (in_f.empty()) continue; // no evidence against; vacuous on the sample
        for (const CoverElement& c : coarse.elements) {
            const auto s = symbolic_subset(f, c);
            if (s.has_value() && !*s) continue;
            bool all_in = true;
            for (const Point* p : in_f)
                if (!element_contains(c, *p)) {
                    all_in = false;
                    break;
                }
            if (all_in) {
                ok = true;
                break;
            }
        }
        if (!ok) return false;
    }
    return true;
}

namespace {

// Symbolic intersection where a closed form exists. Returns true if the pair
// was handled; out stays empty when the intersection is provably empty.
bool symbolic_meet(const CoverElement& A, const CoverElement& B, std::optional<CoverElement>& out) {
    out.reset();
    if (std::holds_alternative<WholeSpaceElem>(A.v)) {
        out = B;
        return true;
    }
    if (std::holds_alternative<WholeSpaceElem>(B.v)) {
        out = A;
        return true;
    }

    const auto* aa = std::get_if<ArcsElem>(&A.v);
    const auto* ba = std::get_if<ArcsElem>(&B.v);
    if (aa && ba) {
        ArcsElem r;
        for (const Interval& x : aa->arcs)
            for (const Interval& y : ba->arcs)
                for (double s : {-1.0, 0.0, 1.0}) {
                    Interval shifted{y.lo + s, y.hi + s, y.lo_closed};
                    Interval m = meet_interval(x, shifted);
                    if (!m.empty()) {
                        normalize_arc(m);
                        r.arcs.push_back(m);
                    }
                }
        if (!r.arcs.empty()) out = CoverElement{r};
        return true;
    }

    const auto* ab = std::get_if<BoxElem>(&A.v);
    const auto* bb = std::get_if<BoxElem>(&B.v);
    if (ab && bb && ab->sides.size() == bb->sides.size()) {
        BoxElem r;
        r.sides.reserve(ab->sides.size());
        for (size_t i = 0; i < ab->sides.size(); ++i) {
            Interval m = meet_interval(ab->sides[i], bb->sides[i]);
            if (m.empty()) return true; // empty intersection
            r.sides.push_back(m);
        }
        out = CoverElement{r};
        return true;
    }

    const auto* ac = std::get_if<CylinderElem>(&A.v);
    const auto* bc = std::get_if<CylinderElem>(&B.v);
    if (ac && bc && ac->alphabet == bc->alphabet) {
        const CylinderElem& longer = ac->symbols.size() >= bc->symbols.size() ? *ac : *bc;
        const CylinderElem& shorter = ac->symbols.size() >= bc->symbols.size() ? *bc : *ac;
        if (std::equal(shorter.symbols.begin(), shorter.symbols.end(), longer.symbols.begin()))
            out = CoverElement{longer};
        return true;
    }

    return false;
}

} // namespace

Cover join(const Cover& a, const Cover& b, const WitnessSample* sample) {
    if (a.space != b.space) throw SpaceMismatch("cannot join covers on different spaces");
    Cover out;
    out.space = a.space;
    out.is_partition = a.is_partition && b.is_partition;

    std::vector<Bitset> ma, mb;
    const bool have_sample = sample != nullptr && !sample->points.empty();
    if (have_sample) {
        ma = element_masks(a, *sample);
        mb = element_masks(b, *sample);
    }

    for (size_t i = 0; i < a.elements.size(); ++i)
        for (size_t j = 0; j < b.elements.size(); ++j) {
            std::optional<CoverElement> r;
            if (symbolic_meet(a.elements[i], b.elements[j], r)) {
                if (r.has_value()) out.elements.push_back(std::move(*r));
                continue;
            }
            if (have_sample && ma[i].intersection_count(mb[j]) == 0) continue;
            IntersectionElem ie;
            flatten_into(a.elements[i], ie.parts);
            flatten_into(b.elements[j], ie.parts);
            out.elements.push_back(CoverElement{std::move(ie)});
        }
    return out;
}

Cover iterate_cover(const Cover& a, const DynamicalSystem& sys, int n,
                    const WitnessSample* sample) {
    if (n < 1) throw DomainError("iterated cover needs n >= 1");
    if (a.elements.empty()) throw DomainError("iterated cover of an empty cover");
    if (n == 1) return a;

    if (sys.kind() == SystemKind::shift_sft) {
        bool all_cyl = true;
        for (const CoverElement& e : a.elements)
            if (!std::holds_alternative<CylinderElem>(e.v)) {
                all_cyl = false;
                break;
            }
        if (all_cyl) {
            const auto& adj = sys.adjacency();
            const int alpha = int(adj.size());
            auto admissible = [&](const std::vector<int>& w) {
                for (int s : w)
                    if (s < 0 || s >= alpha) throw SpaceMismatch("cylinder symbol outside alphabet");
                for (size_t t = 0; t + 1 < w.size(); ++t)
                    if (!adj[w[t]][w[t + 1]]) return false;
                return true;
            };
            std::set<std::vector<int>> cur;
            for (const CoverElement& e : a.elements) {
                const auto& cyl = std::get<CylinderElem>(e.v);
                if (cyl.alphabet != alpha)
                    throw SpaceMismatch("cylinder cover alphabet does not match the shift");
                if (cyl.symbols.empty()) throw DomainError("empty cylinder prefix");
                if (admissible(cyl.symbols)) cur.insert(cyl.symbols);
            }
            // Constraint blocks start at consecutive offsets, so the merged
            // word is always a contiguous prefix.
            for (int j = 1; j < n; ++j) {
                std::set<std::vector<int>> next;
                for (const std::vector<int>& w : cur)
                    for (const CoverElement& e : a.elements) {
                        const auto& p = std::get<CylinderElem>(e.v).symbols;
                        std::vector<int> merged = w;
                        bool ok = true;
                        for (size_t t = 0; t < p.size(); ++t) {
                            const size_t pos = size_t(j) + t;
                            if (pos < merged.size()) {
                                if (merged[pos] != p[t]) {
                                    ok = false;
                                    break;
                                }
                            } else {
                                if (!adj[merged[pos - 1]][p[t]]) {
                                    ok = false;
                                    break;
                                }
                                merged.push_back(p[t]);
                            }
                        }
                        if (ok) next.insert(std::move(merged));
                    }
                cur.swap(next);
            }
            Cover out;
            out.space = SpaceKind::word;
            out.is_partition = a.is_partition;
            for (const std::vector<int>& w : cur)
                out.elements.push_back(CoverElement{CylinderElem{w, alpha}});
            return out;
        }
    }

    if (sample == nullptr || sample->points.empty())
        throw DomainError("iterated cover needs a witness sample");

    const size_t S = sample->points.size();
    const size_t m = a.size();

    std::vector<std::vector<Point>> lev(static_cast<size_t>(n));
    lev[0] = sample->points;
    for (int l = 1; l < n; ++l) {
        lev[l].reserve(S);
        for (size_t k = 0; k < S; ++k) lev[l].push_back(apply(sys, lev[l - 1][k]));
    }
    std::vector<std::vector<Bitset>> M(static_cast<size_t>(n));
    for (int l = 0; l < n; ++l) {
        M[l].assign(m, Bitset(S));
        for (size_t i = 0; i < m; ++i)
            for (size_t k = 0; k < S; ++k)
                if (element_contains(a.elements[i], lev[l][k])) M[l][i].set(k);
    }

    // Itineraries with the same trace on the sample are interchangeable for
    // counting, so each level keeps one representative per distinct trace.
    struct Node {
        Bitset mask;
        std::vector<int> path;
    };
    std::vector<Node> cur;
    std::unordered_map<std::uint64_t, std::vector<size_t>> seen;
    auto push_unique = [&](std::vector<Node>& vec, Bitset&& mask, std::vector<int>&& path) {
        auto& bucket = seen[mask.hash()];
        for (size_t idx : bucket)
            if (vec[idx].mask == mask) return;
        bucket.push_back(vec.size());
        vec.push_back(Node{std::move(mask), std::move(path)});
    };
    for (size_t i = 0; i < m; ++i) {
        Bitset mk = M[0][i];
        if (mk.any()) push_unique(cur, std::move(mk), std::vector<int>{int(i)});
    }
    for (int l = 1; l < n; ++l) {
        std::vector<Node> next;
        seen.clear();
        for (const Node& node : cur)
            for (size_t i = 0; i < m; ++i) {
                Bitset child = node.mask;
                child.and_with(M[l][i]);
                if (!child.any()) continue;
                std::vector<int> path = node.path;
                path.push_back(int(i));
                push_unique(next, std::move(child), std::move(path));
            }
        cur.swap(next);
        seen.clear();
    }

    Cover out;
    out.space = a.space;
    out.is_partition = a.is_partition; // distinct cells have disjoint, hence distinct, traces
    auto base = std::make_shared<const Cover>(a);
    auto sp = std::make_shared<const DynamicalSystem>(sys);
    for (Node& node : cur)
        out.elements.push_back(CoverElement{ItineraryElem{base, sp, std::move(node.path)}});
    return out;
}

std::vector<Bitset> element_masks(const Cover& a, const WitnessSample& sample) {
    const size_t S = sample.points.size();
    std::vector<Bitset> out;
    out.reserve(a.size());

    // Orbit levels and per-level base masks are shared across itinerary
    // elements with the same base cover and system.
    struct GroupData {
        std::vector<std::vector<Point>> pts;
        std::vector<std::vector<Bitset>> msk;
    };
    std::map<std::pair<const void*, const void*>, GroupData> groups;

    for (const CoverElement& e : a.elements) {
        if (const auto* it = std::get_if<ItineraryElem>(&e.v)) {
            check(it->base != nullptr && it->sys != nullptr,
                  "itinerary element missing base cover or system");
            const size_t need = it->indices.size();
            check(need >= 1, "itinerary element with an empty index path");
            GroupData& g = groups[{it->base.get(), it->sys.get()}];
            if (g.pts.empty()) g.pts.push_back(sample.points);
            while (g.pts.size() < need) {
                const auto& prev = g.pts.back();
                std::vector<Point> nxt;
                nxt.reserve(S);
                for (size_t k = 0; k < S; ++k) nxt.push_back(apply(*it->sys, prev[k]));
                g.pts.push_back(std::move(nxt));
            }
            while (g.msk.size() < need) {
                const size_t l = g.msk.size();
                std::vector<Bitset> row(it->base->size(), Bitset(S));
                for (size_t i = 0; i < it->base->size(); ++i)
                    for (size_t k = 0; k < S; ++k)
                        if (element_contains(it->base->elements[i], g.pts[l][k])) row[i].set(k);
                g.msk.push_back(std::move(row));
            }
            Bitset mk(S);
            bool first = true;
            for (size_t j = 0; j < need; ++j) {
                const int idx = it->indices[j];
                if (idx < 0 || size_t(idx) >= it->base->size())
                    throw DomainError("itinerary index out of range");
                if (first) {
                    mk = g.msk[j][idx];
                    first = false;
                } else {
                    mk.and_with(g.msk[j][idx]);
                }
            }
            out.push_back(std::move(mk));
        } else {
            Bitset mk(S);
            for (size_t k = 0; k < S; ++k)
                if (element_contains(e, sample.points[k])) mk.set(k);
            out.push_back(std::move(mk));
        }
    }
    return out;
}

SubcoverCount min_subcover_cardinality(const Cover& a, const WitnessSample& sample) {
    if (sample.points.empty()) throw DomainError("minimal subcover needs a non-empty witness sample");
    if (a.elements.empty()) throw DomainError("minimal subcover of an empty cover");

    if (a.is_partition) {
        bool uniform_cyl = true;
        size_t L = 0;
        for (const CoverElement& e : a.elements) {
            const auto* cyl = std::get_if<CylinderElem>(&e.v);
            if (cyl == nullptr) {
                uniform_cyl = false;
                break;
            }
            if (L == 0)
                L = cyl->symbols.size();
            else if (cyl->symbols.size() != L)
                uniform_cyl = false;
        }
        if (uniform_cyl && L > 0) {
            std::set<std::vector<int>> have;
            for (const CoverElement& e : a.elements) have.insert(std::get<CylinderElem>(e.v).symbols);
            std::set<std::vector<int>> used;
            for (const Point& p : sample.points) {
                if (p.kind() != SpaceKind::word)
                    throw SpaceMismatch("cylinder partition needs word points");
                if (p.symbols().size() < L)
                    throw DomainError("word too short for cylinder membership: need " +
                                      std::to_string(L) + " symbols, have " +
                                      std::to_string(p.symbols().size()));
                std::vector<int> prefix(p.symbols().begin(), p.symbols().begin() + long(L));
                if (have.find(prefix) == have.end())
                    throw DomainError("not a cover of the sample: uncovered point " + p.str());
                used.insert(std::move(prefix));
            }
            return {static_cast<long long>(used.size()), true};
        }

        std::vector<char> hit(a.size(), 0);
        for (const Point& p : sample.points) {
            bool found = false;
            for (size_t i = 0; i < a.size(); ++i)
                if (element_contains(a.elements[i], p)) {
                    hit[i] = 1;
                    found = true;
                    break; // cells are disjoint
                }
            if (!found)
                throw DomainError("not a cover of the sample: uncovered point " + p.str());
        }
        long long used = 0;
        for (char h : hit) used += h;
        return {used, true};
    }

    const auto masks = element_masks(a, sample);
    Bitset all(sample.points.size());
    for (const Bitset& m : masks) all.or_with(m);
    for (size_t k = 0; k < sample.points.size(); ++k)
        if (!all.test(k))
            throw DomainError("not a cover of the sample: uncovered point " +
                              sample.points[k].str());
    const SetCoverResult r = min_set_cover(masks, sample.points.size());
    return {r.count, r.exact};
}

double cover_entropy(const Cover& a, const WitnessSample& sample) {
    const SubcoverCount c = min_subcover_cardinality(a, sample);
    check(c.count >= 1, "minimal subcover count must be positive");
    return std::log(double(c.count));
}

Cover build_admissible_cover_box(const std::vector<std::pair<double, double>>& K, double delta) {
    if (K.empty()) throw DomainError("compact box needs at least one dimension");
    if (!(delta > 0.0) || !std::isfinite(delta)) throw DomainError("mesh width must be positive");
    for (const auto& [lo, hi] : K)
        if (!std::isfinite(lo) || !std::isfinite(hi) || hi < lo)
            throw DomainError("malformed compact box");

    const size_t d = K.size();
    std::vector<std::vector<double>> centers(d);
    for (size_t i = 0; i < d; ++i) {
        const auto n_i = size_t(std::ceil((K[i].second - K[i].first) / delta)) + 1;
        for (size_t k = 0; k < n_i; ++k) centers[i].push_back(K[i].first + double(k) * delta);
    }

    Cover out;
    out.space = SpaceKind::euclidean;
    std::vector<size_t> idx(d, 0);
    const double r = 0.75 * delta;
    for (;;) {
        BoxElem box;
        box.sides.reserve(d);
        for (size_t i = 0; i < d; ++i)
            box.sides.push_back(Interval{centers[i][idx[i]] - r, centers[i][idx[i]] + r, false});
        out.elements.push_back(CoverElement{std::move(box)});
        size_t i = 0;
        while (i < d && ++idx[i] == centers[i].size()) {
            idx[i] = 0;
            ++i;
        }
        if (i == d) break;
    }

    ComplementOfCompactElem patch;
    patch.space = SpaceKind::euclidean;
    for (const auto& [lo, hi] : K) {
        double slo = lo + 0.5 * delta, shi = hi - 0.5 * delta;
        if (slo > shi) slo = shi = 0.5 * (lo + hi); // thin box shrinks to its midplane
        patch.box.emplace_back(slo, shi);
    }
    out.elements.push_back(CoverElement{std::move(patch)});
    return out;
}

Cover build_admissible_cover_circle(double delta) {
    if (!(delta > 0.0) || !std::isfinite(delta)) throw DomainError("mesh width must be positive");
    Cover out;
    out.space = SpaceKind::circle;
    const auto m = size_t(std::ceil(1.0 / delta));
    const double w = std::min(1.5 * delta, 1.0);
    for (size_t i = 0; i < m; ++i) {
        ArcsElem arc;
        if (w >= 1.0) {
            arc.arcs.push_back(Interval{0.0, 1.0, true});
        } else {
            Interval a{double(i) / double(m) - 0.5 * w, double(i) / double(m) + 0.5 * w, false};
            normalize_arc(a);
            arc.arcs.push_back(a);
        }
        out.elements.push_back(CoverElement{std::move(arc)});
    }
    return out;
}

Cover dyadic_circle_partition(int depth) {
    if (depth < 0 || depth > 30) throw DomainError("dyadic depth out of range");
    const auto n = size_t(1) << depth;
    Cover out;
    out.space = SpaceKind::circle;
    out.is_partition = true;
    for (size_t i = 0; i < n; ++i) {
        ArcsElem arc;
        arc.arcs.push_back(Interval{double(i) / double(n), double(i + 1) / double(n), true});
        out.elements.push_back(CoverElement{std::move(arc)});
    }
    return out;
}

Cover box_partition(const std::vector<std::pair<double, double>>& K, int per_dim) {
    if (K.empty()) throw DomainError("compact box needs at least one dimension");
    if (per_dim < 1) throw DomainError("box partition needs at least one cell per dimension");
    for (const auto& [lo, hi] : K)
        if (!std::isfinite(lo) || !std::isfinite(hi) || hi <= lo)
            throw DomainError("malformed compact box");

    const size_t d = K.size();
    Cover out;
    out.space = SpaceKind::euclidean;
    out.is_partition = true;
    std::vector<size_t> idx(d, 0);
    for (;;) {
        BoxElem box;
        box.sides.reserve(d);
        for (size_t i = 0; i < d; ++i) {
            const double step = (K[i].second - K[i].first) / double(per_dim);
            double lo = K[i].first + double(idx[i]) * step;
            double hi = idx[i] + 1 == size_t(per_dim) ? K[i].second : K[i].first + double(idx[i] + 1) * step;
            // top edge closed via nextafter so the box's own boundary is covered
            if (idx[i] + 1 == size_t(per_dim)) hi = std::nextafter(hi, HUGE_VAL);
            box.sides.push_back(Interval{lo, hi, true});
        }
        out.elements.push_back(CoverElement{std::move(box)});
        size_t i = 0;
        while (i < d && ++idx[i] == size_t(per_dim)) {
            idx[i] = 0;
            ++i;
        }
        if (i == d) break;
    }
    return out;
}

Cover cylinder_partition(const DynamicalSystem& sft) {
    if (sft.kind() != SystemKind::shift_sft)
        throw DomainError("cylinder partition needs a shift system");
    const int alpha = int(sft.adjacency().size());
    Cover out;
    out.space = SpaceKind::word;
    out.is_partition = true;
    for (int s = 0; s < alpha; ++s)
        out.elements.push_back(CoverElement{CylinderElem{{s}, alpha}});
    return out;
}

} // namespace entrolab
