#include "entrolab/sample.hpp"

#include <cmath>
#include <random>

namespace entrolab {

namespace {
constexpr double kPi = 3.14159265358979323846;

void require_box(const std::vector<std::pair<double, double>>& box) {
    if (box.empty()) throw DomainError("box needs at least one dimension");
    for (const auto& [lo, hi] : box)
        if (!(lo < hi)) throw DomainError("box sides must satisfy lo < hi");
}
} // namespace

WitnessSample grid_sample_circle(int count) {
    if (count < 1) throw DomainError("sample size must be positive");
    WitnessSample s;
    s.provenance = "grid";
    s.points.reserve(static_cast<size_t>(count));
    for (int k = 0; k < count; ++k)
        s.points.push_back(Point::circle(static_cast<double>(k) / count));
    return s;
}

WitnessSample grid_sample_box(const std::vector<std::pair<double, double>>& box, int per_dim) {
    require_box(box);
    if (per_dim < 2) throw DomainError("grid needs at least two points per dimension");
    const size_t d = box.size();
    WitnessSample s;
    s.provenance = "grid";
    std::vector<int> idx(d, 0);
    while (true) {
        std::vector<double> coords(d);
        for (size_t c = 0; c < d; ++c) {
            const auto& [lo, hi] = box[c];
            coords[c] = lo + (hi - lo) * idx[c] / (per_dim - 1);
        }
        s.points.push_back(Point::euclidean(std::move(coords)));
        size_t c = d;
        while (c > 0) {
            --c;
            if (++idx[c] < per_dim) break;
            idx[c] = 0;
            if (c == 0) return s;
        }
    }
}

WitnessSample grid_sample_torus(int dim, int per_dim) {
    if (dim < 1) throw DomainError("torus dimension must be positive");
    if (per_dim < 1) throw DomainError("sample size must be positive");
    WitnessSample s;
    s.provenance = "grid";
    std::vector<int> idx(static_cast<size_t>(dim), 0);
    while (true) {
        std::vector<double> coords(static_cast<size_t>(dim));
        for (int c = 0; c < dim; ++c) coords[c] = static_cast<double>(idx[c]) / per_dim;
        s.points.push_back(Point::torus(std::move(coords)));
        int c = dim;
        while (c > 0) {
            --c;
            if (++idx[c] < per_dim) break;
            idx[c] = 0;
            if (c == 0) return s;
        }
    }
}

WitnessSample stereographic_sample_line(int count, double scale) {
    if (count < 2) throw DomainError("stereographic sample needs at least two points");
    if (!(scale > 0.0)) throw DomainError("stereographic scale must be positive");
    WitnessSample s;
    s.provenance = "stereographic";
    s.points.reserve(static_cast<size_t>(count));
    for (int k = 0; k < count; ++k) {
        const double u = (k + 0.5) / count;
        s.points.push_back(Point::euclidean({scale * std::tan(kPi * (u - 0.5))}));
    }
    return s;
}

WitnessSample random_sample_box(const std::vector<std::pair<double, double>>& box, int count,
                                std::uint64_t seed) {
    require_box(box);
    if (count < 1) throw DomainError("sample size must be positive");
    std::mt19937_64 rng(seed);
    WitnessSample s;
    s.provenance = "random(seed=" + std::to_string(seed) + ")";
    for (int k = 0; k < count; ++k) {
        std::vector<double> coords(box.size());
        for (size_t c = 0; c < box.size(); ++c) {
            const auto& [lo, hi] = box[c];
            coords[c] = lo + (hi - lo) * uniform01(rng());
        }
        s.points.push_back(Point::euclidean(std::move(coords)));
    }
    return s;
}

WitnessSample random_sample_circle(int count, std::uint64_t seed) {
    if (count < 1) throw DomainError("sample size must be positive");
    std::mt19937_64 rng(seed);
    WitnessSample s;
    s.provenance = "random(seed=" + std::to_string(seed) + ")";
    for (int k = 0; k < count; ++k) s.points.push_back(Point::circle(uniform01(rng())));
    return s;
}

WitnessSample sft_word_sample(const DynamicalSystem& sft, int length) {
    if (sft.kind() != SystemKind::shift_sft)
        throw DomainError("word sample requires a shift system");
    if (length < 1) throw DomainError("word length must be >= 1");
    const auto& adj = sft.adjacency();
    const int k = static_cast<int>(adj.size());
    WitnessSample s;
    s.provenance = "sft_words(len=" + std::to_string(length) + ")";
    std::vector<int> w;
    w.reserve(static_cast<size_t>(length));
    // Depth-first enumeration in lexicographic order.
    auto extend = [&](auto&& self) -> void {
        if (static_cast<int>(w.size()) == length) {
            s.points.push_back(Point::word(w, k));
            return;
        }
        for (int sym = 0; sym < k; ++sym) {
            if (!w.empty() && !adj[static_cast<size_t>(w.back())][static_cast<size_t>(sym)])
                continue;
            w.push_back(sym);
            self(self);
            w.pop_back();
        }
    };
    extend(extend);
    return s;
}

WitnessSample concat_samples(const std::vector<WitnessSample>& parts) {
    WitnessSample s;
    std::string prov;
    for (const auto& p : parts) {
        s.points.insert(s.points.end(), p.points.begin(), p.points.end());
        if (!prov.empty()) prov += "+";
        prov += p.provenance;
    }
    s.provenance = prov;
    return s;
}

} // namespace entrolab
