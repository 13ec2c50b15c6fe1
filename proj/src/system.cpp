#include "entrolab/system.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace entrolab {

namespace {

void require_square(size_t rows, size_t cols_of_each, const char* what) {
    if (rows == 0) throw DomainError(std::string(what) + " must be non-empty");
    if (rows != cols_of_each) throw DomainError(std::string(what) + " must be square");
}

void check_point_space(const DynamicalSystem& sys, const Point& x) {
    const SpaceDescriptor want = sys.space();
    const SpaceDescriptor got = x.space();
    if (want.kind != got.kind || (want.kind != SpaceKind::word && want.dim != got.dim) ||
        (want.kind == SpaceKind::word && want.alphabet != got.alphabet))
        throw SpaceMismatch("wrong space: expected " + want.str() + ", got " + got.str());
}

std::vector<std::vector<long long>> int_mat_mul(const std::vector<std::vector<long long>>& a,
                                                const std::vector<std::vector<long long>>& b) {
    const size_t n = a.size();
    std::vector<std::vector<long long>> c(n, std::vector<long long>(n, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k)
            for (size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
}

std::vector<std::vector<double>> mat_mul(const std::vector<std::vector<double>>& a,
                                         const std::vector<std::vector<double>>& b) {
    const size_t n = a.size();
    std::vector<std::vector<double>> c(n, std::vector<double>(n, 0.0));
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k)
            for (size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
}

} // namespace

DynamicalSystem DynamicalSystem::identity(SpaceDescriptor space) {
    DynamicalSystem s;
    s.kind_ = SystemKind::identity;
    s.space_ = space;
    return s;
}

DynamicalSystem DynamicalSystem::linear(std::vector<std::vector<double>> matrix) {
    for (const auto& row : matrix) require_square(matrix.size(), row.size(), "linear map matrix");
    require_square(matrix.size(), matrix.size(), "linear map matrix");
    for (const auto& row : matrix)
        for (double v : row)
            if (!std::isfinite(v)) throw DomainError("linear map matrix has non-finite entry");
    DynamicalSystem s;
    s.kind_ = SystemKind::linear;
    s.space_ = {SpaceKind::euclidean, static_cast<int>(matrix.size()), 0};
    s.matrix_ = std::move(matrix);
    return s;
}

DynamicalSystem DynamicalSystem::circle_affine(long long m, double alpha) {
    if (!std::isfinite(alpha)) throw DomainError("circle map rotation must be finite");
    DynamicalSystem s;
    s.kind_ = SystemKind::circle_affine;
    s.space_ = {SpaceKind::circle, 1, 0};
    s.m_ = m;
    s.alpha_ = alpha;
    return s;
}

DynamicalSystem DynamicalSystem::tent(double slope) {
    if (!std::isfinite(slope) || slope <= 0.0) throw DomainError("tent slope must be positive");
    DynamicalSystem s;
    s.kind_ = SystemKind::tent;
    s.space_ = {SpaceKind::euclidean, 1, 0};
    s.slope_ = slope;
    return s;
}

DynamicalSystem DynamicalSystem::torus_endomorphism(std::vector<std::vector<long long>> matrix) {
    for (const auto& row : matrix)
        require_square(matrix.size(), row.size(), "torus endomorphism matrix");
    require_square(matrix.size(), matrix.size(), "torus endomorphism matrix");
    DynamicalSystem s;
    s.kind_ = SystemKind::torus_endo;
    s.space_ = {SpaceKind::torus, static_cast<int>(matrix.size()), 0};
    s.int_matrix_ = std::move(matrix);
    return s;
}

DynamicalSystem DynamicalSystem::shift_sft(std::vector<std::vector<int>> adjacency) {
    for (const auto& row : adjacency) {
        require_square(adjacency.size(), row.size(), "adjacency matrix");
        for (int v : row)
            if (v != 0 && v != 1) throw DomainError("adjacency entries must be 0 or 1");
    }
    require_square(adjacency.size(), adjacency.size(), "adjacency matrix");
    // No dead ends: every symbol needs a successor, otherwise finite words
    // would not all be truncations of points of the shift space.
    for (size_t i = 0; i < adjacency.size(); ++i)
        if (std::count(adjacency[i].begin(), adjacency[i].end(), 1) == 0)
            throw DomainError("adjacency row " + std::to_string(i) + " has no successor");
    DynamicalSystem s;
    s.kind_ = SystemKind::shift_sft;
    s.space_ = {SpaceKind::word, 1, static_cast<int>(adjacency.size())};
    s.adjacency_ = std::move(adjacency);
    return s;
}

const DynamicalSystem& DynamicalSystem::base() const {
    check(kind_ == SystemKind::iterated && base_ != nullptr, "base() requires an iterated system");
    return *base_;
}

DynamicalSystem DynamicalSystem::power(int k) const {
    if (k < 1) throw DomainError("system power requires k >= 1");
    if (k == 1) return *this;
    switch (kind_) {
        case SystemKind::identity:
            return *this;
        case SystemKind::linear: {
            auto acc = matrix_;
            for (int i = 1; i < k; ++i) acc = mat_mul(acc, matrix_);
            return linear(std::move(acc));
        }
        case SystemKind::circle_affine: {
            // T^k(x) = m^k x + alpha (m^{k-1} + ... + 1)  (mod 1)
            long long mk = 1;
            double geom = 0.0;
            for (int i = 0; i < k; ++i) {
                geom += static_cast<double>(mk);
                mk *= m_;
            }
            return circle_affine(mk, alpha_ * geom);
        }
        case SystemKind::torus_endo: {
            auto acc = int_matrix_;
            for (int i = 1; i < k; ++i) acc = int_mat_mul(acc, int_matrix_);
            return torus_endomorphism(std::move(acc));
        }
        case SystemKind::tent:
        case SystemKind::shift_sft:
        case SystemKind::iterated: {
            DynamicalSystem s;
            s.kind_ = SystemKind::iterated;
            if (kind_ == SystemKind::iterated) {
                s.base_ = base_;
                s.iterate_k_ = iterate_k_ * k;
            } else {
                s.base_ = std::make_shared<DynamicalSystem>(*this);
                s.iterate_k_ = k;
            }
            s.space_ = space_;
            return s;
        }
    }
    throw ComputeError("unhandled system kind in power()");
}

Point apply(const DynamicalSystem& sys, const Point& x) {
    check_point_space(sys, x);
    switch (sys.kind()) {
        case SystemKind::identity:
            return x;
        case SystemKind::linear: {
            const auto& m = sys.matrix();
            const auto& v = x.coords();
            std::vector<double> y(v.size(), 0.0);
            for (size_t i = 0; i < v.size(); ++i) {
                double acc = 0.0;
                for (size_t j = 0; j < v.size(); ++j) acc += m[i][j] * v[j];
                if (!std::isfinite(acc))
                    throw ComputeError("orbit overflow: linear image is not finite");
                y[i] = acc;
            }
            return Point::euclidean(std::move(y));
        }
        case SystemKind::circle_affine:
            return Point::circle(static_cast<double>(sys.multiplier()) * x.coords()[0] +
                                 sys.alpha());
        case SystemKind::tent: {
            const double t = x.coords()[0];
            return Point::euclidean({sys.slope() * std::min(t, 1.0 - t)});
        }
        case SystemKind::torus_endo: {
            const auto& m = sys.int_matrix();
            const auto& v = x.coords();
            std::vector<double> y(v.size(), 0.0);
            for (size_t i = 0; i < v.size(); ++i) {
                double acc = 0.0;
                for (size_t j = 0; j < v.size(); ++j)
                    acc += static_cast<double>(m[i][j]) * v[j];
                y[i] = acc;
            }
            return Point::torus(std::move(y));
        }
        case SystemKind::shift_sft: {
            const auto& w = x.symbols();
            const auto& adj = sys.adjacency();
            for (size_t i = 0; i + 1 < w.size(); ++i)
                if (!adj[w[i]][w[i + 1]])
                    throw SpaceMismatch("wrong space: word is not admissible for this shift");
            if (w.size() < 2)
                throw DomainError("shift needs a word of length >= 2");
            return Point::word(std::vector<int>(w.begin() + 1, w.end()), x.alphabet());
        }
        case SystemKind::iterated: {
            Point y = x;
            for (int i = 0; i < sys.iterate_count(); ++i) y = apply(sys.base(), y);
            return y;
        }
    }
    throw ComputeError("unhandled system kind in apply()");
}

std::vector<Point> orbit(const DynamicalSystem& sys, const Point& x, int n) {
    if (n < 1) throw DomainError("orbit length must be >= 1");
    std::vector<Point> out;
    out.reserve(static_cast<size_t>(n));
    out.push_back(x);
    for (int i = 1; i < n; ++i) out.push_back(apply(sys, out.back()));
    return out;
}

std::uint64_t admissible_words(const DynamicalSystem& sft, int n) {
    if (sft.kind() != SystemKind::shift_sft)
        throw DomainError("admissible_words requires a shift system");
    if (n < 1) throw DomainError("word length must be >= 1");
    const auto& adj = sft.adjacency();
    const size_t k = adj.size();
    std::vector<std::uint64_t> cnt(k, 1); // words of length 1 ending at each symbol
    for (int step = 1; step < n; ++step) {
        std::vector<std::uint64_t> nxt(k, 0);
        for (size_t i = 0; i < k; ++i) {
            if (cnt[i] == 0) continue;
            for (size_t j = 0; j < k; ++j)
                if (adj[i][j]) {
                    nxt[j] += cnt[i];
                    if (nxt[j] > (std::uint64_t(1) << 62))
                        throw ComputeError("admissible word count overflow");
                }
        }
        cnt.swap(nxt);
    }
    std::uint64_t total = 0;
    for (std::uint64_t c : cnt) total += c;
    return total;
}

double sft_entropy_exact(const DynamicalSystem& sft) {
    if (sft.kind() != SystemKind::shift_sft)
        throw DomainError("sft_entropy_exact requires a shift system");
    const auto& adj = sft.adjacency();
    const size_t k = adj.size();

    // Irreducibility: symbol 0 reaches everything and everything reaches it.
    auto reach = [&](bool forward) {
        std::vector<char> seen(k, 0);
        std::vector<size_t> stack{0};
        seen[0] = 1;
        while (!stack.empty()) {
            size_t u = stack.back();
            stack.pop_back();
            for (size_t v = 0; v < k; ++v) {
                bool edge = forward ? adj[u][v] : adj[v][u];
                if (edge && !seen[v]) {
                    seen[v] = 1;
                    stack.push_back(v);
                }
            }
        }
        return std::count(seen.begin(), seen.end(), 1) == static_cast<long>(k);
    };
    if (!reach(true) || !reach(false))
        throw DomainError("sft_entropy_exact requires an irreducible adjacency");

    // Power iteration on A + I; the shift by I removes periodicity without
    // moving the Perron vector, and rho(A + I) = rho(A) + 1.
    std::vector<double> v(k, 1.0), w(k, 0.0);
    double lambda = 0.0;
    for (int it = 0; it < 200000; ++it) {
        for (size_t i = 0; i < k; ++i) {
            double acc = v[i];
            for (size_t j = 0; j < k; ++j)
                if (adj[i][j]) acc += v[j];
            w[i] = acc;
        }
        double norm = 0.0;
        for (double x : w) norm = std::max(norm, x);
        for (size_t i = 0; i < k; ++i) w[i] /= norm;
        // Rayleigh-style estimate from the ratio on the largest component.
        double next = norm;
        v.swap(w);
        if (it > 2 && std::fabs(next - lambda) <= 1e-10 * std::max(1.0, std::fabs(next))) {
            lambda = next;
            break;
        }
        lambda = next;
    }
    if (lambda <= 1.0) throw ComputeError("power iteration failed to find Perron root");
    return std::log(lambda - 1.0);
}

} // namespace entrolab
