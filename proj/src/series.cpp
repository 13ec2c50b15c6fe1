#include "entrolab/series.hpp"

#include <cmath>

namespace entrolab {

double fit_rate(GrowthSeries& s, std::optional<std::pair<int, int>> window) {
    if (s.entries.size() < 4)
        throw DomainError("series too short: rate fit needs at least 4 entries");
    const int n_max = s.entries.back().first;
    int lo = window ? window->first : std::max(1, n_max / 2);
    int hi = window ? window->second : n_max;
    if (lo > hi) throw DomainError("fit window is empty");

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int k = 0;
    for (const auto& [n, y] : s.entries) {
        if (n < lo || n > hi) continue;
        sx += n;
        sy += y;
        sxx += static_cast<double>(n) * n;
        sxy += n * y;
        ++k;
    }
    if (k < 2) throw DomainError("fit window covers fewer than 2 entries");
    const double det = k * sxx - sx * sx;
    if (det <= 0.0) throw ComputeError("degenerate fit window");
    const double slope = (k * sxy - sx * sy) / det;
    const double intercept = (sy - slope * sx) / k;

    double rss = 0.0;
    for (const auto& [n, y] : s.entries) {
        if (n < lo || n > hi) continue;
        const double r = y - (intercept + slope * n);
        rss += r * r;
    }
    if (!std::isfinite(slope)) throw ComputeError("rate fit produced a non-finite slope");
    s.fitted_rate = slope;
    s.residual = std::sqrt(rss / k);
    s.window_lo = lo;
    s.window_hi = hi;
    return slope;
}

} // namespace entrolab
