#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "entrolab/errors.hpp"

namespace entrolab {

// A growth record (n, log_count) for n = 1..n_max together with the fitted
// exponential rate. log_count holds log N(A^n), log |E_n| or H_mu(C^n)
// depending on the producer; h_n = log_count / n is derived on output.
struct GrowthSeries {
    std::vector<std::pair<int, double>> entries;
    double fitted_rate = 0.0;
    double residual = 0.0; // RMS residual of the fit
    int window_lo = 0;
    int window_hi = 0;
    std::string method; // producer tag, e.g. "separated", "min_subcover"
    bool exact = true;  // false once any entry came from a flagged greedy count
};

// Least-squares slope of log_count against n over the tail window
// [n_max/2, n_max] by default, or an explicit inclusive window. Stores slope,
// window and residual in the series and returns the slope. Requires at least
// 4 entries overall and 2 inside the window.
double fit_rate(GrowthSeries& s,
                std::optional<std::pair<int, int>> window = std::nullopt);

} // namespace entrolab
