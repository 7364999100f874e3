#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "apollo/arithmetic.hpp"
#include "apollo/orbit.hpp"

namespace apollo {

// McMullen's numerical value for the residual dimension of an Apollonian
// packing; the growth exponent of N(T).
inline constexpr double kResidualDimension = 1.30568;

struct FitWindow {
    Int min_t = 0;  // 0: defaults to the top two decades of the grid
    Int max_t = 0;
};

struct FitResult {
    double alpha_hat = 0;      // slope of log N against log T
    double c_hat = 0;          // exp(intercept)
    double rms_residual = 0;   // in log space
    std::size_t first_index = 0;
    std::size_t last_index = 0;  // inclusive
    std::size_t points = 0;
};

// Ordinary least squares of log N on log T over the window (indices with
// N > 0). Needs at least 3 usable points with distinct thresholds.
FitResult fit_exponent(const CountSeries& series, const FitWindow& window = {});

// CSV with header "T,N,N2,pi,pi2".
void write_series_csv(std::ostream& os, const CountSeries& series);
CountSeries read_series_csv(std::istream& is);

// JSON bundle: counts, fit, optional ratio and density tables, and the
// verdicts of the built-in invariants (pair identity, monotonicity).
std::string report_json(const CountSeries& series, const FitResult* fit,
                        const std::vector<RatioRow>* ratios, const std::string& extra_json = "");

}  // namespace apollo
