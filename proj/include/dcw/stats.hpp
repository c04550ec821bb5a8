#pragma once

#include <vector>

namespace dcw {

// Standard normal CDF through std::erfc; good to ~1e-15 everywhere, far
// inside the 1e-10 the KS comparisons need.
double normal_cdf(double x);
double normal_cdf(double x, double mean, double variance);

struct MeanVar {
  double mean = 0;
  double variance = 0; // unbiased (ddof = 1)
};
MeanVar mean_variance(const std::vector<double>& xs);

// Delete-1 jackknife standard error of the unbiased sample variance.
double variance_jackknife_se(const std::vector<double>& xs);

// Kolmogorov-Smirnov sup distance between the empirical CDF of `samples` and
// the Gaussian with the given parameters.
double ks_distance(std::vector<double> samples, double mean, double variance);

// Least-squares slope of log|y| against log x. Used by the series-order fits.
double fit_loglog_slope(const std::vector<double>& x,
                        const std::vector<double>& y);

// Geometric grid of `points` values from lo to hi inclusive.
std::vector<double> geometric_grid(double lo, double hi, int points);

} // namespace dcw
