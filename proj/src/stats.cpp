#include "dcw/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dcw {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double normal_cdf(double x, double mean, double variance) {
  return normal_cdf((x - mean) / std::sqrt(variance));
}

MeanVar mean_variance(const std::vector<double>& xs) {
  if (xs.empty()) throw std::invalid_argument("mean_variance: empty sample");
  MeanVar mv;
  for (double v : xs) mv.mean += v;
  mv.mean /= static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0;
    for (double v : xs) ss += (v - mv.mean) * (v - mv.mean);
    mv.variance = ss / static_cast<double>(xs.size() - 1);
  }
  return mv;
}

double variance_jackknife_se(const std::vector<double>& xs) {
  const auto n = static_cast<long long>(xs.size());
  if (n < 3) return 0.0;
  const MeanVar mv = mean_variance(xs);
  // Leave-one-out variances from the global sums; no O(n^2) rescan.
  double sum = 0, sumsq = 0;
  for (double v : xs) {
    sum += v;
    sumsq += v * v;
  }
  std::vector<double> loo(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double s = sum - xs[i];
    const double ss = sumsq - xs[i] * xs[i];
    const double m = s / (n - 1);
    loo[i] = (ss - (n - 1) * m * m) / (n - 2);
  }
  double acc = 0;
  for (double v : loo) acc += (v - mv.variance) * (v - mv.variance);
  return std::sqrt(acc * (n - 1) / static_cast<double>(n));
}

double ks_distance(std::vector<double> samples, double mean, double variance) {
  if (samples.empty()) throw std::invalid_argument("ks_distance: empty sample");
  if (!(variance > 0)) throw std::invalid_argument("ks_distance: variance <= 0");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = normal_cdf(samples[i], mean, variance);
    d = std::max(d, (i + 1) / n - f);
    d = std::max(d, f - i / n);
  }
  return d;
}

double fit_loglog_slope(const std::vector<double>& x,
                        const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("fit_loglog_slope: degenerate grid");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(std::abs(y[i]));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double n = static_cast<double>(x.size());
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<double> geometric_grid(double lo, double hi, int points) {
  if (points < 2 || !(lo > 0) || !(hi > lo))
    throw std::invalid_argument("geometric_grid: bad window");
  std::vector<double> out(points);
  const double step = std::log(hi / lo) / (points - 1);
  for (int i = 0; i < points; ++i) out[i] = lo * std::exp(step * i);
  return out;
}

} // namespace dcw
