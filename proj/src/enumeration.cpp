#include "dcw/enumeration.hpp"

#include <bit>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "dcw/moments.hpp"
#include "dcw/parallel.hpp"

namespace dcw {

// --- GrayWalker --------------------------------------------------------------

GrayWalker::GrayWalker(const GraphSample& g, std::uint64_t start_mask)
    : n_(g.n_sites()), mask_(start_mask) {
  if (n_ > 64)
    throw std::length_error("GrayWalker supports at most 64 sites");
  row_.resize(n_);
  col_.resize(n_);
  pc_row_.resize(n_);
  pc_col_.resize(n_);
  diag_.resize(n_);
  for (int i = 0; i < n_; ++i) {
    row_[i] = g.row(i)[0];
    col_[i] = g.col(i)[0];
    pc_row_[i] = std::popcount(row_[i]);
    pc_col_[i] = std::popcount(col_[i]);
    diag_[i] = g.edge(i, i) ? 1 : 0;
  }
  pc_ = std::popcount(mask_);
  q_ = recompute();
}

long long GrayWalker::recompute() const {
  long long q = 0;
  for (int i = 0; i < n_; ++i) {
    const long long rowsum =
        2LL * std::popcount(row_[i] & mask_) - pc_row_[i];
    q += ((mask_ >> i) & 1) ? rowsum : -rowsum;
  }
  return q;
}

void GrayWalker::flip(int b) {
  const int sb = (mask_ >> b) & 1 ? 1 : -1;
  const long long srow = 2LL * std::popcount(row_[b] & mask_) - pc_row_[b];
  const long long scol = 2LL * std::popcount(col_[b] & mask_) - pc_col_[b];
  q_ += -2LL * sb * (srow + scol) + 4LL * diag_[b];
  mask_ ^= 1ULL << b;
  pc_ += sb > 0 ? -1 : 1;
}

// --- SpinHistogram -------------------------------------------------------------

SpinHistogram::SpinHistogram(int n)
    : n_(n),
      counts_(static_cast<std::size_t>(2LL * n * n + 1) * (n + 1), 0) {}

void SpinHistogram::merge(const SpinHistogram& other) {
  if (other.n_ != n_) throw std::invalid_argument("histogram merge: size");
  for (std::size_t i = 0; i < counts_.size(); ++i)
    counts_[i] += other.counts_[i];
}

std::uint64_t SpinHistogram::total() const {
  std::uint64_t t = 0;
  for (auto c : counts_) t += c;
  return t;
}

void SpinHistogram::for_each(
    const std::function<void(long long, int, std::uint64_t)>& f) const {
  const long long off = q_offset();
  for (long long q = -off; q <= off; ++q)
    for (int pc = 0; pc <= n_; ++pc) {
      const std::uint64_t c = cell(q, pc);
      if (c) f(q, pc, c);
    }
}

// --- enumeration ---------------------------------------------------------------

namespace {

int resolve_shards(int n, int requested) {
  if (requested == 0) return n >= 16 ? 16 : 1;
  if (requested < 1 || (requested & (requested - 1)) != 0)
    throw std::invalid_argument("shards must be a power of two");
  if ((1LL << n) < requested)
    throw std::invalid_argument("more shards than configurations");
  return requested;
}

void check_ceiling(int n, const EnumerationOptions& opts) {
  if (n > opts.ceiling)
    throw std::length_error(
        "N exceeds the enumeration ceiling (" + std::to_string(opts.ceiling) +
        "); raise it explicitly to proceed");
}

} // namespace

SpinHistogram enumerate_spin_histogram(const GraphSample& g,
                                       const EnumerationOptions& opts) {
  const int n = g.n_sites();
  check_ceiling(n, opts);
  const int shards = resolve_shards(n, opts.shards);
  const int s = std::countr_zero(static_cast<unsigned>(shards));
  const int nl = n - s; // Gray-enumerated low spins
  const int threads = resolve_threads(opts.threads);

  // Shards are assigned to workers round-robin; each worker fills its own
  // integer histogram and the merge is exact addition, so the result does not
  // depend on either the shard count or the worker count.
  const int workers = std::min(threads, shards);
  std::vector<SpinHistogram> locals;
  locals.reserve(workers);
  for (int t = 0; t < workers; ++t) locals.emplace_back(n);
  {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t)
      pool.emplace_back([&, t] {
        SpinHistogram& hist = locals[t];
        for (int shard = t; shard < shards; shard += workers) {
          const std::uint64_t high = static_cast<std::uint64_t>(shard) << nl;
          GrayWalker walker(g, high);
          hist.cell(walker.q(), walker.plus_count())++;
          const std::uint64_t count = 1ULL << nl;
          for (std::uint64_t i = 1; i < count; ++i) {
            walker.flip(std::countr_zero(i));
            hist.cell(walker.q(), walker.plus_count())++;
          }
        }
      });
    for (auto& th : pool) th.join();
  }
  SpinHistogram result(n);
  for (const auto& h : locals) result.merge(h);
  return result;
}

double partition_log_from_histogram(const SpinHistogram& hist,
                                    const ModelParams& params) {
  const double g = params.gamma();
  LogSumExp acc;
  hist.for_each([&](long long q, int, std::uint64_t c) {
    acc.add(std::log(static_cast<double>(c)) + g * static_cast<double>(q));
  });
  return acc.value();
}

double partition_exact_log(const GraphSample& g, const ModelParams& params,
                           const EnumerationOptions& opts) {
  params.validate();
  return partition_log_from_histogram(enumerate_spin_histogram(g, opts),
                                      params);
}

// --- generalized partition -----------------------------------------------------

TabulatedG TabulatedG::from_function(const std::function<double(double)>& f,
                                     double x_lo, double x_hi, int points) {
  if (points < 2 || !(x_hi > x_lo))
    throw std::invalid_argument("TabulatedG: bad grid");
  TabulatedG g;
  g.x_lo = x_lo;
  g.x_hi = x_hi;
  g.values.resize(points);
  for (int i = 0; i < points; ++i)
    g.values[i] = f(x_lo + (x_hi - x_lo) * i / (points - 1));
  g.validate();
  return g;
}

void TabulatedG::validate() const {
  if (values.size() < 2) throw std::invalid_argument("TabulatedG: < 2 points");
  for (double v : values)
    if (!(v >= 0.0))
      throw std::invalid_argument("TabulatedG: negative or NaN value");
}

double TabulatedG::eval(double x) const {
  if (x <= x_lo) return values.front();
  if (x >= x_hi) return values.back();
  const double t = (x - x_lo) / (x_hi - x_lo) *
                   static_cast<double>(values.size() - 1);
  const auto i = static_cast<std::size_t>(t);
  const double frac = t - static_cast<double>(i);
  return values[i] * (1.0 - frac) + values[i + 1] * frac;
}

LogValue generalized_partition_from_histogram(const SpinHistogram& hist,
                                              const ModelParams& params,
                                              const TabulatedG& gfun) {
  gfun.validate();
  const double g = params.gamma();
  const double sqrt_n = std::sqrt(static_cast<double>(params.n_sites));
  const int n = params.n_sites;
  // g depends on sigma only through the magnetization; evaluate once per class.
  std::vector<double> log_g(n + 1);
  for (int pc = 0; pc <= n; ++pc)
    log_g[pc] = std::log(gfun.eval((2.0 * pc - n) / sqrt_n));
  LogSumExp acc;
  hist.for_each([&](long long q, int pc, std::uint64_t c) {
    if (log_g[pc] == -std::numeric_limits<double>::infinity()) return;
    acc.add(std::log(static_cast<double>(c)) + g * static_cast<double>(q) +
            log_g[pc]);
  });
  LogValue out;
  out.is_zero = acc.empty();
  out.log_value = acc.value();
  return out;
}

LogValue generalized_partition_log(const GraphSample& g,
                                   const ModelParams& params,
                                   const TabulatedG& gfun,
                                   const EnumerationOptions& opts) {
  params.validate();
  return generalized_partition_from_histogram(
      enumerate_spin_histogram(g, opts), params, gfun);
}

// --- hat / tilde ---------------------------------------------------------------

double hat_partition_log(const GraphSample& g, const ModelParams& params,
                         const EnumerationOptions& opts) {
  params.require_p_below_one("hat_partition");
  const double log_z = partition_exact_log(g, params, opts);
  const auto c = asymptotic_constants(params);
  const auto stats = xi_eta(g, params);
  return log_z - c.alpha_n * stats.xi - c.beta_n * stats.eta;
}

double tilde_partition_log(const GraphSample& g, const ModelParams& params,
                           const EnumerationOptions& opts) {
  const double log_z = partition_exact_log(g, params, opts);
  return log_z -
         std::log(std::cosh(params.gamma())) *
             static_cast<double>(g.total_edges());
}

// --- W statistic and the X residual ---------------------------------------------

namespace {

// (diagonal coefficient, off-diagonal coefficient / E Z, log E Z).
struct WCoefficients {
  double log_ez;
  double c_off_rel;
};

WCoefficients w_coefficients(const ModelParams& params) {
  const int n = params.n_sites;
  const double log_ez = expected_partition_log(params);
  double c_off_rel = 0.0;
  if (n > 1) {
    const double lgn = std::lgamma(n + 1.0);
    for (int k = -n; k <= n; k += 2) {
      const int j = (n + k) / 2;
      const double log_cnt =
          lgn - std::lgamma(j + 1.0) - std::lgamma(n - j + 1.0);
      const double w =
          std::exp(log_cnt + expected_boltzmann_log(params, k) - log_ez);
      c_off_rel += w * (static_cast<double>(k) * k - n) /
                   (static_cast<double>(n) * (n - 1));
    }
  }
  return {log_ez, c_off_rel};
}

} // namespace

double w_statistic_scaled(const GraphSample& g, const ModelParams& params) {
  params.validate();
  if (g.n_sites() != params.n_sites)
    throw std::invalid_argument("w_statistic: dimension mismatch");
  const double n = params.n_sites;
  const double p = params.edge_prob;
  const auto co = w_coefficients(params);
  const double diag_centered = static_cast<double>(g.diag_edges()) - n * p;
  const double off_centered =
      static_cast<double>(g.total_edges() - g.diag_edges()) - n * (n - 1) * p;
  return params.gamma() * (diag_centered + off_centered * co.c_off_rel);
}

double w_statistic(const GraphSample& g, const ModelParams& params) {
  const auto co = w_coefficients(params);
  return std::exp(co.log_ez) * w_statistic_scaled(g, params);
}

double x_residual_scaled(const GraphSample& g, const ModelParams& params,
                         const EnumerationOptions& opts) {
  const double log_z = partition_exact_log(g, params, opts);
  const double log_ez = expected_partition_log(params);
  return std::expm1(log_z - log_ez) - w_statistic_scaled(g, params);
}

double x_residual_sum(const GraphSample& g, const ModelParams& params,
                      const EnumerationOptions& opts) {
  return std::exp(expected_partition_log(params)) *
         x_residual_scaled(g, params, opts);
}

double free_energy_per_site(double log_z, const ModelParams& params) {
  if (!std::isfinite(log_z))
    throw std::invalid_argument("free_energy_per_site: log_z not finite");
  return -log_z / (params.beta * params.n_sites);
}

EnumerationResult enumerate_all(const GraphSample& g,
                                const ModelParams& params,
                                const EnumerationOptions& opts) {
  params.validate();
  const auto t0 = std::chrono::steady_clock::now();
  const auto hist = enumerate_spin_histogram(g, opts);
  EnumerationResult r;
  r.log_z = partition_log_from_histogram(hist, params);
  r.log_z_tilde = r.log_z - std::log(std::cosh(params.gamma())) *
                                static_cast<double>(g.total_edges());
  r.hat_defined = params.edge_prob < 1.0;
  if (r.hat_defined) {
    const auto c = asymptotic_constants(params);
    const auto stats = xi_eta(g, params);
    r.xi = stats.xi;
    r.eta = stats.eta;
    r.log_z_hat = r.log_z - c.alpha_n * stats.xi - c.beta_n * stats.eta;
  }
  const double log_ez = expected_partition_log(params);
  r.w_scaled = w_statistic_scaled(g, params);
  r.x_scaled = std::expm1(r.log_z - log_ez) - r.w_scaled;
  r.w_statistic = std::exp(log_ez) * r.w_scaled;
  r.x_residual = std::exp(log_ez) * r.x_scaled;
  r.free_energy_per_site = free_energy_per_site(r.log_z, params);
  r.total_edges = g.total_edges();
  r.diag_edges = g.diag_edges();
  r.n_configs = 1ULL << g.n_sites();
  r.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return r;
}

} // namespace dcw
