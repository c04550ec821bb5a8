#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "dcw/graph.hpp"
#include "dcw/logdomain.hpp"
#include "dcw/params.hpp"

namespace dcw {

struct EnumerationOptions {
  int ceiling = 26; // refuse (never approximate) above; override to raise
  int shards = 0;   // power of two; 0 = auto (16 when N >= 16, else 1)
  int threads = 0;  // 0 = DCWLAB_THREADS env or hardware default
};

// Incremental quadratic form Q(sigma) = sum eps_{ij} sigma_i sigma_j along
// single-spin flips. Works on bit masks (bit b set = spin +1), valid for
// N <= 64 so each adjacency row/column is one word. A flip costs two AND+
// popcount pairs; the invariant "incremental == recomputed" is covered by
// tests instead of spelling the update formula into the contract.
class GrayWalker {
public:
  GrayWalker(const GraphSample& g, std::uint64_t start_mask);

  long long q() const { return q_; }
  std::uint64_t mask() const { return mask_; }
  int plus_count() const { return pc_; }

  void flip(int b);

  // Full O(N) recomputation of Q for the current mask (test oracle).
  long long recompute() const;

private:
  int n_;
  std::uint64_t mask_;
  int pc_;
  long long q_;
  std::vector<std::uint64_t> row_, col_;
  std::vector<int> pc_row_, pc_col_, diag_;
};

// Joint exact counts of (Q, magnetization) over all 2^N configurations.
// Counts are integers, so shard results merge exactly and every downstream
// log-domain quantity is bit-identical for any shard or worker count.
class SpinHistogram {
public:
  explicit SpinHistogram(int n);

  int n_sites() const { return n_; }
  long long q_offset() const { return (long long)n_ * n_; }

  std::uint64_t& cell(long long q, int plus_count) {
    return counts_[static_cast<std::size_t>(q + q_offset()) * (n_ + 1) +
                   plus_count];
  }
  std::uint64_t cell(long long q, int plus_count) const {
    return counts_[static_cast<std::size_t>(q + q_offset()) * (n_ + 1) +
                   plus_count];
  }

  void merge(const SpinHistogram& other);
  std::uint64_t total() const;

  // Visits nonzero cells in fixed (q ascending, plus_count ascending) order.
  void for_each(const std::function<void(long long q, int plus_count,
                                         std::uint64_t count)>& f) const;

private:
  int n_;
  std::vector<std::uint64_t> counts_;
};

// Gray-code enumeration of all 2^N spin configurations, sharded by fixing the
// top s spins (shards = 2^s sub-enumerations). Throws length_error above the
// ceiling.
SpinHistogram enumerate_spin_histogram(const GraphSample& g,
                                       const EnumerationOptions& opts = {});

// log Z_N(beta) from the histogram (streaming log-sum-exp, fixed cell order).
double partition_log_from_histogram(const SpinHistogram& hist,
                                    const ModelParams& params);

// log sum_sigma e^{-beta H} over all 2^N configurations.
double partition_exact_log(const GraphSample& g, const ModelParams& params,
                           const EnumerationOptions& opts = {});

// Bounded nonnegative g of |sigma|/sqrt(N), tabulated on a uniform grid with
// linear interpolation; evaluations outside [x_lo, x_hi] clamp to the ends.
struct TabulatedG {
  double x_lo = 0, x_hi = 0;
  std::vector<double> values;

  static TabulatedG from_function(const std::function<double(double)>& f,
                                  double x_lo, double x_hi, int points);
  double eval(double x) const;
  void validate() const; // nonnegative, at least 2 points
};

// log Z_N(beta, g) = log sum_sigma e^{-beta H} g(|sigma|/sqrt N); with g == 1
// identical to partition_exact_log bit for bit. g == 0 yields the explicit
// zero-partition state.
LogValue generalized_partition_log(const GraphSample& g,
                                   const ModelParams& params,
                                   const TabulatedG& gfun,
                                   const EnumerationOptions& opts = {});
LogValue generalized_partition_from_histogram(const SpinHistogram& hist,
                                              const ModelParams& params,
                                              const TabulatedG& gfun);

// log hatZ = log Z - alpha_N xi - beta_N eta (requires p < 1) and
// log tildeZ = log Z - log cosh(gamma) * total_edges: exact identities on top
// of partition_exact, never separate enumerations.
double hat_partition_log(const GraphSample& g, const ModelParams& params,
                         const EnumerationOptions& opts = {});
double tilde_partition_log(const GraphSample& g, const ModelParams& params,
                           const EnumerationOptions& opts = {});

// W_N = gamma sum_{ij} (eps_ij - p) c_ij with c_ij = sum_sigma sigma_i sigma_j
// E e^{-beta H(sigma)}. The diagonal coefficient is E Z_N; the off-diagonal
// one reduces by exchangeability to sum_k #{|sigma|=k} E_k (k^2-N)/(N(N-1)).
// O(N) classes + cached edge counts; no 2^N enumeration.
double w_statistic(const GraphSample& g, const ModelParams& params);
double w_statistic_scaled(const GraphSample& g,
                          const ModelParams& params); // W / E Z_N

// sum_sigma X(sigma) = Z_N - E Z_N - W_N, and the E Z_N-relative version.
double x_residual_sum(const GraphSample& g, const ModelParams& params,
                      const EnumerationOptions& opts = {});
double x_residual_scaled(const GraphSample& g, const ModelParams& params,
                         const EnumerationOptions& opts = {});

double free_energy_per_site(double log_z, const ModelParams& params);

struct EnumerationResult {
  double log_z = 0;
  bool hat_defined = false; // false when p = 1
  double log_z_hat = 0;
  double log_z_tilde = 0;
  double w_statistic = 0;  // W_N (raw; overflows double once log EZ > ~709)
  double w_scaled = 0;     // W_N / E Z_N
  double x_residual = 0;   // sum_sigma X(sigma) = Z - EZ - W (raw)
  double x_scaled = 0;     // sum_sigma X(sigma) / E Z_N
  double free_energy_per_site = 0;
  double xi = 0, eta = 0;  // zero when p = 1 (undefined)
  long long total_edges = 0, diag_edges = 0;
  unsigned long long n_configs = 0;
  double elapsed_seconds = 0;
};

// One enumeration pass feeding every derived quantity above.
EnumerationResult enumerate_all(const GraphSample& g, const ModelParams& params,
                                const EnumerationOptions& opts = {});

} // namespace dcw
