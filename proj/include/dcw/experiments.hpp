#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dcw/enumeration.hpp"
#include "dcw/graph.hpp"
#include "dcw/params.hpp"

namespace dcw {

enum class TheoremId { T1, T2a, T2b, T3, T4 };
const char* theorem_name(TheoremId id);
TheoremId theorem_from_name(const std::string& name);

// How p(N) is derived for a regime, plus parameter validation against the
// regime's sufficient condition:
//   T1  : p constant (default 0.5) or exponent > -1/2   (p^2 N -> infinity)
//   T2a : p = c / sqrt(N), c > 0                         (p sqrt N -> c)
//   T2b : p = N^e, e in (-2/3, -1/2)                     (p^2 N -> 0, p^3 N^2 -> inf)
//   T3  : p = (c / N^2)^{1/3}, c > 0                     (p^3 N^2 -> c)
//   T4  : p = N^e, e in (-1, -2/3)                       (p^3 N^2 -> 0, Np -> inf)
struct RegimeSpec {
  TheoremId theorem = TheoremId::T1;
  std::optional<double> c_value;    // T2a / T3
  std::optional<double> p_exponent; // T1 / T2b / T4
  std::optional<double> p_fixed;    // override: use this p verbatim

  double resolve_p(int n) const;
  void validate() const;
  // The sufficient condition the chosen coupling satisfies, for reports.
  std::string coupling_description() const;
};

// The theorems' statistics, computed from log Z and the exact E Z_N
// (normalization uses the exact expectation, not its asymptotic form):
//   T1 : sqrt(pN/(1-p)) (Z/EZ - 1)
//   T2a: N^{1/4} (Z/EZ - 1)
//   T2b: N p^{3/2} (Z/EZ - 1)
//   T3 : log Z - N log 2 - beta^2(1-p)/(8p) + log(1-beta)/2 + beta^4/(192 c)
//   T4 : N p^{3/2} (log Z - N log 2 - N^2 p log cosh(beta/(2Np)))
double theorem_statistic(TheoremId id, double log_z, double log_ez,
                         const ModelParams& params, double c_value = 1.0);

// Limiting Gaussian (mean, variance) per theorem; T3's statistic as defined
// above is already centered. beta < 1 required.
struct GaussianLimit {
  double mean = 0;
  double variance = 0;
};
GaussianLimit predicted_limit(TheoremId id, double beta, double c_value = 1.0);

struct TrialRecord {
  std::uint64_t seed = 0;
  double statistic = 0;
  double log_z = 0;
  long long total_edges = 0;
  long long diag_edges = 0;
};

struct ExperimentReport {
  TheoremId theorem = TheoremId::T1;
  int n_sites = 0;
  double edge_prob = 0;
  double beta = 0;
  double c_value = 1.0;
  std::string coupling;
  std::uint64_t master_seed = 0;
  int n_trials = 0;
  double empirical_mean = 0;
  double empirical_variance = 0;
  double variance_jackknife_se = 0;
  double predicted_mean = 0;
  double predicted_variance = 0;
  double ks_statistic = 0;        // against the predicted Gaussian
  double ks_fitted = 0;           // against N(empirical mean, empirical var)
  bool exact_variance_available = false;
  double exact_statistic_variance = 0; // class sums; delta-method for T3/T4
  std::vector<TrialRecord> trials;
};

struct ExperimentOptions {
  EnumerationOptions enumeration;
  int cubic_ceiling = 800;
  int threads = 0;
  bool keep_trials = true;
};

// Trial i uses seed derive_seed(master_seed, i); trials run in parallel and
// aggregate in trial order, so reports are identical for any worker count.
ExperimentReport run_clt_trials(const RegimeSpec& spec, int n, double beta,
                                int n_trials, std::uint64_t master_seed,
                                const ExperimentOptions& opts = {});

// Exactly scaled variances against the theorem constants across an N grid.
enum class TrendKind {
  T1,      // (pN/(1-p)) Var(Z/EZ)            -> beta^2/4
  T2b,     // (N p^{3/2})^2 Var(Z/EZ)         -> beta^4/64
  VarSum,  // Np Var(hatZ/E hatZ)             -> 0
  VW,      // Var(W) 4Np / (beta^2 (1-p) (EZ)^2) -> 1
};
const char* trend_name(TrendKind kind);

struct TrendRow {
  int n_sites;
  double edge_prob;
  double scaled_variance;
  double predicted;   // limit value (0 for VarSum)
  double gap;         // |scaled - predicted| (relative when predicted != 0)
};

std::vector<TrendRow> variance_trend(TrendKind kind,
                                     const std::vector<int>& n_list,
                                     double beta, const RegimeSpec& coupling,
                                     const ExperimentOptions& opts = {});

// theta_N = alpha_N xi-bar + beta_N eta-bar from centered edge statistics.
double theta_statistic(const GraphSample& g, const ModelParams& params);

// Exact finite-N Var(N p^{3/2} theta_N): the pre-limit sum
//   (N^2-N) (beta^2(1-2p)/(8 N sqrt p))^2 p(1-p)
//   + N (beta^2(1-2p)/(8 N sqrt p) + beta sqrt p / 2)^2 p(1-p).
double theta_variance_finite(const ModelParams& params);

// Its limit when N p^2 -> c: beta^4/64 + beta^2 c / 4.
double theta_variance_limit(double beta, double c);

// e^{theta} - 1 - theta (exact, via expm1).
double linearization_gap(const GraphSample& g, const ModelParams& params);

} // namespace dcw
