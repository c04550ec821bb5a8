#include "dcw/experiments.hpp"

#include <cmath>
#include <stdexcept>

#include "dcw/moments.hpp"
#include "dcw/parallel.hpp"
#include "dcw/rng.hpp"
#include "dcw/stats.hpp"

namespace dcw {

const char* theorem_name(TheoremId id) {
  switch (id) {
    case TheoremId::T1: return "T1";
    case TheoremId::T2a: return "T2a";
    case TheoremId::T2b: return "T2b";
    case TheoremId::T3: return "T3";
    case TheoremId::T4: return "T4";
  }
  return "?";
}

TheoremId theorem_from_name(const std::string& name) {
  if (name == "T1") return TheoremId::T1;
  if (name == "T2a") return TheoremId::T2a;
  if (name == "T2b") return TheoremId::T2b;
  if (name == "T3") return TheoremId::T3;
  if (name == "T4") return TheoremId::T4;
  throw std::invalid_argument("unknown theorem id: " + name);
}

void RegimeSpec::validate() const {
  if (p_fixed) {
    if (!(*p_fixed > 0.0) || *p_fixed > 1.0)
      throw std::invalid_argument("regime: fixed p outside (0,1]");
    return;
  }
  switch (theorem) {
    case TheoremId::T1:
      if (p_exponent && !(*p_exponent > -0.5))
        throw std::invalid_argument("T1 needs exponent > -1/2 (p^2 N -> inf)");
      break;
    case TheoremId::T2a:
      if (c_value && !(*c_value > 0))
        throw std::invalid_argument("T2a needs c > 0");
      break;
    case TheoremId::T2b:
      if (p_exponent &&
          !(*p_exponent > -2.0 / 3.0 && *p_exponent < -0.5))
        throw std::invalid_argument("T2b needs exponent in (-2/3, -1/2)");
      break;
    case TheoremId::T3:
      if (c_value && !(*c_value > 0))
        throw std::invalid_argument("T3 needs c > 0");
      break;
    case TheoremId::T4:
      if (p_exponent && !(*p_exponent > -1.0 && *p_exponent < -2.0 / 3.0))
        throw std::invalid_argument(
            "T4 needs exponent in (-1, -2/3) (p^3 N^2 -> 0, Np -> inf)");
      break;
  }
}

double RegimeSpec::resolve_p(int n) const {
  validate();
  if (p_fixed) return *p_fixed;
  const double nn = n;
  switch (theorem) {
    case TheoremId::T1:
      return p_exponent ? std::pow(nn, *p_exponent) : 0.5;
    case TheoremId::T2a:
      return (c_value ? *c_value : 1.0) / std::sqrt(nn);
    case TheoremId::T2b:
      return std::pow(nn, p_exponent ? *p_exponent : -0.55);
    case TheoremId::T3:
      return std::cbrt((c_value ? *c_value : 1.0) / (nn * nn));
    case TheoremId::T4:
      return std::pow(nn, p_exponent ? *p_exponent : -0.8);
  }
  throw std::logic_error("unreachable");
}

std::string RegimeSpec::coupling_description() const {
  if (p_fixed) return "p fixed at " + std::to_string(*p_fixed);
  switch (theorem) {
    case TheoremId::T1:
      return p_exponent ? "p = N^" + std::to_string(*p_exponent) +
                              " (p^2 N -> infinity)"
                        : "p = 0.5 (p^2 N -> infinity)";
    case TheoremId::T2a:
      return "p = c/sqrt(N), c = " + std::to_string(c_value ? *c_value : 1.0);
    case TheoremId::T2b:
      return "p = N^" + std::to_string(p_exponent ? *p_exponent : -0.55) +
             " (p^2 N -> 0, p^3 N^2 -> infinity)";
    case TheoremId::T3:
      return "p = (c/N^2)^{1/3}, c = " +
             std::to_string(c_value ? *c_value : 1.0);
    case TheoremId::T4:
      return "p = N^" + std::to_string(p_exponent ? *p_exponent : -0.8) +
             " (p^3 N^2 -> 0, Np -> infinity)";
  }
  return "";
}

double theorem_statistic(TheoremId id, double log_z, double log_ez,
                         const ModelParams& params, double c_value) {
  const double n = params.n_sites, p = params.edge_prob, b = params.beta;
  switch (id) {
    case TheoremId::T1:
      params.require_p_below_one("T1 statistic");
      return std::sqrt(p * n / (1.0 - p)) * std::expm1(log_z - log_ez);
    case TheoremId::T2a:
      return std::pow(n, 0.25) * std::expm1(log_z - log_ez);
    case TheoremId::T2b:
      return n * std::pow(p, 1.5) * std::expm1(log_z - log_ez);
    case TheoremId::T3:
      return log_z - n * std::log(2.0) - b * b * (1.0 - p) / (8.0 * p) +
             0.5 * std::log(1.0 - b) + b * b * b * b / (192.0 * c_value);
    case TheoremId::T4:
      return n * std::pow(p, 1.5) *
             (log_z - n * std::log(2.0) -
              n * n * p * std::log(std::cosh(params.gamma())));
  }
  throw std::invalid_argument("unknown theorem id");
}

GaussianLimit predicted_limit(TheoremId id, double beta, double c_value) {
  if (!(beta > 0.0 && beta < 1.0))
    throw std::invalid_argument("predicted_limit: needs 0 < beta < 1");
  const double b2 = beta * beta;
  const double b4 = b2 * b2;
  switch (id) {
    case TheoremId::T1: return {0.0, b2 / 4.0};
    case TheoremId::T2a:
      if (!(c_value > 0)) throw std::invalid_argument("T2a needs c > 0");
      return {0.0, b2 / (4.0 * c_value * c_value) +
                       b4 / (64.0 * c_value * c_value * c_value)};
    case TheoremId::T2b: return {0.0, b4 / 64.0};
    case TheoremId::T3:
      if (!(c_value > 0)) throw std::invalid_argument("T3 needs c > 0");
      return {0.0, b4 / (64.0 * c_value)};
    case TheoremId::T4: return {0.0, b4 / 64.0};
  }
  throw std::invalid_argument("unknown theorem id");
}

ExperimentReport run_clt_trials(const RegimeSpec& spec, int n, double beta,
                                int n_trials, std::uint64_t master_seed,
                                const ExperimentOptions& opts) {
  if (n_trials < 2)
    throw std::invalid_argument("run_clt_trials: need at least 2 trials");
  const double p = spec.resolve_p(n);
  const ModelParams params(n, p, beta);
  params.require_high_temperature();
  const double c = spec.c_value ? *spec.c_value : 1.0;
  const double log_ez = expected_partition_log(params);

  ExperimentReport rep;
  rep.theorem = spec.theorem;
  rep.n_sites = n;
  rep.edge_prob = p;
  rep.beta = beta;
  rep.c_value = c;
  rep.coupling = spec.coupling_description();
  rep.master_seed = master_seed;
  rep.n_trials = n_trials;

  std::vector<TrialRecord> trials(n_trials);
  EnumerationOptions enum_opts = opts.enumeration;
  enum_opts.threads = 1; // parallelism lives at the trial level
  parallel_for_index(n_trials, opts.threads, [&](long long i) {
    TrialRecord& t = trials[i];
    t.seed = derive_seed(master_seed, static_cast<std::uint64_t>(i));
    const GraphSample g = sample_graph(params, t.seed);
    t.log_z = partition_exact_log(g, params, enum_opts);
    t.statistic = theorem_statistic(spec.theorem, t.log_z, log_ez, params, c);
    t.total_edges = g.total_edges();
    t.diag_edges = g.diag_edges();
  });

  std::vector<double> stats(n_trials);
  for (int i = 0; i < n_trials; ++i) stats[i] = trials[i].statistic;
  const MeanVar mv = mean_variance(stats);
  rep.empirical_mean = mv.mean;
  rep.empirical_variance = mv.variance;
  rep.variance_jackknife_se = dcw::variance_jackknife_se(stats);
  const GaussianLimit lim = predicted_limit(spec.theorem, beta, c);
  rep.predicted_mean = lim.mean;
  rep.predicted_variance = lim.variance;
  rep.ks_statistic = ks_distance(stats, lim.mean, lim.variance);
  rep.ks_fitted = ks_distance(stats, mv.mean, mv.variance);

  if (n <= opts.cubic_ceiling) {
    VarianceOptions vopts;
    vopts.cubic_ceiling = opts.cubic_ceiling;
    vopts.threads = opts.threads;
    const double var_z = exact_variance_partition(params, vopts);
    double scale = 0;
    switch (spec.theorem) {
      case TheoremId::T1: scale = std::sqrt(p * n / (1.0 - p)); break;
      case TheoremId::T2a: scale = std::pow(double(n), 0.25); break;
      case TheoremId::T2b: scale = n * std::pow(p, 1.5); break;
      // For the log statistics the class-sum value is the delta-method
      // estimate Var(log Z) ~ Var(Z/EZ).
      case TheoremId::T3: scale = 1.0; break;
      case TheoremId::T4: scale = n * std::pow(p, 1.5); break;
    }
    rep.exact_statistic_variance = scale * scale * var_z;
    rep.exact_variance_available = true;
  }
  if (opts.keep_trials) rep.trials = std::move(trials);
  return rep;
}

const char* trend_name(TrendKind kind) {
  switch (kind) {
    case TrendKind::T1: return "T1";
    case TrendKind::T2b: return "T2b";
    case TrendKind::VarSum: return "var-sum";
    case TrendKind::VW: return "vw";
  }
  return "?";
}

std::vector<TrendRow> variance_trend(TrendKind kind,
                                     const std::vector<int>& n_list,
                                     double beta, const RegimeSpec& coupling,
                                     const ExperimentOptions& opts) {
  std::vector<TrendRow> rows;
  for (int n : n_list) {
    const double p = coupling.resolve_p(n);
    const ModelParams params(n, p, beta);
    VarianceOptions vopts;
    vopts.cubic_ceiling = opts.cubic_ceiling;
    vopts.threads = opts.threads;
    TrendRow row;
    row.n_sites = n;
    row.edge_prob = p;
    switch (kind) {
      case TrendKind::T1:
        row.scaled_variance =
            p * n / (1.0 - p) * exact_variance_partition(params, vopts);
        row.predicted = beta * beta / 4.0;
        break;
      case TrendKind::T2b: {
        const double s = n * std::pow(p, 1.5);
        row.scaled_variance = s * s * exact_variance_partition(params, vopts);
        row.predicted = std::pow(beta, 4.0) / 64.0;
        break;
      }
      case TrendKind::VarSum:
        row.scaled_variance = n * p * exact_variance_hatZ(params, vopts);
        row.predicted = 0.0;
        break;
      case TrendKind::VW:
        row.scaled_variance = exact_variance_W(params, vopts) * 4.0 * n * p /
                              (beta * beta * (1.0 - p));
        row.predicted = 1.0;
        break;
    }
    row.gap = row.predicted != 0.0
                  ? std::abs(row.scaled_variance - row.predicted) /
                        std::abs(row.predicted)
                  : row.scaled_variance;
    rows.push_back(row);
  }
  return rows;
}

double theta_statistic(const GraphSample& g, const ModelParams& params) {
  params.require_p_below_one("theta_statistic");
  const auto c = asymptotic_constants(params);
  const auto stats = xi_eta(g, params);
  return c.alpha_n * stats.xi_centered + c.beta_n * stats.eta_centered;
}

double theta_variance_finite(const ModelParams& params) {
  params.require_p_below_one("theta_variance_finite");
  const double n = params.n_sites, p = params.edge_prob, b = params.beta;
  const double off_coef = b * b * (1.0 - 2.0 * p) / (8.0 * n * std::sqrt(p));
  const double diag_coef = off_coef + b * std::sqrt(p) / 2.0;
  return (n * n - n) * off_coef * off_coef * p * (1.0 - p) +
         n * diag_coef * diag_coef * p * (1.0 - p);
}

double theta_variance_limit(double beta, double c) {
  if (!(c >= 0)) throw std::invalid_argument("theta limit: c must be >= 0");
  return std::pow(beta, 4.0) / 64.0 + beta * beta * c / 4.0;
}

double linearization_gap(const GraphSample& g, const ModelParams& params) {
  const double theta = theta_statistic(g, params);
  return std::expm1(theta) - theta;
}

} // namespace dcw
