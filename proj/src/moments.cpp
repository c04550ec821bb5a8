#include "dcw/moments.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "dcw/logdomain.hpp"
#include "dcw/parallel.hpp"

namespace dcw {

namespace {

long double phi_l(long double p, long double x) {
  return std::log1p(p * std::expm1(x));
}

// log C(n, j) for j = 0..n via lgamma.
std::vector<double> log_binomials(int n) {
  std::vector<double> out(n + 1);
  const double lgn = std::lgamma(n + 1.0);
  for (int j = 0; j <= n; ++j)
    out[j] = lgn - std::lgamma(j + 1.0) - std::lgamma(n - j + 1.0);
  return out;
}

std::vector<double> log_factorials(int n) {
  std::vector<double> out(n + 1);
  for (int j = 0; j <= n; ++j) out[j] = std::lgamma(j + 1.0);
  return out;
}

void check_magnetization(const ModelParams& params, int k) {
  if (!magnetization_realizable(params.n_sites, k))
    throw std::invalid_argument("magnetization class violates |k|<=N or parity");
}

void check_class(const ModelParams& params, const PairClass& cls) {
  if (!class_realizable(params.n_sites, cls))
    throw std::invalid_argument("unrealizable pair class");
}

} // namespace

double expected_boltzmann_log(const ModelParams& params, int k) {
  params.validate();
  check_magnetization(params, k);
  const long long n = params.n_sites;
  const long double g = params.gamma();
  const long double p = params.edge_prob;
  const long double lp = phi_l(p, g);
  const long double lm = phi_l(p, -g);
  const long long npos = (n * n + (long long)k * k) / 2;
  const long long nneg = (n * n - (long long)k * k) / 2;
  return static_cast<double>(npos * lp + nneg * lm);
}

double expected_partition_log(const ModelParams& params) {
  params.validate();
  const int n = params.n_sites;
  const auto lb = log_binomials(n);
  LogSumExp acc;
  for (int k = -n; k <= n; k += 2)
    acc.add(lb[(n + k) / 2] + expected_boltzmann_log(params, k));
  return acc.value();
}

double joint_expected_boltzmann_log(const ModelParams& params,
                                    const PairClass& cls) {
  params.validate();
  check_class(params, cls);
  const long long n = params.n_sites;
  const long double g = params.gamma();
  const long double p = params.edge_prob;
  const long double l2p = phi_l(p, 2 * g);
  const long double l2m = phi_l(p, -2 * g);
  const long long kk = (long long)cls.k * cls.k, ll = (long long)cls.l * cls.l,
                  mm = (long long)cls.m * cls.m;
  const long long apos = (n * n + kk + ll + mm) / 4;
  const long long aneg = (n * n - kk - ll + mm) / 4;
  return static_cast<double>(apos * l2p + aneg * l2m);
}

double cov_hamiltonians(const ModelParams& params, const PairClass& cls) {
  params.validate();
  check_class(params, cls);
  const double n = params.n_sites, p = params.edge_prob, b = params.beta;
  const double mm = static_cast<double>(cls.m) * cls.m;
  return b * b * (1.0 - p) * mm / (4.0 * n * n * p);
}

double cov_boltzmann_hamiltonian_scaled(const ModelParams& params,
                                        const PairClass& cls) {
  params.validate();
  check_class(params, cls);
  const double n = params.n_sites, p = params.edge_prob, b = params.beta;
  const double g = params.gamma();
  // w = e^{x}/(1-p+p e^{x}) - 1 = (1-p) expm1(x) / (1-p+p e^{x})
  const double wp = (1.0 - p) * std::expm1(g) / (1.0 - p + p * std::exp(g));
  const double wm = (1.0 - p) * std::expm1(-g) / (1.0 - p + p * std::exp(-g));
  const double ll = static_cast<double>(cls.l) * cls.l;
  const double mm = static_cast<double>(cls.m) * cls.m;
  return -(b / (2.0 * n)) * (wp * (ll + mm) / 2.0 + wm * (ll - mm) / 2.0);
}

double expected_T_log(const ModelParams& params, int k) {
  params.validate();
  params.require_p_below_one("expected_T");
  check_magnetization(params, k);
  const long long n = params.n_sites;
  const long double g = params.gamma();
  const long double p = params.edge_prob;
  const long double d = g * g * (1 - 2 * p);
  const long double q0 = phi_l(p, -d / 2);
  const long double qp = phi_l(p, g - d / 2);
  const long double qm = phi_l(p, -g - d / 2);
  const long long npos = (n * n + (long long)k * k) / 2 - n;
  const long long nneg = (n * n - (long long)k * k) / 2;
  return static_cast<double>(n * q0 + npos * qp + nneg * qm);
}

double joint_expected_T_log(const ModelParams& params, const PairClass& cls) {
  params.validate();
  params.require_p_below_one("joint_expected_T");
  check_class(params, cls);
  const long long n = params.n_sites;
  const long double g = params.gamma();
  const long double p = params.edge_prob;
  const long double d = g * g * (1 - 2 * p);
  const long double p0 = phi_l(p, -d);
  const long double pp = phi_l(p, 2 * g - d);
  const long double pm = phi_l(p, -2 * g - d);
  const long long kk = (long long)cls.k * cls.k, ll = (long long)cls.l * cls.l,
                  mm = (long long)cls.m * cls.m;
  const long long apos = (n * n + kk + ll + mm) / 4;
  const long long aneg = (n * n - kk - ll + mm) / 4;
  return static_cast<double>((apos - n) * pp + aneg * pm +
                             (n * n + n - apos - aneg) * p0);
}

double expected_hat_partition_log(const ModelParams& params) {
  params.validate();
  params.require_p_below_one("expected_hat_partition");
  const int n = params.n_sites;
  const auto lb = log_binomials(n);
  LogSumExp acc;
  for (int k = -n; k <= n; k += 2)
    acc.add(lb[(n + k) / 2] + expected_T_log(params, k));
  return acc.value();
}

double expected_tilde_boltzmann_log(const ModelParams& params, int k) {
  params.validate();
  check_magnetization(params, k);
  const long long n = params.n_sites;
  const long double g = params.gamma();
  const long double p = params.edge_prob;
  const long double lc = std::log(std::cosh(g));
  const long double qp = phi_l(p, g - lc);
  const long double qm = phi_l(p, -g - lc);
  const long long npos = (n * n + (long long)k * k) / 2;
  const long long nneg = (n * n - (long long)k * k) / 2;
  return static_cast<double>(npos * qp + nneg * qm);
}

double expected_tilde_partition_log(const ModelParams& params) {
  params.validate();
  const int n = params.n_sites;
  const auto lb = log_binomials(n);
  LogSumExp acc;
  for (int k = -n; k <= n; k += 2)
    acc.add(lb[(n + k) / 2] + expected_tilde_boltzmann_log(params, k));
  return acc.value();
}

AsymptoticConstants asymptotic_constants(const ModelParams& params) {
  params.validate();
  const double n = params.n_sites, p = params.edge_prob, b = params.beta;
  AsymptoticConstants c;
  c.a_n_beta = -b * b / 8.0 + n * n * p * (std::cosh(b / (2.0 * n * p)) - 1.0);
  c.b_n_beta =
      -b * b / 4.0 + n * n * p / 2.0 * (std::cosh(b / (n * p)) - 1.0);
  c.alpha_n = b * std::sqrt(1.0 - p) / (2.0 * std::sqrt(n * p));
  c.beta_n = b * b * (1.0 - 2.0 * p) * std::sqrt(1.0 - p) /
             (8.0 * n * std::pow(p, 1.5));
  return c;
}

// --- class-sum variance engine ----------------------------------------------

namespace {

// D(k,l,m) = N^2 c_nn + (k^2+l^2) c_s + m^2 c_q + N c_lin, the log of the
// joint-to-product moment ratio. Grouping the integer pair counts this way
// removes the enormous common part of the two log-moments analytically; the
// remaining constants are small and are assembled in long double.
struct PairKernel {
  double c_nn = 0, c_s = 0, c_q = 0, c_lin = 0;
  double d(long long n, long long kk_plus_ll, long long mm) const {
    return static_cast<double>(n) * n * c_nn + kk_plus_ll * c_s + mm * c_q +
           static_cast<double>(n) * c_lin;
  }
};

// Z-kernel: joint/product for e^{-beta H}. Closed forms:
//   c_q  = (1/4) log1p(4p(1-p) sinh^2 gamma)
//   c_nn = c_q - log1p(4p(1-p) sinh^2(gamma/2))
//   c_s  = atanh((1-2p) tanh(gamma/2)) - (1/2) atanh((1-2p) tanh(gamma))
PairKernel partition_kernel(const ModelParams& params) {
  const long double g = params.gamma();
  const long double p = params.edge_prob;
  const long double sh = std::sinh(g), sh2 = std::sinh(g / 2);
  const long double a = 4 * p * (1 - p);
  PairKernel k;
  k.c_q = static_cast<double>(std::log1p(a * sh * sh) / 4);
  k.c_nn =
      static_cast<double>(std::log1p(a * sh * sh) / 4 - std::log1p(a * sh2 * sh2));
  k.c_s = static_cast<double>(std::atanh((1 - 2 * p) * std::tanh(g / 2)) -
                              std::atanh((1 - 2 * p) * std::tanh(g)) / 2);
  return k;
}

// hatZ-kernel from the six phi constants; the linear-in-N term carries the
// diagonal-exclusion mismatch between single and joint T-moments.
PairKernel hat_kernel(const ModelParams& params) {
  const long double g = params.gamma();
  const long double p = params.edge_prob;
  const long double d = g * g * (1 - 2 * p);
  const long double P0 = phi_l(p, -d), Pp = phi_l(p, 2 * g - d),
                    Pm = phi_l(p, -2 * g - d);
  const long double Q0 = phi_l(p, -d / 2), Qp = phi_l(p, g - d / 2),
                    Qm = phi_l(p, -g - d / 2);
  PairKernel k;
  k.c_nn = static_cast<double>(Pp / 4 + Pm / 4 + P0 / 2 - Qp - Qm);
  k.c_s = static_cast<double>(Pp / 4 - Pm / 4 - (Qp - Qm) / 2);
  // c_q has the same structure as the Z-kernel with weight e^{-d}:
  const long double w = std::exp(-d);
  const long double denom = 1 - p + p * w;
  k.c_q = static_cast<double>(
      std::log1p(4 * p * (1 - p) * w * std::sinh(g) * std::sinh(g) /
                 (denom * denom)) /
      4);
  k.c_lin = static_cast<double>(-Pp + P0 + 2 * Qp - 2 * Q0);
  return k;
}

PairKernel tilde_kernel(const ModelParams& params) {
  const long double g = params.gamma();
  const long double p = params.edge_prob;
  const long double lc = std::log(std::cosh(g));
  const long double P0 = phi_l(p, -2 * lc), Pp = phi_l(p, 2 * g - 2 * lc),
                    Pm = phi_l(p, -2 * g - 2 * lc);
  const long double Qp = phi_l(p, g - lc), Qm = phi_l(p, -g - lc);
  PairKernel k;
  k.c_nn = static_cast<double>(Pp / 4 + Pm / 4 + P0 / 2 - Qp - Qm);
  k.c_s = static_cast<double>(Pp / 4 - Pm / 4 - (Qp - Qm) / 2);
  const long double w = std::exp(-2 * lc);
  const long double denom = 1 - p + p * w;
  k.c_q = static_cast<double>(
      std::log1p(4 * p * (1 - p) * w * std::sinh(g) * std::sinh(g) /
                 (denom * denom)) /
      4);
  return k;
}

enum class SumKind { CovExpm1, CovW };

// Core O(N^3) class sum: for every realizable (k,l,m),
//   term = nu(k,l,m) E_k E_l / norm^2 * kernel-specific factor,
// with nu entering through log-factorials. Parallel over k with per-k partial
// sums combined in fixed k order, so results are bit-identical for any worker
// count.
double class_sum(const ModelParams& params, const std::vector<double>& log_ek,
                 double log_norm, const PairKernel& kern, SumKind kind,
                 int threads) {
  const int n = params.n_sites;
  const auto lgf = log_factorials(n);
  const double p = params.edge_prob, b = params.beta;
  const double w_coeff = b * b * (1.0 - p) / (4.0 * double(n) * n * p);
  std::vector<double> partial(n + 1, 0.0);
  parallel_for_index(n + 1, threads, [&](long long ki) {
    const int k = -n + 2 * static_cast<int>(ki);
    double acc = 0.0;
    for (int l = -n; l <= n; l += 2) {
      const long long kk_ll =
          (long long)k * k + (long long)l * l;
      const double log_w0 = lgf[n] + log_ek[(n + k) / 2] + log_ek[(n + l) / 2] -
                            2.0 * log_norm;
      // support of m given (k,l), stepping 4 from the mod-4-compatible start
      const int lo = std::abs(k + l) - n;
      const int hi = n - std::abs(k - l);
      int m = lo;
      if (((long long)n + k + l + m) % 4 != 0) m += 2;
      for (; m <= hi; m += 4) {
        const long long n1 = ((long long)n + k + l + m) / 4;
        const long long n2 = ((long long)n + k - l - m) / 4;
        const long long n3 = ((long long)n - k + l - m) / 4;
        const long long n4 = ((long long)n - k - l + m) / 4;
        const double log_nu = -lgf[n1] - lgf[n2] - lgf[n3] - lgf[n4];
        const long long mm = (long long)m * m;
        const double weight = std::exp(log_w0 + log_nu);
        if (kind == SumKind::CovExpm1)
          acc += weight * std::expm1(kern.d(n, kk_ll, mm));
        else
          acc += weight * (w_coeff * static_cast<double>(mm));
      }
    }
    partial[ki] = acc;
  });
  double total = 0.0;
  for (double v : partial) total += v;
  return total;
}

void check_ceiling(const ModelParams& params, const VarianceOptions& opts) {
  if (params.n_sites > opts.cubic_ceiling)
    throw std::length_error("N exceeds the cubic-cost ceiling (" +
                            std::to_string(opts.cubic_ceiling) +
                            "); raise it explicitly to proceed");
}

std::vector<double> tabulate(const ModelParams& params,
                             double (*f)(const ModelParams&, int)) {
  const int n = params.n_sites;
  std::vector<double> out(n + 1);
  for (int k = -n; k <= n; k += 2) out[(n + k) / 2] = f(params, k);
  return out;
}

} // namespace

double exact_variance_partition(const ModelParams& params,
                                const VarianceOptions& opts) {
  params.validate();
  check_ceiling(params, opts);
  if (params.edge_prob == 1.0) return 0.0; // deterministic graph
  const auto log_ek = tabulate(params, &expected_boltzmann_log);
  const double log_ez = expected_partition_log(params);
  return class_sum(params, log_ek, log_ez, partition_kernel(params),
                   SumKind::CovExpm1, opts.threads);
}

double exact_variance_hatZ(const ModelParams& params,
                           const VarianceOptions& opts) {
  params.validate();
  params.require_p_below_one("exact_variance_hatZ");
  check_ceiling(params, opts);
  const auto log_ek = tabulate(params, &expected_T_log);
  const double log_eh = expected_hat_partition_log(params);
  return class_sum(params, log_ek, log_eh, hat_kernel(params),
                   SumKind::CovExpm1, opts.threads);
}

double exact_variance_tildeZ(const ModelParams& params,
                             const VarianceOptions& opts) {
  params.validate();
  check_ceiling(params, opts);
  if (params.edge_prob == 1.0) return 0.0;
  const auto log_ek = tabulate(params, &expected_tilde_boltzmann_log);
  const double log_et = expected_tilde_partition_log(params);
  return class_sum(params, log_ek, log_et, tilde_kernel(params),
                   SumKind::CovExpm1, opts.threads);
}

double exact_variance_W(const ModelParams& params,
                        const VarianceOptions& opts) {
  params.validate();
  params.require_p_below_one("exact_variance_W");
  check_ceiling(params, opts);
  const auto log_ek = tabulate(params, &expected_boltzmann_log);
  const double log_ez = expected_partition_log(params);
  return class_sum(params, log_ek, log_ez, PairKernel{}, SumKind::CovW,
                   opts.threads);
}

} // namespace dcw
