#pragma once

#include "dcw/params.hpp"

namespace dcw {

// Closed-form expectations over the graph randomness. All E-quantities are
// returned as natural logs; exponentiation is deferred to callers.
//
// The product formulas follow from independence of the N^2 indicators: for
// |sigma| = k there are (N^2+k^2)/2 ordered pairs with sigma_i sigma_j = +1
// and (N^2-k^2)/2 with -1, so
//   log E e^{-beta H} = (N^2+k^2)/2 * log(1-p+p e^{gamma})
//                     + (N^2-k^2)/2 * log(1-p+p e^{-gamma}).
double expected_boltzmann_log(const ModelParams& params, int k);

// log E Z_N, accumulated by log-sum-exp over the N+1 magnetization classes.
double expected_partition_log(const ModelParams& params);

// log E[e^{-beta H(sigma)} e^{-beta H(tau)}] for a pair in class (k,l,m):
// a+ = (N^2+k^2+l^2+m^2)/4 pairs contribute at exponent +2 gamma and
// a- = (N^2-k^2-l^2+m^2)/4 at -2 gamma; mixed pairs contribute factor 1.
double joint_expected_boltzmann_log(const ModelParams& params,
                                    const PairClass& cls);

// Cov(beta H(sigma), beta H(tau)) = beta^2 (1-p) m^2 / (4 N^2 p), exact.
double cov_hamiltonians(const ModelParams& params, const PairClass& cls);

// Cov(e^{-beta H(sigma)}, beta H(tau)) / E e^{-beta H(sigma)}, exact:
//   -(beta/2N) [ w+ (l^2+m^2)/2 + w- (l^2-m^2)/2 ],
//   w+- = e^{+-gamma}/(1-p+p e^{+-gamma}) - 1.
double cov_boltzmann_hamiltonian_scaled(const ModelParams& params,
                                        const PairClass& cls);

// log E T(sigma) for |sigma| = k. T removes the xi/eta directions from
// e^{-beta H}; its diagonal factors differ from the off-diagonal ones, so the
// +gamma pair count excludes the N diagonal pairs:
//   log E T = N phi(-d/2) + ((N^2+k^2)/2 - N) phi(gamma - d/2)
//                         + ((N^2-k^2)/2) phi(-gamma - d/2),
// phi(x) = log(1-p+p e^x), d = gamma^2 (1-2p). Requires p < 1.
double expected_T_log(const ModelParams& params, int k);

// log E[T(sigma) T(tau)] for class (k,l,m); arguments are doubled
// (+-2 gamma - d, and -d for both mixed and diagonal pairs), diagonal pairs
// excluded from the +2 gamma count:
//   (a+ - N) phi(2 gamma - d) + a- phi(-2 gamma - d) + (N^2+N-a+-a-) phi(-d).
double joint_expected_T_log(const ModelParams& params, const PairClass& cls);

// log E hatZ = log sum_k #{|sigma|=k} E T_k.
double expected_hat_partition_log(const ModelParams& params);

// tilde-T moments (Z with log cosh(gamma) * total_edges factored out); the
// diagonal needs no special casing because sigma_i sigma_i = +1 matches the
// +gamma branch exactly.
double expected_tilde_boltzmann_log(const ModelParams& params, int k);
double expected_tilde_partition_log(const ModelParams& params);

struct AsymptoticConstants {
  double a_n_beta; // -beta^2/8 + N^2 p (cosh(beta/2Np) - 1)
  double b_n_beta; // -beta^2/4 + (N^2 p / 2)(cosh(beta/Np) - 1)
  double alpha_n;  // beta sqrt(1-p) / (2 sqrt(Np))
  double beta_n;   // beta^2 (1-2p) sqrt(1-p) / (8 N p^{3/2})
};
AsymptoticConstants asymptotic_constants(const ModelParams& params);

// --- exact O(N^3) variances over magnetization/overlap classes -------------
//
// Every covariance term is assembled as E_k E_l expm1(D) where D is the log
// of the joint-to-product ratio, built from integer-weighted combinations of
// the four log(1-p+p e^{. gamma}) constants. D is never formed as a
// difference of two exponentials: for large N the joint and the product
// agree to many digits.

struct VarianceOptions {
  int cubic_ceiling = 800; // refuse above; override with the CLI flag
  int threads = 0;         // 0 = DCWLAB_THREADS env or hardware default
};

// Var(Z_N / E Z_N).
double exact_variance_partition(const ModelParams& params,
                                const VarianceOptions& opts = {});

// Var(hatZ_N / E hatZ_N). Requires p < 1.
double exact_variance_hatZ(const ModelParams& params,
                           const VarianceOptions& opts = {});

// Var(tildeZ_N / E tildeZ_N).
double exact_variance_tildeZ(const ModelParams& params,
                             const VarianceOptions& opts = {});

// Var(W_N) / (E Z_N)^2 where W_N = sum_sigma E e^{-beta H}(-beta H - beta|sigma|^2/2N).
double exact_variance_W(const ModelParams& params,
                        const VarianceOptions& opts = {});

} // namespace dcw
