#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dcw {

// The model triple (N, p, beta). gamma = beta/(2 N p) is derived and used by
// every moment formula, so it lives here rather than being recomputed ad hoc.
struct ModelParams {
  int n_sites = 0;      // N
  double edge_prob = 0; // p in (0, 1]
  double beta = 0;      // inverse temperature, > 0

  ModelParams() = default;
  ModelParams(int n, double p, double b) : n_sites(n), edge_prob(p), beta(b) {
    validate();
  }

  void validate() const {
    if (n_sites < 1) throw std::invalid_argument("n_sites must be >= 1");
    if (!(edge_prob > 0.0) || edge_prob > 1.0)
      throw std::invalid_argument("edge_prob must be in (0,1]");
    if (!(beta > 0.0)) throw std::invalid_argument("beta must be > 0");
  }

  double gamma() const { return beta / (2.0 * n_sites * edge_prob); }

  // Operations built on the CLT results are stated for beta < 1 only.
  void require_high_temperature() const {
    if (beta >= 1.0)
      throw std::invalid_argument("this operation requires beta < 1");
  }

  // xi/eta normalizations and the hat-partition divide by (1-p).
  void require_p_below_one(const std::string& what) const {
    if (edge_prob >= 1.0)
      throw std::invalid_argument(what + " requires edge_prob < 1");
  }
};

// Equivalence class of a spin pair: k = |sigma|, l = |tau|, m = |sigma tau|.
struct PairClass {
  int k = 0;
  int l = 0;
  int m = 0;
};

// Counts of index positions by sign pattern of (sigma_i, tau_i):
// n1 = #(+,+), n2 = #(+,-), n3 = #(-,+), n4 = #(-,-).
struct QuarterCounts {
  long long n1, n2, n3, n4;
  bool nonnegative() const { return n1 >= 0 && n2 >= 0 && n3 >= 0 && n4 >= 0; }
};

inline QuarterCounts quarter_counts(int n, const PairClass& c) {
  const long long N = n, k = c.k, l = c.l, m = c.m;
  return QuarterCounts{(N + k + l + m) / 4, (N + k - l - m) / 4,
                       (N - k + l - m) / 4, (N - k - l + m) / 4};
}

// A class is realizable iff k,l,m all have the parity of N, N+k+l+m is
// divisible by 4, and the four quarter counts are nonnegative.
inline bool class_realizable(int n, const PairClass& c) {
  if (c.k < -n || c.k > n || c.l < -n || c.l > n || c.m < -n || c.m > n)
    return false;
  const auto par = [n](int v) { return ((v - n) % 2) == 0; };
  if (!par(c.k) || !par(c.l) || !par(c.m)) return false;
  if ((((long long)n + c.k + c.l + c.m) % 4) != 0) return false;
  return quarter_counts(n, c).nonnegative();
}

inline bool magnetization_realizable(int n, int k) {
  return k >= -n && k <= n && ((k - n) % 2) == 0;
}

} // namespace dcw
