#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdlib>
#include <vector>

#include "dcw/params.hpp"

namespace dcw {

using BigInt = boost::multiprecision::cpp_int;

// nu_N(k,l,m) = #{(sigma,tau) : |sigma|=k, |tau|=l, |sigma tau|=m}
//             = N! / (n1! n2! n3! n4!)
// with the quarter counts n_i of params.hpp. Returns 0 outside the support.
// Exact arbitrary-precision integers; factorials cached up to N ~ 1000.
BigInt nu_count(int n, const PairClass& cls);

// log nu via lgamma, for use inside floating-point class sums.
double log_nu(int n, const PairClass& cls);

// nu_N(k,l,m) / (2^{2N} N^{-3/2} e^{-(k^2+l^2+m^2)/(2N)}): the ratio whose
// boundedness a three-dimensional local CLT guarantees. For empirical scans
// of the constant; returns 0 for unrealizable classes.
double lclt_ratio(int n, const PairClass& cls);

// Per-N lookup: binomial counts #{|sigma|=k} and iteration over realizable
// pair classes. sum_k #{|sigma|=k} = 2^N and sum_cls nu = 4^N.
class ClassTable {
public:
  explicit ClassTable(int n);

  int n_sites() const { return n_; }

  // #{sigma : |sigma| = k} as exact integer; k must have the parity of N.
  const BigInt& magnetization_count(int k) const;

  BigInt nu(const PairClass& cls) const { return nu_count(n_, cls); }

  // Visits every realizable (k,l,m) in lexicographic (k,l,m) order.
  template <typename F>
  void for_each_class(F&& f) const {
    for (int k = -n_; k <= n_; k += 2)
      for (int l = -n_; l <= n_; l += 2) {
        const int lo = std::abs(k + l) - n_;
        const int hi = n_ - std::abs(k - l);
        int m = lo;
        if (((long long)n_ + k + l + m) % 4 != 0) m += 2;
        for (; m <= hi; m += 4) f(PairClass{k, l, m});
      }
  }

  BigInt total_pairs() const; // sums nu over all classes (= 4^N)

private:
  int n_;
  std::vector<BigInt> binomials_; // C(N, j), j = 0..N
};

} // namespace dcw
