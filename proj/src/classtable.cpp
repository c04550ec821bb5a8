#include "dcw/classtable.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>

namespace dcw {

namespace {

// Factorial cache shared across calls; grows on demand. Returned by value:
// references into the cache would dangle across the reallocating growth.
BigInt factorial(long long v) {
  static std::vector<BigInt> cache{1, 1};
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  while (static_cast<long long>(cache.size()) <= v)
    cache.push_back(cache.back() * static_cast<long long>(cache.size()));
  return cache[static_cast<std::size_t>(v)];
}

} // namespace

BigInt nu_count(int n, const PairClass& cls) {
  if (!class_realizable(n, cls)) return BigInt(0);
  const auto q = quarter_counts(n, cls);
  return factorial(n) /
         (factorial(q.n1) * factorial(q.n2) * factorial(q.n3) * factorial(q.n4));
}

double log_nu(int n, const PairClass& cls) {
  if (!class_realizable(n, cls))
    throw std::invalid_argument("log_nu: unrealizable class");
  const auto q = quarter_counts(n, cls);
  return std::lgamma(n + 1.0) - std::lgamma(q.n1 + 1.0) -
         std::lgamma(q.n2 + 1.0) - std::lgamma(q.n3 + 1.0) -
         std::lgamma(q.n4 + 1.0);
}

double lclt_ratio(int n, const PairClass& cls) {
  if (!class_realizable(n, cls)) return 0.0;
  const double kk = (double)cls.k * cls.k + (double)cls.l * cls.l +
                    (double)cls.m * cls.m;
  const double log_bound = 2.0 * n * std::log(2.0) - 1.5 * std::log((double)n) -
                           kk / (2.0 * n);
  return std::exp(log_nu(n, cls) - log_bound);
}

ClassTable::ClassTable(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("ClassTable needs n >= 1");
  binomials_.resize(n + 1);
  binomials_[0] = 1;
  for (int j = 1; j <= n; ++j)
    binomials_[j] = binomials_[j - 1] * (n - j + 1) / j;
}

const BigInt& ClassTable::magnetization_count(int k) const {
  if (!magnetization_realizable(n_, k))
    throw std::invalid_argument("magnetization_count: bad k");
  return binomials_[(n_ + k) / 2];
}

BigInt ClassTable::total_pairs() const {
  BigInt total = 0;
  for_each_class([&](const PairClass& c) { total += nu_count(n_, c); });
  return total;
}

} // namespace dcw
