#pragma once

#include <cmath>
#include <limits>

namespace dcw {

// log(1 - p + p e^x), evaluated as log1p(p * expm1(x)) so that small x does
// not lose precision to the additive 1.
inline double log_mix_exp(double p, double x) {
  return std::log1p(p * std::expm1(x));
}

// Streaming log-sum-exp with a running maximum: absorbing a term with a new
// maximum rescales the accumulated mantissa sum instead of re-reading terms.
class LogSumExp {
public:
  void add(double log_term) {
    if (log_term == -std::numeric_limits<double>::infinity()) return;
    if (empty_) {
      max_ = log_term;
      sum_ = 1.0;
      empty_ = false;
      return;
    }
    if (log_term <= max_) {
      sum_ += std::exp(log_term - max_);
    } else {
      sum_ = sum_ * std::exp(max_ - log_term) + 1.0;
      max_ = log_term;
    }
  }

  // log(n * e^{log_term}) for integer-weighted terms.
  void add_scaled(double log_weight, double log_term) {
    add(log_weight + log_term);
  }

  bool empty() const { return empty_; }

  double value() const {
    if (empty_) return -std::numeric_limits<double>::infinity();
    return max_ + std::log(sum_);
  }

private:
  bool empty_ = true;
  double max_ = 0;
  double sum_ = 0;
};

// Log-domain value with an explicit empty-sum state (e.g. a generalized
// partition function with g identically zero).
struct LogValue {
  double log_value = -std::numeric_limits<double>::infinity();
  bool is_zero = false;
};

} // namespace dcw
