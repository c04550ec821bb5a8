#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace dcw {

// Bit-packed spin configuration: bit b means spin value 2b-1, i.e. a set bit
// is +1 and a clear bit is -1. Immutable after construction.
class SpinConfiguration {
public:
  explicit SpinConfiguration(int n) : n_(n), words_((n + 63) / 64, 0) {
    if (n < 1) throw std::invalid_argument("spin configuration needs n >= 1");
  }

  // Low n bits of `bits` are the spins (site i = bit i). Convenient for n <= 64.
  SpinConfiguration(int n, std::uint64_t bits) : SpinConfiguration(n) {
    words_[0] = n >= 64 ? bits : (bits & mask_low(n));
  }

  static SpinConfiguration all_plus(int n) {
    SpinConfiguration s(n);
    for (auto& w : s.words_) w = ~0ULL;
    s.trim();
    return s;
  }

  static SpinConfiguration all_minus(int n) { return SpinConfiguration(n); }

  int size() const { return n_; }

  int spin(int i) const { return ((words_[i >> 6] >> (i & 63)) & 1) ? 1 : -1; }

  void set_spin(int i, int value) {
    const std::uint64_t bit = 1ULL << (i & 63);
    if (value > 0)
      words_[i >> 6] |= bit;
    else
      words_[i >> 6] &= ~bit;
  }

  void flip(int i) { words_[i >> 6] ^= 1ULL << (i & 63); }

  const std::vector<std::uint64_t>& words() const { return words_; }

  int popcount() const {
    int c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }

private:
  static std::uint64_t mask_low(int n) {
    return n >= 64 ? ~0ULL : ((1ULL << n) - 1);
  }
  void trim() {
    const int rem = n_ & 63;
    if (rem) words_.back() &= (1ULL << rem) - 1;
  }

  int n_;
  std::vector<std::uint64_t> words_;
};

// |sigma| = sum of spins = 2*(# set bits) - N.
inline int magnetization(const SpinConfiguration& s) {
  return 2 * s.popcount() - s.size();
}

// |sigma tau| = sum of sigma_i tau_i = N - 2*popcount(sigma XOR tau).
inline int overlap(const SpinConfiguration& s, const SpinConfiguration& t) {
  if (s.size() != t.size())
    throw std::invalid_argument("overlap: length mismatch");
  int disagree = 0;
  for (std::size_t w = 0; w < s.words().size(); ++w)
    disagree += std::popcount(s.words()[w] ^ t.words()[w]);
  return s.size() - 2 * disagree;
}

} // namespace dcw
