#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dcw/params.hpp"
#include "dcw/spins.hpp"

namespace dcw {

// Directed Erdos-Renyi sample on N vertices: all N^2 ordered pairs including
// self-loops are independent Bernoulli(p) indicators. Row-major bit packing,
// one fixed stride of ceil(N/64) words per row; edge counts are cached at
// construction. Immutable after construction.
class GraphSample {
public:
  GraphSample(int n, std::uint64_t seed, std::vector<std::uint64_t> rows);

  int n_sites() const { return n_; }
  std::uint64_t seed() const { return seed_; }
  long long total_edges() const { return total_edges_; }
  long long diag_edges() const { return diag_edges_; }
  int row_stride() const { return stride_; }

  bool edge(int i, int j) const {
    return (rows_[static_cast<std::size_t>(i) * stride_ + (j >> 6)] >>
            (j & 63)) & 1ULL;
  }

  const std::uint64_t* row(int i) const {
    return rows_.data() + static_cast<std::size_t>(i) * stride_;
  }

  // Column masks (the transpose rows), built lazily by sample/deserialize so
  // the quadratic-form popcount path can scan columns as cheaply as rows.
  const std::uint64_t* col(int j) const {
    return cols_.data() + static_cast<std::size_t>(j) * stride_;
  }

  long long recount_total() const;
  long long recount_diag() const;

  // Integer quadratic form Q(sigma) = sum_{i,j} eps_{ij} sigma_i sigma_j,
  // computed with per-row popcounts.
  long long quadratic_form(const SpinConfiguration& sigma) const;

  // --- serialization -------------------------------------------------------
  // Binary layout (little endian): magic "DCWG", u8 version, u64 N, u64 seed,
  // then ceil(N^2/8) bytes of indicators, row-major, bit (i,j) stored at
  // byte (i*N+j)/8, LSB first. Round-trips bit-exactly.
  void write_binary(std::ostream& os) const;
  static GraphSample read_binary(std::istream& is);

  std::string to_json_debug() const; // {"n":..,"seed":..,"rows":["0101..",..]}
  static GraphSample from_json_debug(const std::string& text);

private:
  void rebuild_cols_and_counts();

  int n_;
  int stride_;
  std::uint64_t seed_;
  std::vector<std::uint64_t> rows_;
  std::vector<std::uint64_t> cols_;
  long long total_edges_ = 0;
  long long diag_edges_ = 0;
};

// Deterministic sampling: indicator (i,j) is the Bernoulli(p) draw of
// counter_rand(seed, i*N+j); same (params, seed) gives identical bits.
GraphSample sample_graph(const ModelParams& params, std::uint64_t seed);

// H(sigma) = -(1/(2Np)) * Q(sigma). The double sum is integer-valued; only
// this final scaling is floating point.
double hamiltonian(const GraphSample& g, const SpinConfiguration& sigma,
                   const ModelParams& params);

struct EdgeStatistics {
  double xi;           // diag_edges / sqrt(N p (1-p))
  double eta;          // total_edges / (N sqrt(p (1-p)))
  double xi_centered;  // same with eps replaced by eps - p
  double eta_centered;
};

// Requires p strictly inside (0,1): both normalizations divide by 1-p.
EdgeStatistics xi_eta(const GraphSample& g, const ModelParams& params);

} // namespace dcw
