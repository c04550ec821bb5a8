#include "dcw/graph.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "dcw/rng.hpp"

namespace dcw {

GraphSample::GraphSample(int n, std::uint64_t seed,
                         std::vector<std::uint64_t> rows)
    : n_(n), stride_((n + 63) / 64), seed_(seed), rows_(std::move(rows)) {
  if (n_ < 1) throw std::invalid_argument("graph needs n >= 1");
  if (rows_.size() != static_cast<std::size_t>(n_) * stride_)
    throw std::invalid_argument("graph row storage size mismatch");
  rebuild_cols_and_counts();
}

void GraphSample::rebuild_cols_and_counts() {
  cols_.assign(static_cast<std::size_t>(n_) * stride_, 0);
  total_edges_ = 0;
  diag_edges_ = 0;
  for (int i = 0; i < n_; ++i) {
    const std::uint64_t* r = row(i);
    for (int w = 0; w < stride_; ++w) total_edges_ += std::popcount(r[w]);
    if (edge(i, i)) ++diag_edges_;
    for (int j = 0; j < n_; ++j)
      if (edge(i, j))
        cols_[static_cast<std::size_t>(j) * stride_ + (i >> 6)] |=
            1ULL << (i & 63);
  }
}

long long GraphSample::recount_total() const {
  long long t = 0;
  for (auto w : rows_) t += std::popcount(w);
  return t;
}

long long GraphSample::recount_diag() const {
  long long d = 0;
  for (int i = 0; i < n_; ++i) d += edge(i, i) ? 1 : 0;
  return d;
}

long long GraphSample::quadratic_form(const SpinConfiguration& sigma) const {
  if (sigma.size() != n_)
    throw std::invalid_argument("quadratic_form: dimension mismatch");
  // sum_j eps_{ij} sigma_j = 2*popcount(row_i AND plus_mask) - popcount(row_i),
  // accumulated with the sign of sigma_i.
  long long q = 0;
  const auto& mask = sigma.words();
  for (int i = 0; i < n_; ++i) {
    const std::uint64_t* r = row(i);
    long long rowsum = 0;
    for (int w = 0; w < stride_; ++w)
      rowsum += 2 * std::popcount(r[w] & mask[w]) - std::popcount(r[w]);
    q += sigma.spin(i) > 0 ? rowsum : -rowsum;
  }
  return q;
}

GraphSample sample_graph(const ModelParams& params, std::uint64_t seed) {
  params.validate();
  const int n = params.n_sites;
  const int stride = (n + 63) / 64;
  std::vector<std::uint64_t> rows(static_cast<std::size_t>(n) * stride, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (edge_indicator(seed, i, j, n, params.edge_prob))
        rows[static_cast<std::size_t>(i) * stride + (j >> 6)] |= 1ULL
                                                                 << (j & 63);
  return GraphSample(n, seed, std::move(rows));
}

double hamiltonian(const GraphSample& g, const SpinConfiguration& sigma,
                   const ModelParams& params) {
  if (g.n_sites() != params.n_sites || sigma.size() != params.n_sites)
    throw std::invalid_argument("hamiltonian: dimension mismatch");
  const long long q = g.quadratic_form(sigma);
  return -static_cast<double>(q) /
         (2.0 * params.n_sites * params.edge_prob);
}

EdgeStatistics xi_eta(const GraphSample& g, const ModelParams& params) {
  params.require_p_below_one("xi_eta");
  const double n = params.n_sites;
  const double p = params.edge_prob;
  const double dnorm = std::sqrt(n * p * (1.0 - p));
  const double tnorm = n * std::sqrt(p * (1.0 - p));
  EdgeStatistics s;
  s.xi = g.diag_edges() / dnorm;
  s.eta = g.total_edges() / tnorm;
  s.xi_centered = (g.diag_edges() - n * p) / dnorm;
  s.eta_centered = (g.total_edges() - n * n * p) / tnorm;
  return s;
}

// --- serialization ---------------------------------------------------------

namespace {
constexpr char kMagic[4] = {'D', 'C', 'W', 'G'};
constexpr std::uint8_t kFormatVersion = 1;

void put_u64(std::ostream& os, std::uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  os.write(reinterpret_cast<const char*>(b), 8);
}

std::uint64_t get_u64(std::istream& is) {
  unsigned char b[8];
  is.read(reinterpret_cast<char*>(b), 8);
  if (!is) throw std::runtime_error("graph deserialize: truncated header");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return v;
}
} // namespace

void GraphSample::write_binary(std::ostream& os) const {
  os.write(kMagic, 4);
  os.put(static_cast<char>(kFormatVersion));
  put_u64(os, static_cast<std::uint64_t>(n_));
  put_u64(os, seed_);
  const std::size_t nbits = static_cast<std::size_t>(n_) * n_;
  const std::size_t nbytes = (nbits + 7) / 8;
  std::vector<unsigned char> bytes(nbytes, 0);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (edge(i, j)) {
        const std::size_t bit = static_cast<std::size_t>(i) * n_ + j;
        bytes[bit >> 3] |= static_cast<unsigned char>(1u << (bit & 7));
      }
  os.write(reinterpret_cast<const char*>(bytes.data()),
           static_cast<std::streamsize>(nbytes));
}

GraphSample GraphSample::read_binary(std::istream& is) {
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0)
    throw std::runtime_error("graph deserialize: bad magic");
  const int version = is.get();
  if (version != kFormatVersion)
    throw std::runtime_error("graph deserialize: unsupported version");
  const std::uint64_t n64 = get_u64(is);
  if (n64 == 0 || n64 > (1ULL << 20))
    throw std::runtime_error("graph deserialize: implausible N");
  const int n = static_cast<int>(n64);
  const std::uint64_t seed = get_u64(is);
  const std::size_t nbits = static_cast<std::size_t>(n) * n;
  const std::size_t nbytes = (nbits + 7) / 8;
  std::vector<unsigned char> bytes(nbytes);
  is.read(reinterpret_cast<char*>(bytes.data()),
          static_cast<std::streamsize>(nbytes));
  if (!is) throw std::runtime_error("graph deserialize: truncated payload");
  const int stride = (n + 63) / 64;
  std::vector<std::uint64_t> rows(static_cast<std::size_t>(n) * stride, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const std::size_t bit = static_cast<std::size_t>(i) * n + j;
      if ((bytes[bit >> 3] >> (bit & 7)) & 1u)
        rows[static_cast<std::size_t>(i) * stride + (j >> 6)] |= 1ULL
                                                                 << (j & 63);
    }
  return GraphSample(n, seed, std::move(rows));
}

std::string GraphSample::to_json_debug() const {
  std::ostringstream os;
  os << "{\"n\":" << n_ << ",\"seed\":" << seed_ << ",\"rows\":[";
  for (int i = 0; i < n_; ++i) {
    os << (i ? ",\"" : "\"");
    for (int j = 0; j < n_; ++j) os << (edge(i, j) ? '1' : '0');
    os << '"';
  }
  os << "]}";
  return os.str();
}

GraphSample GraphSample::from_json_debug(const std::string& text) {
  // Hand-rolled scan of the fixed debug layout written above.
  const auto find_num = [&](const char* key) -> std::uint64_t {
    auto pos = text.find(key);
    if (pos == std::string::npos)
      throw std::runtime_error("graph json: missing key");
    pos = text.find(':', pos);
    return std::stoull(text.substr(pos + 1));
  };
  const int n = static_cast<int>(find_num("\"n\""));
  const std::uint64_t seed = find_num("\"seed\"");
  auto pos = text.find("\"rows\"");
  if (pos == std::string::npos) throw std::runtime_error("graph json: rows");
  pos = text.find('[', pos);
  const int stride = (n + 63) / 64;
  std::vector<std::uint64_t> rows(static_cast<std::size_t>(n) * stride, 0);
  for (int i = 0; i < n; ++i) {
    pos = text.find('"', pos) + 1;
    for (int j = 0; j < n; ++j) {
      const char c = text.at(pos + j);
      if (c == '1')
        rows[static_cast<std::size_t>(i) * stride + (j >> 6)] |= 1ULL
                                                                 << (j & 63);
      else if (c != '0')
        throw std::runtime_error("graph json: bad row bit");
    }
    pos = pos + n + 1;
  }
  return GraphSample(n, seed, std::move(rows));
}

} // namespace dcw
