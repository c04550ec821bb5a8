#include "doctest.h"

#include <cmath>
#include <sstream>

#include "dcw/graph.hpp"
#include "dcw/params.hpp"
#include "dcw/rng.hpp"
#include "dcw/spins.hpp"

using namespace dcw;

TEST_CASE("params validate and derive gamma") {
  ModelParams p(10, 0.5, 0.5);
  CHECK(p.gamma() == doctest::Approx(0.05).epsilon(1e-15));
  CHECK_THROWS_AS(ModelParams(0, 0.5, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(ModelParams(4, 0.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(ModelParams(4, 1.5, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(ModelParams(4, 0.5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(ModelParams(4, 0.5, 1.2).require_high_temperature(),
                  std::invalid_argument);
}

TEST_CASE("magnetization and overlap") {
  // sigma = (+,+,-)
  SpinConfiguration s(3, 0b011);
  CHECK(magnetization(s) == 1);

  SpinConfiguration t = s;
  CHECK(overlap(s, t) == 3);

  // sigma=(+,-,+,-), tau=(+,+,-,-) -> 1-1-1+1 = 0
  SpinConfiguration a(4, 0b0101), b(4, 0b0011);
  CHECK(overlap(a, b) == 0);

  SpinConfiguration neg(4, 0b1010);
  CHECK(overlap(a, neg) == -4);
  CHECK(overlap(a, b) == overlap(b, a));
  CHECK(overlap(neg, a) == -4);

  CHECK_THROWS_AS(overlap(s, a), std::invalid_argument);
}

TEST_CASE("magnetization parity matches N") {
  for (int n : {1, 2, 3, 5, 8, 13}) {
    for (std::uint64_t code = 0; code < (1ULL << std::min(n, 10)); ++code) {
      SpinConfiguration s(n, code);
      CHECK(((magnetization(s) - n) % 2) == 0);
    }
  }
}

TEST_CASE("sample_graph p=1 sets all indicators") {
  ModelParams params(3, 1.0, 0.5);
  const auto g = sample_graph(params, 1234);
  CHECK(g.total_edges() == 9);
  CHECK(g.diag_edges() == 3);
}

TEST_CASE("sample_graph is deterministic in (params, seed)") {
  ModelParams params(3, 0.5, 0.5);
  const auto a = sample_graph(params, 42);
  const auto b = sample_graph(params, 42);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(a.edge(i, j) == b.edge(i, j));
  // and actually depends on the seed
  const auto c = sample_graph(params, 43);
  bool any_diff = false;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) any_diff |= (a.edge(i, j) != c.edge(i, j));
  CHECK(any_diff);
}

TEST_CASE("edge frequency matches the Bernoulli parameter") {
  // 200 seeds at N=1000, p=0.3: mean density within 3 standard errors.
  ModelParams params(1000, 0.3, 0.5);
  double mean = 0;
  const int seeds = 200;
  for (int s = 0; s < seeds; ++s) {
    const auto g = sample_graph(params, 900 + s);
    mean += static_cast<double>(g.total_edges()) / (1000.0 * 1000.0);
  }
  mean /= seeds;
  const double se = std::sqrt(0.3 * 0.7 / (seeds * 1000.0 * 1000.0));
  CHECK(std::abs(mean - 0.3) < 3 * se);
}

TEST_CASE("hamiltonian on the complete graph is -|sigma|^2/(2N)") {
  ModelParams params(4, 1.0, 0.5);
  const auto g = sample_graph(params, 7);
  SpinConfiguration all_plus = SpinConfiguration::all_plus(4);
  CHECK(hamiltonian(g, all_plus, params) == doctest::Approx(-2.0).epsilon(1e-14));
  for (std::uint64_t code = 0; code < 16; ++code) {
    SpinConfiguration s(4, code);
    const double mag = magnetization(s);
    CHECK(hamiltonian(g, s, params) ==
          doctest::Approx(-mag * mag / 8.0).epsilon(1e-13));
  }
}

TEST_CASE("hamiltonian explicit three-term example") {
  // N=3, p=0.5, edges {(0,1),(1,0),(2,2)}, sigma=(+,-,+)
  // H = -(1/3) (s0 s1 + s1 s0 + s2 s2) = -(1/3)(-1-1+1) = 1/3
  ModelParams params(3, 0.5, 0.5);
  std::vector<std::uint64_t> rows(3, 0);
  rows[0] = 0b010; // (0,1)
  rows[1] = 0b001; // (1,0)
  rows[2] = 0b100; // (2,2)
  GraphSample g(3, 0, rows);
  SpinConfiguration s(3, 0b101);
  CHECK(hamiltonian(g, s, params) == doctest::Approx(1.0 / 3).epsilon(1e-15));
}

TEST_CASE("empty graph has zero energy") {
  ModelParams params(3, 0.5, 0.7);
  GraphSample g(3, 0, std::vector<std::uint64_t>(3, 0));
  for (std::uint64_t code = 0; code < 8; ++code)
    CHECK(hamiltonian(g, SpinConfiguration(3, code), params) == 0.0);
}

TEST_CASE("global spin flip leaves the energy unchanged") {
  ModelParams params(9, 0.4, 0.8);
  const auto g = sample_graph(params, 5);
  for (std::uint64_t code = 0; code < (1ULL << 9); code += 17) {
    SpinConfiguration s(9, code);
    SpinConfiguration flipped(9, ~code);
    CHECK(hamiltonian(g, s, params) ==
          doctest::Approx(hamiltonian(g, flipped, params)).epsilon(1e-14));
  }
}

TEST_CASE("xi eta formulas") {
  ModelParams params(2, 0.5, 0.5);
  // all 4 edges present
  std::vector<std::uint64_t> rows = {0b11, 0b11};
  GraphSample g(2, 0, rows);
  const auto s = xi_eta(g, params);
  CHECK(s.eta == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(s.xi == doctest::Approx(2.0 / std::sqrt(0.5)).epsilon(1e-15));

  GraphSample empty(3, 0, std::vector<std::uint64_t>(3, 0));
  ModelParams params3(3, 0.5, 0.5);
  const auto e = xi_eta(empty, params3);
  CHECK(e.xi == 0.0);
  CHECK(e.eta == 0.0);
  CHECK(e.xi_centered ==
        doctest::Approx(-3 * 0.5 / std::sqrt(3 * 0.25)).epsilon(1e-15));

  ModelParams p1(3, 1.0, 0.5);
  CHECK_THROWS_AS(xi_eta(empty, p1), std::invalid_argument);
}

TEST_CASE("centered edge statistics average to zero") {
  ModelParams params(50, 0.3, 0.5);
  double mean_xi = 0, mean_eta = 0;
  const int m = 10000;
  for (int i = 0; i < m; ++i) {
    const auto g = sample_graph(params, derive_seed(321, i));
    const auto s = xi_eta(g, params);
    mean_xi += s.xi_centered;
    mean_eta += s.eta_centered;
  }
  mean_xi /= m;
  mean_eta /= m;
  // xi-bar and eta-bar have unit variance by construction
  CHECK(std::abs(mean_xi) < 4.0 / std::sqrt(double(m)));
  CHECK(std::abs(mean_eta) < 4.0 / std::sqrt(double(m)));
}

TEST_CASE("binary serialization round-trips bit-exactly") {
  ModelParams params(11, 0.37, 0.5);
  const auto g = sample_graph(params, 2024);
  std::stringstream buf;
  g.write_binary(buf);
  const auto h = GraphSample::read_binary(buf);
  CHECK(h.n_sites() == g.n_sites());
  CHECK(h.seed() == g.seed());
  for (int i = 0; i < 11; ++i)
    for (int j = 0; j < 11; ++j) CHECK(h.edge(i, j) == g.edge(i, j));
  CHECK(h.total_edges() == g.recount_total());
  CHECK(h.diag_edges() == g.recount_diag());
}

TEST_CASE("json debug form round-trips") {
  ModelParams params(5, 0.5, 0.5);
  const auto g = sample_graph(params, 77);
  const auto h = GraphSample::from_json_debug(g.to_json_debug());
  CHECK(h.to_json_debug() == g.to_json_debug());
  CHECK(h.total_edges() == g.total_edges());
}

TEST_CASE("cached counts equal recounts") {
  for (std::uint64_t seed : {1ULL, 99ULL}) {
    ModelParams params(17, 0.42, 0.5);
    const auto g = sample_graph(params, seed);
    CHECK(g.total_edges() == g.recount_total());
    CHECK(g.diag_edges() == g.recount_diag());
  }
}

TEST_CASE("pair class realizability") {
  CHECK(class_realizable(4, {0, 0, 0}));
  CHECK(class_realizable(4, {4, 4, 4}));
  CHECK_FALSE(class_realizable(4, {1, 0, 0}));  // parity
  CHECK_FALSE(class_realizable(4, {2, 0, 0}));  // mod 4
  CHECK_FALSE(class_realizable(4, {5, 4, 4}));  // out of range
  CHECK_FALSE(class_realizable(3, {3, 3, -3}));
  CHECK(class_realizable(3, {3, 3, 3}));
  CHECK(class_realizable(3, {1, 1, 3}));
}
