// dcwlab: exact moments, exact enumeration, series verification, and CLT
// experiments for the dilute Curie-Weiss model on directed Erdos-Renyi graphs.
//
// Subcommands: sample-graph, enumerate, moments, nu-count, verify-expansions,
// clt-experiment, variance-trend. JSON on stdout (or --out); every run embeds
// the resolved configuration, the tool version, and a schema version. All
// floating-point output carries 17 significant digits. Exit codes: 0 success,
// 1 validation error, 2 resource-ceiling refusal.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "dcw/classtable.hpp"
#include "dcw/enumeration.hpp"
#include "dcw/expansions.hpp"
#include "dcw/experiments.hpp"
#include "dcw/graph.hpp"
#include "dcw/json_io.hpp"
#include "dcw/moments.hpp"
#include "dcw/version.hpp"

namespace {

using namespace dcw;

struct OutputSink {
  std::string path; // empty = stdout

  void write(const std::string& text) const {
    if (path.empty()) {
      std::cout << text << "\n";
      return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file: " + path);
    os << text << "\n";
  }
};

void emit_header(JsonWriter& w, const std::string& command) {
  w.field("schema_version", kSchemaVersion);
  w.field("tool_version", kToolVersion);
  w.field("command", command);
}

void emit_params(JsonWriter& w, const ModelParams& p) {
  w.key("params").begin_object();
  w.field("n", p.n_sites);
  w.field("p", p.edge_prob);
  w.field("beta", p.beta);
  w.field("gamma", p.gamma());
  w.end_object();
}

int run_sample_graph(int n, double p, std::uint64_t seed,
                     const std::string& binary_out, const OutputSink& sink) {
  const ModelParams params(n, p, 0.5);
  const auto g = sample_graph(params, seed);
  if (!binary_out.empty()) {
    std::ofstream os(binary_out, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + binary_out);
    g.write_binary(os);
  }
  JsonWriter w;
  w.begin_object();
  emit_header(w, "sample-graph");
  w.key("config").begin_object();
  w.field("n", n).field("p", p).field("seed", seed);
  w.field("binary_out", binary_out);
  w.end_object();
  w.key("result").begin_object();
  w.field("total_edges", g.total_edges());
  w.field("diag_edges", g.diag_edges());
  if (n <= 64) w.field("graph", g.to_json_debug());
  w.end_object();
  w.end_object();
  sink.write(w.str());
  return 0;
}

int run_enumerate(int n, double p, double beta, std::uint64_t seed, int shards,
                  int threads, int ceiling, const OutputSink& sink) {
  const ModelParams params(n, p, beta);
  EnumerationOptions opts;
  opts.ceiling = ceiling;
  opts.shards = shards;
  opts.threads = threads;
  const auto g = sample_graph(params, seed);
  const auto r = enumerate_all(g, params, opts);
  JsonWriter w;
  w.begin_object();
  emit_header(w, "enumerate");
  w.key("config").begin_object();
  w.field("n", n).field("p", p).field("beta", beta).field("seed", seed);
  w.field("shards", shards).field("threads", threads);
  w.field("ceiling", ceiling);
  w.end_object();
  w.key("result").begin_object();
  emit_params(w, params);
  w.field("log_z", r.log_z);
  w.field("hat_defined", r.hat_defined);
  if (r.hat_defined)
    w.field("log_z_hat", r.log_z_hat);
  else
    w.key("log_z_hat").null_value();
  w.field("log_z_tilde", r.log_z_tilde);
  w.field("w_statistic", r.w_statistic);
  w.field("w_scaled", r.w_scaled);
  w.field("x_residual", r.x_residual);
  w.field("x_residual_scaled", r.x_scaled);
  w.field("free_energy_per_site", r.free_energy_per_site);
  w.field("xi", r.xi);
  w.field("eta", r.eta);
  w.field("total_edges", r.total_edges);
  w.field("diag_edges", r.diag_edges);
  w.field("n_configs", static_cast<std::uint64_t>(r.n_configs));
  w.end_object();
  w.key("timing").begin_object();
  w.field("elapsed_seconds", r.elapsed_seconds);
  w.end_object();
  w.end_object();
  sink.write(w.str());
  return 0;
}

int run_moments(const std::string& quantity, int n, double p, double beta,
                int k, int l, int m, int cubic_ceiling, int threads,
                const OutputSink& sink) {
  const ModelParams params(n, p, beta);
  VarianceOptions vopts;
  vopts.cubic_ceiling = cubic_ceiling;
  vopts.threads = threads;
  const PairClass cls{k, l, m};

  bool is_log = true;
  double value = 0;
  if (quantity == "expected-boltzmann") {
    value = expected_boltzmann_log(params, k);
  } else if (quantity == "expected-partition") {
    value = expected_partition_log(params);
  } else if (quantity == "joint-expected-boltzmann") {
    value = joint_expected_boltzmann_log(params, cls);
  } else if (quantity == "cov-hamiltonians") {
    value = cov_hamiltonians(params, cls);
    is_log = false;
  } else if (quantity == "cov-boltzmann-hamiltonian") {
    value = cov_boltzmann_hamiltonian_scaled(params, cls);
    is_log = false;
  } else if (quantity == "expected-t") {
    value = expected_T_log(params, k);
  } else if (quantity == "joint-expected-t") {
    value = joint_expected_T_log(params, cls);
  } else if (quantity == "expected-hat-partition") {
    value = expected_hat_partition_log(params);
  } else if (quantity == "expected-tilde-partition") {
    value = expected_tilde_partition_log(params);
  } else if (quantity == "variance-partition") {
    value = exact_variance_partition(params, vopts);
    is_log = false;
  } else if (quantity == "variance-hat") {
    value = exact_variance_hatZ(params, vopts);
    is_log = false;
  } else if (quantity == "variance-tilde") {
    value = exact_variance_tildeZ(params, vopts);
    is_log = false;
  } else if (quantity == "variance-w") {
    value = exact_variance_W(params, vopts);
    is_log = false;
  } else {
    throw std::invalid_argument("unknown quantity: " + quantity);
  }

  JsonWriter w;
  w.begin_object();
  emit_header(w, "moments");
  w.key("config").begin_object();
  w.field("quantity", quantity);
  w.field("n", n).field("p", p).field("beta", beta);
  w.field("k", k).field("l", l).field("m", m);
  w.field("cubic_ceiling", cubic_ceiling);
  w.end_object();
  w.key("result").begin_object();
  emit_params(w, params);
  w.field("quantity", quantity);
  w.field(is_log ? "log_value" : "value", value);
  w.field("method", "closed-form");
  w.end_object();
  w.end_object();
  sink.write(w.str());
  return 0;
}

int run_nu_count(int n, int k, int l, int m, const OutputSink& sink) {
  const PairClass cls{k, l, m};
  const BigInt nu = nu_count(n, cls);
  JsonWriter w;
  w.begin_object();
  emit_header(w, "nu-count");
  w.key("config").begin_object();
  w.field("n", n).field("k", k).field("l", l).field("m", m);
  w.end_object();
  w.key("result").begin_object();
  w.field("realizable", class_realizable(n, cls));
  w.field("nu", nu.str());
  if (class_realizable(n, cls)) {
    w.field("log_nu", log_nu(n, cls));
    w.field("lclt_ratio", lclt_ratio(n, cls));
  }
  w.end_object();
  w.end_object();
  sink.write(w.str());
  return 0;
}

int run_verify_expansions(const OutputSink& sink) {
  const auto reports = verify_all_claims();
  JsonWriter w;
  w.begin_object();
  emit_header(w, "verify-expansions");
  w.key("result").begin_array();
  for (const auto& rep : reports) {
    w.begin_object();
    w.field("claim_id", claim_name(rep.id));
    w.field("slope_tolerance", rep.slope_tolerance);
    w.key("orders").begin_array();
    for (const auto& fit : rep.fits) {
      w.begin_object();
      w.key("claimed").begin_object();
      w.field("p_power", fit.claimed.p_pow).field("z_power", fit.claimed.z_pow);
      w.end_object();
      w.key("z_window").begin_object();
      w.field("fixed_p", fit.z_window.fixed);
      w.field("lo", fit.z_window.lo).field("hi", fit.z_window.hi);
      w.end_object();
      w.field("fitted_z_slope", fit.fitted_z_slope);
      if (fit.has_p_fit) {
        w.key("p_window").begin_object();
        w.field("fixed_z", fit.p_window.fixed);
        w.field("lo", fit.p_window.lo).field("hi", fit.p_window.hi);
        w.end_object();
        w.field("fitted_p_slope", fit.fitted_p_slope);
      }
      w.field("pass", fit.pass);
      w.end_object();
    }
    w.end_array();
    if (rep.has_alt_reading) {
      w.field("alt_reading_z_slope", rep.alt_reading_z_slope);
      w.field("note", rep.note);
    }
    w.field("pass", rep.pass);
    w.end_object();
  }
  w.end_array();
  w.end_object();
  sink.write(w.str());
  bool all = true;
  for (const auto& rep : reports) all = all && rep.pass;
  return all ? 0 : 1;
}

void emit_trials_csv(const std::string& path,
                     const std::vector<TrialRecord>& trials) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open CSV path: " + path);
  os << "seed,statistic,log_z,total_edges,diag_edges\n";
  for (const auto& t : trials)
    os << t.seed << ',' << format_double_17(t.statistic) << ','
       << format_double_17(t.log_z) << ',' << t.total_edges << ','
       << t.diag_edges << "\n";
}

int run_clt_experiment(const std::string& theorem, int n, int trials,
                       std::uint64_t seed, double c, double p_exponent,
                       bool has_c, bool has_exp, double p_fixed, bool has_p,
                       double beta, int threads, int ceiling,
                       int cubic_ceiling, const std::string& csv_path,
                       const OutputSink& sink) {
  RegimeSpec spec;
  spec.theorem = theorem_from_name(theorem);
  if (has_c) spec.c_value = c;
  if (has_exp) spec.p_exponent = p_exponent;
  if (has_p) spec.p_fixed = p_fixed;
  ExperimentOptions opts;
  opts.enumeration.ceiling = ceiling;
  opts.cubic_ceiling = cubic_ceiling;
  opts.threads = threads;
  const auto t0 = std::chrono::steady_clock::now();
  const auto rep = run_clt_trials(spec, n, beta, trials, seed, opts);
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  if (!csv_path.empty()) emit_trials_csv(csv_path, rep.trials);

  JsonWriter w;
  w.begin_object();
  emit_header(w, "clt-experiment");
  w.key("config").begin_object();
  w.field("theorem", theorem);
  w.field("n", n).field("trials", trials).field("seed", seed);
  w.field("beta", beta);
  if (has_c) w.field("c", c);
  if (has_exp) w.field("p_exponent", p_exponent);
  if (has_p) w.field("p", p_fixed);
  w.field("threads", threads);
  w.field("enumeration_ceiling", ceiling);
  w.field("cubic_ceiling", cubic_ceiling);
  w.end_object();
  w.key("result").begin_object();
  w.field("theorem", theorem_name(rep.theorem));
  w.field("n", rep.n_sites);
  w.field("p", rep.edge_prob);
  w.field("beta", rep.beta);
  w.field("c", rep.c_value);
  w.field("coupling", rep.coupling);
  w.field("master_seed", rep.master_seed);
  w.field("n_trials", rep.n_trials);
  w.field("empirical_mean", rep.empirical_mean);
  w.field("empirical_variance", rep.empirical_variance);
  w.field("variance_jackknife_se", rep.variance_jackknife_se);
  w.field("predicted_mean", rep.predicted_mean);
  w.field("predicted_variance", rep.predicted_variance);
  w.field("ks_statistic", rep.ks_statistic);
  w.field("ks_fitted", rep.ks_fitted);
  w.field("exact_variance_available", rep.exact_variance_available);
  if (rep.exact_variance_available)
    w.field("exact_statistic_variance", rep.exact_statistic_variance);
  w.end_object();
  w.key("timing").begin_object();
  w.field("elapsed_seconds", elapsed);
  w.end_object();
  w.end_object();
  sink.write(w.str());
  return 0;
}

int run_variance_trend(const std::string& kind_name, std::vector<int> n_list,
                       double beta, double p_exponent, bool has_exp,
                       double p_fixed, bool has_p, int cubic_ceiling,
                       int threads, const OutputSink& sink) {
  TrendKind kind;
  if (kind_name == "T1")
    kind = TrendKind::T1;
  else if (kind_name == "T2b")
    kind = TrendKind::T2b;
  else if (kind_name == "var-sum")
    kind = TrendKind::VarSum;
  else if (kind_name == "vw")
    kind = TrendKind::VW;
  else
    throw std::invalid_argument("unknown trend kind: " + kind_name);

  RegimeSpec coupling;
  coupling.theorem = kind == TrendKind::T2b ? TheoremId::T2b : TheoremId::T1;
  if (has_exp) coupling.p_exponent = p_exponent;
  if (has_p) coupling.p_fixed = p_fixed;
  if (!has_exp && !has_p && kind != TrendKind::T2b) coupling.p_fixed = 0.5;

  ExperimentOptions opts;
  opts.cubic_ceiling = cubic_ceiling;
  opts.threads = threads;
  const auto rows = variance_trend(kind, n_list, beta, coupling, opts);

  JsonWriter w;
  w.begin_object();
  emit_header(w, "variance-trend");
  w.key("config").begin_object();
  w.field("kind", kind_name);
  w.key("n_list").begin_array();
  for (int n : n_list) w.value(n);
  w.end_array();
  w.field("beta", beta);
  if (has_exp) w.field("p_exponent", p_exponent);
  if (has_p) w.field("p", p_fixed);
  w.field("cubic_ceiling", cubic_ceiling);
  w.end_object();
  w.key("result").begin_array();
  for (const auto& row : rows) {
    w.begin_object();
    w.field("n", row.n_sites);
    w.field("p", row.edge_prob);
    w.field("scaled_variance", row.scaled_variance);
    w.field("predicted", row.predicted);
    w.field("gap", row.gap);
    w.end_object();
  }
  w.end_array();
  w.end_object();
  sink.write(w.str());
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"dilute Curie-Weiss partition-function laboratory"};
  app.require_subcommand(1);

  OutputSink sink;
  app.add_option("--out", sink.path, "write JSON to this path instead of stdout");

  int n = 8;
  double p = 0.5, beta = 0.5;
  std::uint64_t seed = 1;
  int threads = 0;

  auto* sg = app.add_subcommand("sample-graph", "sample an adjacency matrix");
  std::string binary_out;
  sg->add_option("--n", n)->required();
  sg->add_option("--p", p)->required();
  sg->add_option("--seed", seed)->required();
  sg->add_option("--binary-out", binary_out, "write the binary graph format");

  auto* en = app.add_subcommand("enumerate", "exact 2^N enumeration");
  int shards = 0, ceiling = 26;
  en->add_option("--n", n)->required();
  en->add_option("--p", p)->required();
  en->add_option("--beta", beta)->required();
  en->add_option("--seed", seed)->required();
  en->add_option("--shards", shards, "power-of-two shard count (0 = auto)");
  en->add_option("--threads", threads, "worker count (0 = env/hardware)");
  en->add_option("--max-enum-n", ceiling, "enumeration ceiling override");

  auto* mo = app.add_subcommand("moments", "closed-form graph moments");
  std::string quantity;
  int k = 0, l = 0, m = 0, cubic = 800;
  mo->add_option("--quantity", quantity)->required();
  mo->add_option("--n", n)->required();
  mo->add_option("--p", p)->required();
  mo->add_option("--beta", beta)->required();
  mo->add_option("--k", k);
  mo->add_option("--l", l);
  mo->add_option("--m", m);
  mo->add_option("--max-cubic-n", cubic, "class-sum ceiling override");
  mo->add_option("--threads", threads);

  auto* nu = app.add_subcommand("nu-count", "exact pair-class count");
  nu->add_option("--n", n)->required();
  nu->add_option("--k", k)->required();
  nu->add_option("--l", l)->required();
  nu->add_option("--m", m)->required();

  auto* ve = app.add_subcommand("verify-expansions",
                                "series-order checks for the F_m claims");

  auto* ce = app.add_subcommand("clt-experiment", "Monte Carlo regime harness");
  std::string theorem = "T1", csv_path;
  int trials = 100;
  double c_value = 1.0, p_exponent = 0.0, p_fixed = 0.0;
  ce->add_option("--theorem", theorem)->required();
  ce->add_option("--n", n)->required();
  ce->add_option("--trials", trials)->required();
  ce->add_option("--seed", seed)->required();
  ce->add_option("--beta", beta);
  auto* copt = ce->add_option("--c", c_value, "regime constant c");
  auto* eopt = ce->add_option("--p-exponent", p_exponent, "p = N^exponent");
  auto* popt = ce->add_option("--p", p_fixed, "fixed p override");
  ce->add_option("--threads", threads);
  ce->add_option("--max-enum-n", ceiling);
  ce->add_option("--max-cubic-n", cubic);
  ce->add_option("--csv", csv_path, "also dump per-trial rows as CSV");

  auto* vt = app.add_subcommand("variance-trend", "exact variance trends");
  std::string kind = "T1";
  std::string n_list_arg = "50,100,200";
  vt->add_option("--kind", kind, "T1 | T2b | var-sum | vw")->required();
  vt->add_option("--n-list", n_list_arg, "comma-separated N values")->required();
  vt->add_option("--beta", beta);
  auto* veopt = vt->add_option("--p-exponent", p_exponent);
  auto* vpopt = vt->add_option("--p", p_fixed);
  vt->add_option("--max-cubic-n", cubic);
  vt->add_option("--threads", threads);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) { // --help
      std::cout << app.help();
      return 0;
    }
    std::cerr << app.help() << "\nerror: " << e.what() << "\n";
    return 1;
  }

  try {
    if (sg->parsed()) return run_sample_graph(n, p, seed, binary_out, sink);
    if (en->parsed())
      return run_enumerate(n, p, beta, seed, shards, threads, ceiling, sink);
    if (mo->parsed())
      return run_moments(quantity, n, p, beta, k, l, m, cubic, threads, sink);
    if (nu->parsed()) return run_nu_count(n, k, l, m, sink);
    if (ve->parsed()) return run_verify_expansions(sink);
    if (ce->parsed())
      return run_clt_experiment(theorem, n, trials, seed, c_value, p_exponent,
                                !copt->empty(), !eopt->empty(), p_fixed,
                                !popt->empty(), beta, threads, ceiling, cubic,
                                csv_path, sink);
    if (vt->parsed()) {
      std::vector<int> n_list;
      std::stringstream ss(n_list_arg);
      std::string tok;
      while (std::getline(ss, tok, ',')) n_list.push_back(std::stoi(tok));
      return run_variance_trend(kind, n_list, beta, p_exponent,
                                !veopt->empty(), p_fixed, !vpopt->empty(),
                                cubic, threads, sink);
    }
  } catch (const std::length_error& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
