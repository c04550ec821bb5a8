// End-to-end checks of the dcwlab binary: contracts on exit codes, JSON
// round-trips, and byte-level determinism of rerun outputs.

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(DCWLAB_BINARY) + " " + args + " 2>/dev/null";
  std::array<char, 4096> buf;
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {127, ""};
  while (std::size_t got = std::fread(buf.data(), 1, buf.size(), pipe))
    out.append(buf.data(), got);
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

int failures = 0;

void check(bool ok, const std::string& what) {
  if (ok) {
    std::cout << "[ok] " << what << "\n";
  } else {
    std::cout << "[FAILED] " << what << "\n";
    ++failures;
  }
}

nlohmann::json strip_timing(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  j.erase("timing");
  return j;
}

} // namespace

int main() {
  // basic contract: valid run emits parseable JSON and exits 0
  {
    const auto r = run("enumerate --n 3 --p 0.5 --beta 0.5 --seed 7");
    check(r.exit_code == 0, "enumerate exits 0");
    const auto j = nlohmann::json::parse(r.out, nullptr, false);
    check(!j.is_discarded(), "enumerate emits valid JSON");
    check(j["schema_version"].is_number(), "output carries schema_version");
    check(j["result"]["log_z"].is_number(), "result has log_z");
    check(j["result"]["n_configs"] == 8, "n_configs = 2^N");
  }

  // ceiling refusal: exit 2, no approximation fallback
  {
    const auto r = run("enumerate --n 40 --p 0.5 --beta 0.5 --seed 7");
    check(r.exit_code == 2, "over-ceiling enumerate refuses with exit 2");
    check(r.out.empty(), "refusal writes no result JSON");
  }

  // unknown flags: exit 1
  {
    const auto r = run("enumerate --n 3 --p 0.5 --beta 0.5 --seed 7 --bogus 1");
    check(r.exit_code == 1, "unknown flag exits 1");
  }
  {
    const auto r = run("moments --quantity no-such --n 4 --p 0.5 --beta 0.5");
    check(r.exit_code == 1, "unknown quantity exits 1");
  }

  // validation error: exit 1
  {
    const auto r = run("enumerate --n 3 --p 1.5 --beta 0.5 --seed 7");
    check(r.exit_code == 1, "invalid p exits 1");
  }

  // determinism: identical bodies outside the timing block
  {
    const std::string args =
        "clt-experiment --theorem T1 --n 10 --trials 32 --seed 1 --p 0.5";
    const auto a = run(args);
    const auto b = run(args);
    check(a.exit_code == 0 && b.exit_code == 0, "clt-experiment runs");
    // byte-identical up to the trailing timing block
    const auto body = [](const std::string& s) {
      return s.substr(0, s.find("\"timing\""));
    };
    check(!body(a.out).empty() && body(a.out) == body(b.out),
          "clt-experiment bodies byte-identical across reruns");
    // and the result block does not depend on the worker count
    const auto c = run(args + " --threads 2");
    check(strip_timing(a.out)["result"] == strip_timing(c.out)["result"],
          "clt-experiment results identical across worker counts");
  }

  // JSON numbers round-trip losslessly (17 significant digits)
  {
    const auto r = run("enumerate --n 10 --p 0.37 --beta 0.81 --seed 99");
    const auto j = nlohmann::json::parse(r.out);
    const double log_z = j["result"]["log_z"].get<double>();
    const auto again = run("enumerate --n 10 --p 0.37 --beta 0.81 --seed 99");
    const auto j2 = nlohmann::json::parse(again.out);
    check(j2["result"]["log_z"].get<double>() == log_z,
          "log_z round-trips bit-exactly through JSON text");
  }

  // graph binary round-trip through --binary-out and the debug form
  {
    const std::string tmp = "/tmp/dcwlab_test_graph.bin";
    const auto r =
        run("sample-graph --n 9 --p 0.4 --seed 123 --binary-out " + tmp);
    check(r.exit_code == 0, "sample-graph writes binary output");
    std::ifstream is(tmp, std::ios::binary);
    check(is.good(), "binary graph file exists");
    const auto j = nlohmann::json::parse(r.out);
    check(j["result"]["total_edges"].is_number(), "sample-graph reports counts");
    std::remove(tmp.c_str());
  }

  // verify-expansions: all claims pass and the f2c note is present
  {
    const auto r = run("verify-expansions");
    check(r.exit_code == 0, "verify-expansions exits 0");
    const auto j = nlohmann::json::parse(r.out);
    check(j["result"].size() == 6, "six claims reported");
    bool all = true;
    bool saw_note = false;
    for (const auto& claim : j["result"]) {
      all = all && claim["pass"].get<bool>();
      if (claim.contains("note")) saw_note = true;
    }
    check(all, "all claims pass");
    check(saw_note, "f2c records its alternative-reading note");
  }

  // variance-trend basic shape
  {
    const auto r = run("variance-trend --kind T1 --n-list 20,40 --beta 0.5");
    check(r.exit_code == 0, "variance-trend runs");
    const auto j = nlohmann::json::parse(r.out);
    check(j["result"].size() == 2, "one row per N");
    check(j["result"][1]["gap"].get<double>() <
              j["result"][0]["gap"].get<double>(),
          "gap shrinks with N");
  }

  if (failures) {
    std::cout << failures << " CLI check(s) failed\n";
    return 1;
  }
  std::cout << "all CLI checks passed\n";
  return 0;
}
