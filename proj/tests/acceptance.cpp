// Acceptance suite: runs each criterion at its stated tolerance and prints
// one pass/fail line per criterion. Exit status 0 only when every criterion
// passes. argv[1] must be the path to the CLI binary (used by the
// determinism criterion).

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "divquad/io.hpp"
#include "divquad/suites.hpp"

using namespace divquad;

namespace {

struct Criterion {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool all_pass(const std::vector<CheckResult>& checks, double& worst, std::string& failed) {
  bool ok = true;
  for (const auto& c : checks) {
    // The witness check reports the associativity gap, which is large by
    // design; it is not an identity residual.
    if (c.name != "nonassociativity-witness") worst = std::max(worst, c.max_residual);
    if (!c.pass) {
      ok = false;
      failed += (failed.empty() ? "" : ", ") + c.name;
    }
  }
  return ok;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

std::string strip_timing(const std::string& text) {
  std::istringstream in(text);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("timing_ms:", 0) == 0) continue;
    out << line << '\n';
  }
  return out.str();
}

int run_command(const std::string& cmd) { return std::system(cmd.c_str()); }

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <path-to-cli-binary>\n";
    return 2;
  }
  const std::string cli = argv[1];
  const int dims[] = {1, 2, 4, 8};
  std::vector<std::pair<std::string, Criterion>> results;

  // Criterion 1: algebra identities at 1e-12, 10^4 tuples per dimension,
  // with a nonassociativity witness; under 5 seconds.
  {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    std::string failed;
    bool ok = true;
    bool witness = false;
    for (int n : dims) {
      const auto checks = suites::algebra_suite(n, 1, 10000);
      ok = all_pass(checks, worst, failed) && ok;
      for (const auto& c : checks) witness = witness || c.name == "nonassociativity-witness";
    }
    const double dt = seconds_since(t0);
    ok = ok && witness && dt < 5.0;
    std::ostringstream os;
    os << "10000 tuples per n, max residual " << format_residual(worst) << ", witness "
       << (witness ? "found" : "missing") << ", " << format_residual(dt) << "s < 5s";
    if (!failed.empty()) os << "; failed: " << failed;
    results.push_back({"criterion 1 (algebra identities)", {ok, os.str()}});
  }

  // Criterion 2: frame conditions and span round trips at 1e-12, 10^3 random
  // inputs; under 1 second.
  {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    std::string failed;
    bool ok = true;
    for (int n : dims) {
      ok = all_pass(suites::simplex_suite(n, 2, 1000), worst, failed) && ok;
    }
    const double dt = seconds_since(t0);
    ok = ok && dt < 1.0;
    std::ostringstream os;
    os << "all four dimensions, max residual " << format_residual(worst) << ", "
       << format_residual(dt) << "s < 1s";
    if (!failed.empty()) os << "; failed: " << failed;
    results.push_back({"criterion 2 (simplex frame)", {ok, os.str()}});
  }

  // Criterion 3: 10^3 samples per dimension with residual 1e-10, regularity,
  // |VW| < 1/2, torus invariance 1e-14; the singular example flagged; the
  // three hull examples decided with certificates; under 30 seconds.
  {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    std::string failed;
    bool ok = true;
    for (int n : dims) {
      ok = all_pass(suites::variety_suite(n, 3, 1000, Field::Complex), worst, failed) && ok;
    }
    const double dt = seconds_since(t0);
    ok = ok && dt < 30.0;
    std::ostringstream os;
    os << "1000 samples per n, " << format_residual(dt) << "s < 30s";
    if (!failed.empty()) os << "; failed: " << failed;
    results.push_back({"criterion 3 (variety sampling and certificates)", {ok, os.str()}});
  }

  // Criterion 4: residual relation at 1e-12 on 10^4 ambient points per
  // dimension; both coordinate-change round trips at 1e-9 on 10^3 points
  // with at least 10 boundary points; compactified invariant at 1e-12;
  // under 60 seconds total.
  {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    std::string failed;
    bool ok = true;
    for (int n : dims) {
      ok = all_pass(suites::maps_suite(n, 4, 10000, 1000), worst, failed) && ok;
    }
    const double dt = seconds_since(t0);
    ok = ok && dt < 60.0;
    std::ostringstream os;
    os << "10000 ambient + 1000 variety points per n, " << format_residual(dt)
       << "s < 60s";
    if (!failed.empty()) os << "; failed: " << failed;
    results.push_back({"criterion 4 (coordinate-change maps)", {ok, os.str()}});
  }

  // Criterion 5: exact Poincare polynomials, the freeness dichotomy, and the
  // fixed-point structure over 10^3 samples per dimension; under 10 seconds.
  {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    std::string failed;
    bool ok = all_pass(suites::topology_suite(), worst, failed);
    for (int n : dims) {
      ok = all_pass(suites::fixed_points_suite(n, 5, 1000), worst, failed) && ok;
    }
    const double dt = seconds_since(t0);
    ok = ok && dt < 10.0;
    std::ostringstream os;
    os << "exact predictions plus 1000 fixed-set samples per n, " << format_residual(dt)
       << "s < 10s";
    if (!failed.empty()) os << "; failed: " << failed;
    results.push_back({"criterion 5 (topology predictions)", {ok, os.str()}});
  }

  // Criterion 6: identical flags give byte-identical point clouds and
  // identical reports (timing stripped).
  {
    bool ok = true;
    std::string detail;
    const std::string q = "\"" + cli + "\"";
    struct Run {
      std::string args;
      std::string out1, out2;
      bool is_cloud;
    };
    std::vector<Run> runs = {
        {" sample --n 2 --count 120 --seed 7 --out ", "acc6_cloud_a.txt", "acc6_cloud_b.txt",
         true},
        {" sample --n 1 --field real --count 80 --seed 9 --out ", "acc6_rcloud_a.txt",
         "acc6_rcloud_b.txt", true},
        {" predict --n 4 --field complex --out ", "acc6_pred_a.txt", "acc6_pred_b.txt",
         false},
        {" verify-simplex --n 4 --seed 3 --count 200 --out ", "acc6_rep_a.txt",
         "acc6_rep_b.txt", false},
    };
    for (const auto& r : runs) {
      const int rc1 = run_command(q + r.args + r.out1 + " >acc6_stdout.txt 2>&1");
      const int rc2 = run_command(q + r.args + r.out2 + " >acc6_stdout.txt 2>&1");
      if (rc1 != 0 || rc2 != 0) {
        ok = false;
        detail += "command failed (" + r.args + "); ";
        continue;
      }
      std::string a = read_file(r.out1);
      std::string b = read_file(r.out2);
      if (a.empty()) {
        ok = false;
        detail += "empty output (" + r.args + "); ";
      }
      if (!r.is_cloud) {
        a = strip_timing(a);
        b = strip_timing(b);
      }
      if (a != b) {
        ok = false;
        detail += "outputs differ (" + r.args + "); ";
      }
      std::remove(r.out1.c_str());
      std::remove(r.out2.c_str());
    }
    std::remove("acc6_stdout.txt");
    if (detail.empty()) {
      detail = "repeated runs byte-identical (reports compared without timing)";
    }
    results.push_back({"criterion 6 (determinism)", {ok, detail}});
  }

  bool all_ok = true;
  for (const auto& [name, crit] : results) {
    std::cout << (crit.pass ? "[PASS] " : "[FAIL] ") << name << ": " << crit.detail << "\n";
    all_ok = all_ok && crit.pass;
  }
  std::cout << (all_ok ? "acceptance: all criteria passed\n"
                       : "acceptance: at least one criterion failed\n");
  return all_ok ? 0 : 1;
}
