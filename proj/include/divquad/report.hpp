#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace divquad {

struct CheckResult {
  std::string name;
  bool pass = false;
  long long count = 0;
  double max_residual = 0.0;
  std::string detail;
};

inline std::string format_residual(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

/// Structured-text run report: command and config echo, one entry per check
/// (always listed, including passes), optional prediction payload, timing.
struct Report {
  std::string command;
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<CheckResult> checks;
  std::vector<std::string> payload;  // preformatted lines, written verbatim
  double timing_ms = 0.0;

  int failed_count() const {
    int f = 0;
    for (const auto& c : checks) {
      if (!c.pass) ++f;
    }
    return f;
  }

  bool all_pass() const { return failed_count() == 0; }

  void write(std::ostream& os, bool with_timing = true) const {
    os << "command: " << command << '\n';
    if (!config.empty()) {
      os << "config:\n";
      for (const auto& [k, v] : config) os << "  " << k << ": " << v << '\n';
    }
    if (!checks.empty()) {
      os << "checks:\n";
      for (const auto& c : checks) {
        os << "  - name: " << c.name << '\n';
        os << "    pass: " << (c.pass ? "true" : "false") << '\n';
        os << "    count: " << c.count << '\n';
        os << "    max_residual: " << format_residual(c.max_residual) << '\n';
        if (!c.detail.empty()) os << "    detail: " << c.detail << '\n';
      }
    }
    for (const auto& line : payload) os << line << '\n';
    os << "summary:\n";
    os << "  checks: " << checks.size() << '\n';
    os << "  failed: " << failed_count() << '\n';
    os << "  status: " << (all_pass() ? "pass" : "fail") << '\n';
    if (with_timing) os << "timing_ms: " << format_residual(timing_ms) << '\n';
  }
};

}  // namespace divquad
