// Command-line driver: verification suites, deterministic point-cloud
// sampling, topology predictions and serialization round trips for the
// division-algebra quadric varieties.

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "divquad/io.hpp"
#include "divquad/report.hpp"
#include "divquad/sampling.hpp"
#include "divquad/suites.hpp"
#include "divquad/topology.hpp"

namespace {

using namespace divquad;

struct CommonOptions {
  int n = 2;
  int m = -1;  // -1: standard (n+1) unless a frame file or explicit m is given
  int s = 1;
  std::string field = "complex";
  std::string frame = "standard";
  std::uint64_t seed = 0;
  long long count = 1000;
  double tol = 0.0;  // 0: per-operation defaults
  std::string out;
};

void add_common(CLI::App* cmd, CommonOptions& opt, bool with_count = true) {
  cmd->add_option("--n", opt.n, "algebra dimension")->check(CLI::IsMember({1, 2, 4, 8}));
  cmd->add_option("--m", opt.m, "number of Z coordinates (default: n+1 standard)");
  cmd->add_option("--s", opt.s, "number of (V,W) pairs");
  cmd->add_option("--field", opt.field, "scalar field for the Z coordinates")
      ->check(CLI::IsMember({"real", "complex"}));
  cmd->add_option("--frame", opt.frame, "'standard' or path to a frame file");
  cmd->add_option("--seed", opt.seed, "random seed");
  if (with_count) cmd->add_option("--count", opt.count, "number of samples/points");
  cmd->add_option("--tol", opt.tol, "tolerance override where applicable");
  cmd->add_option("--out", opt.out, "output path (default: stdout)");
}

Field parse_field(const std::string& f) { return f == "real" ? Field::Real : Field::Complex; }

VarietySpec spec_from_options(const CommonOptions& opt) {
  const Field field = parse_field(opt.field);
  if (opt.frame != "standard") {
    auto vectors = load_frame_file(opt.frame, opt.n);
    if (opt.m >= 0 && opt.m != static_cast<int>(vectors.size())) {
      throw CLI::ValidationError("--m disagrees with the frame file line count");
    }
    return VarietySpec::general(opt.n, std::move(vectors), opt.s, field);
  }
  if (opt.m == 0) {
    return VarietySpec::general(opt.n, {}, opt.s, field);
  }
  if (opt.m > 0 && opt.m != opt.n + 1) {
    throw CLI::ValidationError("non-standard m requires an explicit frame file");
  }
  if (opt.s != 1) {
    throw CLI::ValidationError("s > 1 requires an explicit frame file or m = 0");
  }
  return VarietySpec::standard_spec(opt.n, field);
}

int emit_report(Report& report, const CommonOptions& opt,
                std::chrono::steady_clock::time_point start) {
  report.timing_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
          .count();
  if (opt.out.empty()) {
    report.write(std::cout);
  } else {
    std::ofstream f(opt.out);
    if (!f) {
      std::cerr << "error: cannot open output path " << opt.out << "\n";
      return 2;
    }
    report.write(f);
  }
  return report.all_pass() ? 0 : 1;
}

void echo_config(Report& report, const CommonOptions& opt, bool with_count = true) {
  report.config.emplace_back("n", std::to_string(opt.n));
  if (opt.m >= 0) report.config.emplace_back("m", std::to_string(opt.m));
  if (opt.s != 1) report.config.emplace_back("s", std::to_string(opt.s));
  report.config.emplace_back("field", opt.field);
  report.config.emplace_back("frame", opt.frame);
  report.config.emplace_back("seed", std::to_string(opt.seed));
  if (with_count) report.config.emplace_back("count", std::to_string(opt.count));
}

void append_prediction_payload(Report& report, const VarietySpec& spec) {
  const DiffeotypeDescriptor type = predicted_type(spec);
  report.payload.push_back("prediction:");
  std::string kind;
  switch (type.kind) {
    case DiffeoKind::ConnectedSum: kind = "connected-sum"; break;
    case DiffeoKind::SphereProduct: kind = "sphere-product"; break;
    case DiffeoKind::Stiefel: kind = "stiefel"; break;
    case DiffeoKind::NoPrediction: kind = "none"; break;
  }
  report.payload.push_back("  kind: " + kind);
  report.payload.push_back("  description: " + type.describe());
  report.payload.push_back("  dimension: " + std::to_string(type.dimension));
  if (type.kind != DiffeoKind::NoPrediction) {
    std::ostringstream betti;
    betti << "  betti: [";
    for (std::size_t k = 0; k < type.betti.betti.size(); ++k) {
      if (k) betti << ", ";
      betti << type.betti.betti[k];
    }
    betti << "]";
    report.payload.push_back(betti.str());
    report.payload.push_back("  betti_sum: " + std::to_string(type.betti.betti_sum()));
    report.payload.push_back(
        "  euler_characteristic: " + std::to_string(type.betti.euler_characteristic()));
  }
  if (!type.summands.empty()) {
    report.payload.push_back("  summands:");
    for (const auto& s : type.summands) {
      report.payload.push_back("    - { a: " + std::to_string(s.a) +
                               ", b: " + std::to_string(s.b) +
                               ", multiplicity: " + std::to_string(s.multiplicity) + " }");
    }
  }
  if (!type.note.empty()) report.payload.push_back("  note: " + type.note);

  if (type.kind != DiffeoKind::NoPrediction) {
    const FreenessVerdict v = freeness_verdict(spec);
    report.payload.push_back("freeness:");
    report.payload.push_back(std::string("  verdict: ") +
                             (v.verdict == Freeness::Free ? "free" : "torsion-free-not-free"));
    report.payload.push_back("  manifold_betti_sum: " +
                             std::to_string(v.manifold_betti_sum));
    report.payload.push_back("  fixed_set_betti_sum: " +
                             std::to_string(v.fixed_set_betti_sum));
  }

  if (spec.standard && spec.field == Field::Complex) {
    report.payload.push_back("fixed_sets:");
    for (int count = 1; count <= spec.n + 1; ++count) {
      const auto fs = fixed_set_prediction(spec, count);
      report.payload.push_back("  - { fixed_circles: " + std::to_string(count) +
                               ", type: " + fs.describe() + " }");
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"division-algebra quadric varieties: verification and predictions"};
  app.require_subcommand(1);

  CommonOptions opt;

  auto* verify_algebra = app.add_subcommand("verify-algebra", "algebra identity suite");
  auto* verify_simplex = app.add_subcommand("verify-simplex", "symmetric frame suite");
  auto* verify_variety = app.add_subcommand("verify-variety", "variety sampling suite");
  auto* verify_maps = app.add_subcommand("verify-maps", "coordinate-change map suite");
  auto* verify_fixed =
      app.add_subcommand("verify-fixed-points", "fixed-point structure suite");
  auto* sample_cmd = app.add_subcommand("sample", "sample points and write a point cloud");
  auto* predict_cmd = app.add_subcommand("predict", "emit topology predictions");
  auto* roundtrip_cmd =
      app.add_subcommand("roundtrip", "serialization round-trip self-check");

  for (auto* cmd : {verify_algebra, verify_simplex, verify_variety, verify_maps,
                    verify_fixed, sample_cmd, predict_cmd, roundtrip_cmd}) {
    add_common(cmd, opt, cmd != predict_cmd);
  }

  CLI11_PARSE(app, argc, argv);
  const auto start = std::chrono::steady_clock::now();

  try {
    Report report;

    if (verify_algebra->parsed()) {
      report.command = "verify-algebra";
      echo_config(report, opt);
      const long long count = opt.count > 0 ? opt.count : 10000;
      report.checks = suites::algebra_suite(opt.n, opt.seed, count);
      return emit_report(report, opt, start);
    }

    if (verify_simplex->parsed()) {
      report.command = "verify-simplex";
      echo_config(report, opt);
      report.checks = suites::simplex_suite(opt.n, opt.seed, opt.count);
      return emit_report(report, opt, start);
    }

    if (verify_variety->parsed()) {
      report.command = "verify-variety";
      echo_config(report, opt);
      report.checks =
          suites::variety_suite(opt.n, opt.seed, opt.count, parse_field(opt.field));
      return emit_report(report, opt, start);
    }

    if (verify_maps->parsed()) {
      report.command = "verify-maps";
      echo_config(report, opt);
      report.checks = suites::maps_suite(opt.n, opt.seed, 10 * opt.count, opt.count);
      return emit_report(report, opt, start);
    }

    if (verify_fixed->parsed()) {
      report.command = "verify-fixed-points";
      echo_config(report, opt);
      report.checks =
          suites::fixed_points_suite(opt.n, opt.seed, opt.count, parse_field(opt.field));
      return emit_report(report, opt, start);
    }

    if (sample_cmd->parsed()) {
      report.command = "sample";
      echo_config(report, opt);
      const VarietySpec spec = spec_from_options(opt);
      ProjectionOptions popts;
      if (opt.tol > 0) popts.accept_tol = opt.tol;
      const auto points = sample(spec, opt.seed, opt.count, popts);
      double worst = 0.0;
      for (const auto& p : points) worst = std::max(worst, eval_defining(spec, p).norm());
      report.checks.push_back(CheckResult{"sample-residual", worst <= popts.accept_tol,
                                          opt.count, worst, {}});
      if (opt.out.empty()) {
        write_point_cloud(std::cout, spec, points);
        report.write(std::cerr);
        return report.all_pass() ? 0 : 1;
      }
      std::ofstream f(opt.out);
      if (!f) {
        std::cerr << "error: cannot open output path " << opt.out << "\n";
        return 2;
      }
      write_point_cloud(f, spec, points);
      CommonOptions console = opt;
      console.out.clear();  // report accompanies the cloud on stdout
      return emit_report(report, console, start);
    }

    if (predict_cmd->parsed()) {
      report.command = "predict";
      echo_config(report, opt, false);
      const VarietySpec spec = spec_from_options(opt);
      append_prediction_payload(report, spec);
      report.checks.push_back(CheckResult{"prediction-emitted", true, 1, 0.0, {}});
      return emit_report(report, opt, start);
    }

    if (roundtrip_cmd->parsed()) {
      report.command = "roundtrip";
      echo_config(report, opt);
      const VarietySpec spec = spec_from_options(opt);
      const auto points = sample(spec, opt.seed, opt.count);
      std::ostringstream first;
      write_point_cloud(first, spec, points);
      std::istringstream parse_in(first.str());
      const PointCloud cloud = read_point_cloud(parse_in);
      std::ostringstream second;
      for (const auto& xs : cloud.coords) {
        second << cloud_line_from_coords(cloud.header, xs) << '\n';
      }
      const bool identical = first.str() == second.str();
      report.checks.push_back(CheckResult{
          "serialization-bit-exact", identical && cloud.coords.size() == points.size(),
          opt.count, 0.0, "parse and re-serialize reproduces the bytes"});
      if (!opt.out.empty()) {
        std::ofstream f(opt.out);
        f << first.str();
      }
      CommonOptions console = opt;
      console.out.clear();
      return emit_report(report, console, start);
    }
  } catch (const NotWeaklyHyperbolic& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  return 2;
}
