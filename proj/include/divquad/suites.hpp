#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "divquad/hull.hpp"
#include "divquad/maps.hpp"
#include "divquad/report.hpp"
#include "divquad/sampling.hpp"
#include "divquad/simplex.hpp"
#include "divquad/topology.hpp"
#include "divquad/variety.hpp"

namespace divquad {
namespace suites {

namespace detail {

inline AlgebraElement random_nonzero(int n, Rng& rng) {
  for (;;) {
    AlgebraElement a = AlgebraElement::random_normal(n, rng);
    if (norm(a) > 1e-6) return a;
  }
}

inline CheckResult threshold_check(std::string name, double max_residual, double tol,
                                   long long count, std::string detail = {}) {
  return CheckResult{std::move(name), max_residual <= tol, count, max_residual,
                     std::move(detail)};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Algebra identities
// ---------------------------------------------------------------------------

inline std::vector<CheckResult> algebra_suite(int n, std::uint64_t seed,
                                              long long count = 10000) {
  require_algebra_dim(n);
  std::vector<CheckResult> checks;

  {
    Rng rng(derive_seed(seed, 1));
    double worst = 0.0;
    for (long long i = 0; i < count; ++i) {
      const AlgebraElement a = AlgebraElement::random_normal(n, rng);
      const AlgebraElement b = AlgebraElement::random_normal(n, rng);
      const double lhs = norm(mul(a, b));
      const double rhs = norm(a) * norm(b);
      worst = std::max(worst, std::abs(lhs - rhs) / (rhs + 1e-300));
    }
    checks.push_back(detail::threshold_check("composition-law", worst, 1e-12, count));
  }

  {
    Rng rng(derive_seed(seed, 2));
    double worst = 0.0;
    for (long long i = 0; i < count; ++i) {
      const AlgebraElement a = AlgebraElement::random_normal(n, rng);
      const AlgebraElement b = AlgebraElement::random_normal(n, rng);
      const AlgebraElement c = AlgebraElement::random_normal(n, rng);
      const double lhs = inner(mul(a, b), c);
      const double rhs = inner(b, mul(conj(a), c));
      worst = std::max(worst,
                       std::abs(lhs - rhs) / (norm(a) * norm(b) * norm(c) + 1e-300));
    }
    checks.push_back(detail::threshold_check("braid-law", worst, 1e-12, count));
  }

  {
    Rng rng(derive_seed(seed, 3));
    double worst = 0.0;
    for (long long i = 0; i < count; ++i) {
      const AlgebraElement a = AlgebraElement::random_normal(n, rng);
      const AlgebraElement b = AlgebraElement::random_normal(n, rng);
      const double scale = norm_sq(a) * norm(b) + 1e-300;
      worst = std::max(worst, norm(mul(a, mul(a, b)) - mul(mul(a, a), b)) / scale);
      worst = std::max(worst, norm(mul(mul(b, a), a) - mul(b, mul(a, a))) / scale);
    }
    checks.push_back(detail::threshold_check("alternativity", worst, 1e-12, count));
  }

  {
    Rng rng(derive_seed(seed, 4));
    double worst = 0.0;
    for (long long i = 0; i < count; ++i) {
      const AlgebraElement a = AlgebraElement::random_normal(n, rng);
      const AlgebraElement b = AlgebraElement::random_normal(n, rng);
      worst = std::max(worst, norm(conj(conj(a)) - a));
      worst = std::max(worst, std::abs(real_part(mul(a, b)) - real_part(mul(b, a))) /
                                  (norm(a) * norm(b) + 1e-300));
    }
    checks.push_back(
        detail::threshold_check("conjugation-involution-and-trace", worst, 1e-12, count));
  }

  {
    Rng rng(derive_seed(seed, 5));
    double worst = 0.0;
    const AlgebraElement one = AlgebraElement::one(n);
    for (long long i = 0; i < count; ++i) {
      const AlgebraElement a = detail::random_nonzero(n, rng);
      worst = std::max(worst, norm(mul(a, inverse(a)) - one));
    }
    checks.push_back(detail::threshold_check("inverse-identity", worst, 1e-12, count));
  }

  {
    Rng rng(derive_seed(seed, 6));
    double worst = 0.0;
    for (long long i = 0; i < count; ++i) {
      const AlgebraElement a = AlgebraElement::random_normal(n, rng);
      const AlgebraElement b = AlgebraElement::random_normal(n, rng);
      worst = std::max(worst, std::abs(inner(a, b) - real_part(mul(conj(a), b))) /
                                  (norm(a) * norm(b) + 1e-300));
    }
    checks.push_back(
        detail::threshold_check("inner-product-definition", worst, 1e-12, count));
  }

  if (n <= 4) {
    Rng rng(derive_seed(seed, 7));
    double worst = 0.0;
    for (long long i = 0; i < count; ++i) {
      const AlgebraElement a = AlgebraElement::random_normal(n, rng);
      const AlgebraElement b = AlgebraElement::random_normal(n, rng);
      const AlgebraElement c = AlgebraElement::random_normal(n, rng);
      worst = std::max(worst, norm(mul(mul(a, b), c) - mul(a, mul(b, c))) /
                                  (norm(a) * norm(b) * norm(c) + 1e-300));
    }
    checks.push_back(detail::threshold_check("associativity", worst, 1e-12, count));
  } else {
    // Enumerate all basis triples; associativity must fail for at least one.
    int wa = -1, wb = -1, wc = -1;
    double largest = 0.0;
    long long tried = 0;
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        for (int c = 0; c < n; ++c) {
          ++tried;
          const AlgebraElement ea = AlgebraElement::unit(n, a);
          const AlgebraElement eb = AlgebraElement::unit(n, b);
          const AlgebraElement ec = AlgebraElement::unit(n, c);
          const double gap = norm(mul(mul(ea, eb), ec) - mul(ea, mul(eb, ec)));
          if (gap > largest) {
            largest = gap;
            wa = a;
            wb = b;
            wc = c;
          }
        }
      }
    }
    std::ostringstream os;
    os << "witness (e" << wa << " e" << wb << ") e" << wc << " != e" << wa << " (e" << wb
       << " e" << wc << "), gap " << format_residual(largest);
    checks.push_back(CheckResult{"nonassociativity-witness", largest > 1.0, tried, largest,
                                 os.str()});
  }

  return checks;
}

// ---------------------------------------------------------------------------
// Simplex frame
// ---------------------------------------------------------------------------

inline std::vector<CheckResult> simplex_suite(int n, std::uint64_t seed,
                                              long long count = 1000) {
  require_algebra_dim(n);
  const SimplexFrame frame = build_lambda(n);
  std::vector<CheckResult> checks;

  {
    double worst = 0.0;
    for (int k = 0; k <= n; ++k) {
      for (int l = 0; l <= n; ++l) {
        const double target = (k == l) ? 1.0 : -1.0 / n;
        worst = std::max(worst, std::abs(inner(frame.vectors[static_cast<std::size_t>(k)],
                                               frame.vectors[static_cast<std::size_t>(l)]) -
                                         target));
      }
    }
    checks.push_back(detail::threshold_check("gram-conditions", worst, 1e-12,
                                             static_cast<long long>(n + 1) * (n + 1)));
  }

  {
    AlgebraElement sum(n);
    for (const auto& v : frame.vectors) sum += v;
    checks.push_back(detail::threshold_check("frame-sum-zero", norm(sum), 1e-12, n + 1));
  }

  {
    Rng rng(derive_seed(seed, 11));
    double worst = 0.0;
    for (long long i = 0; i < count; ++i) {
      const AlgebraElement x = AlgebraElement::random_normal(n, rng);
      worst = std::max(worst, norm(reconstruct(frame, x) - x) / std::max(1.0, norm(x)));
    }
    checks.push_back(detail::threshold_check("reconstruction-identity", worst, 1e-12, count));
  }

  {
    Rng rng(derive_seed(seed, 12));
    double worst = 0.0;
    for (long long i = 0; i < count; ++i) {
      const SpanCoords c{AlgebraElement::random_normal(n, rng),
                         AlgebraElement::random_normal(n, rng)};
      const SpanCoords back = span_coords(frame, span_embed(frame, c));
      const double scale = std::max(1.0, norm(c.V) + norm(c.W));
      worst = std::max(worst, (norm(back.V - c.V) + norm(back.W - c.W)) / scale);
    }
    checks.push_back(detail::threshold_check("span-roundtrip", worst, 1e-12, count));
  }

  {
    // Embedding matrix of (V, W) -> u: all singular values equal sqrt(n+1),
    // so the span has real dimension exactly 2n.
    Eigen::MatrixXd E(n * (n + 1), 2 * n);
    for (int j = 0; j < 2 * n; ++j) {
      SpanCoords c{AlgebraElement(n), AlgebraElement(n)};
      if (j < n) {
        c.V[j] = 1.0;
      } else {
        c.W[j - n] = 1.0;
      }
      const auto u = span_embed(frame, c);
      for (int k = 0; k <= n; ++k) {
        for (int i = 0; i < n; ++i) E(k * n + i, j) = u[static_cast<std::size_t>(k)][i];
      }
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(E);
    const double smin = svd.singularValues()[2 * n - 1];
    const double smax = svd.singularValues()[0];
    const double expected = std::sqrt(static_cast<double>(n) + 1.0);
    const double worst = std::max(std::abs(smin - expected), std::abs(smax - expected));
    checks.push_back(detail::threshold_check("span-dimension-2n", worst, 1e-12, 2 * n,
                                             "all singular values sqrt(n+1)"));
  }

  {
    bool ok = true;
    std::string detail_msg;
    if (n == 1) {
      detail_msg = "skipped: the span is the whole plane for n = 1";
    } else {
      std::vector<AlgebraElement> u(static_cast<std::size_t>(n) + 1, AlgebraElement(n));
      u[0] = AlgebraElement::unit(n, 0);
      try {
        (void)span_coords(frame, u);
        ok = false;
      } catch (const std::domain_error&) {
      }
      detail_msg = "off-span tuple rejected";
    }
    checks.push_back(CheckResult{"off-span-rejection", ok, 1, 0.0, detail_msg});
  }

  {
    // Zero combinations of the frame happen exactly for equal coefficients.
    Rng rng(derive_seed(seed, 13));
    bool ok = true;
    long long tested = 0;
    for (long long i = 0; i < count; ++i) {
      std::vector<double> c(static_cast<std::size_t>(n) + 1);
      const bool constant_case = (i % 2 == 0);
      const double base = rng.normal();
      double mean = 0.0;
      for (auto& ck : c) {
        ck = constant_case ? base + 1e-14 * rng.normal() : rng.normal();
        mean += ck;
      }
      mean /= static_cast<double>(c.size());
      AlgebraElement sum(n);
      double maxdev = 0.0;
      for (std::size_t k = 0; k < c.size(); ++k) {
        sum += c[k] * frame.vectors[k];
        maxdev = std::max(maxdev, std::abs(c[k] - mean));
      }
      ++tested;
      if ((norm(sum) <= 1e-12) != (maxdev <= 1e-9)) {
        ok = false;
        break;
      }
    }
    checks.push_back(CheckResult{"linear-dependence-equivalence", ok, tested, 0.0,
                                 "zero combination iff constant coefficients"});
  }

  {
    // The defining conditions only pin the frame up to an orthogonal map.
    Rng rng(derive_seed(seed, 14));
    Eigen::MatrixXd G(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) G(i, j) = rng.normal();
    }
    const Eigen::MatrixXd Q =
        Eigen::HouseholderQR<Eigen::MatrixXd>(G).householderQ() * Eigen::MatrixXd::Identity(n, n);
    std::vector<AlgebraElement> rotated;
    for (const auto& v : frame.vectors) {
      Eigen::VectorXd x(n);
      for (int i = 0; i < n; ++i) x[i] = v[i];
      const Eigen::VectorXd y = Q * x;
      AlgebraElement e(n);
      for (int i = 0; i < n; ++i) e[i] = y[i];
      rotated.push_back(e);
    }
    const bool ok = is_standard_frame(rotated, n, 1e-9);
    checks.push_back(CheckResult{"orthogonal-image-is-frame", ok, n + 1, 0.0,
                                 "conditions invariant under O(n)"});
  }

  if (n == 2) {
    // Complex case: the frame consists of the cube roots of unity times a
    // fixed unit, so both the sum and the sum of complex squares vanish.
    AlgebraElement sum(n), sqsum(n);
    for (const auto& v : frame.vectors) {
      sum += v;
      sqsum += mul(v, v);
    }
    const double worst = std::max(norm(sum), norm(sqsum));
    checks.push_back(detail::threshold_check("cube-roots-structure", worst, 1e-12, n + 1));
  }

  return checks;
}

// ---------------------------------------------------------------------------
// Variety
// ---------------------------------------------------------------------------

inline Eigen::MatrixXd finite_difference_jacobian(const VarietySpec& spec,
                                                  const QuadricPoint& p, double step = 1e-5) {
  const Eigen::VectorXd x0 = pack_point(spec, p);
  Eigen::MatrixXd J(spec.residual_dim(), spec.ambient_real_dim());
  for (int j = 0; j < spec.ambient_real_dim(); ++j) {
    Eigen::VectorXd xp = x0, xm = x0;
    xp[j] += step;
    xm[j] -= step;
    const Eigen::VectorXd rp = eval_defining(spec, unpack_point(spec, xp)).as_vector();
    const Eigen::VectorXd rm = eval_defining(spec, unpack_point(spec, xm)).as_vector();
    J.col(j) = (rp - rm) / (2.0 * step);
  }
  return J;
}

inline std::vector<CheckResult> variety_suite(int n, std::uint64_t seed,
                                              long long count = 1000,
                                              Field field = Field::Complex) {
  require_algebra_dim(n);
  const VarietySpec spec = VarietySpec::standard_spec(n, field);
  std::vector<CheckResult> checks;

  const auto points = sample(spec, seed, count);

  {
    double worst = 0.0;
    for (const auto& p : points) worst = std::max(worst, eval_defining(spec, p).norm());
    checks.push_back(detail::threshold_check("sample-residual", worst, 1e-10, count));
  }

  {
    double sigma_floor = 1e300;
    bool all_regular = true;
    for (const auto& p : points) {
      const RegularityReport rep = is_regular(spec, p, 1e-6);
      all_regular = all_regular && rep.regular;
      sigma_floor = std::min(sigma_floor, rep.sigma_min);
    }
    std::ostringstream os;
    os << "smallest singular value across batch " << format_residual(sigma_floor);
    checks.push_back(CheckResult{"sample-regularity", all_regular && sigma_floor > 1e-6,
                                 count, sigma_floor, os.str()});
  }

  {
    double worst = 0.0;
    for (const auto& p : points) {
      worst = std::max(worst, norm(mul(p.V.front(), p.W.front())));
    }
    std::ostringstream os;
    os << "sup |VW| = " << format_residual(worst);
    checks.push_back(CheckResult{"pair-product-bound", worst < 0.5, count, worst, os.str()});
  }

  {
    Rng rng(derive_seed(seed, 21));
    double worst = 0.0;
    for (const auto& p : points) {
      const TorusElement g = random_torus(spec, rng);
      const Eigen::VectorXd before = eval_defining(spec, p).as_vector();
      const Eigen::VectorXd after = eval_defining(spec, act(spec, g, p)).as_vector();
      worst = std::max(worst, (before - after).lpNorm<Eigen::Infinity>());
    }
    checks.push_back(detail::threshold_check("torus-invariance", worst, 1e-14, count));
  }

  {
    Rng rng(derive_seed(seed, 22));
    double worst = 0.0;
    const long long fd_count = std::min<long long>(count, 100);
    for (long long i = 0; i < fd_count; ++i) {
      const QuadricPoint p = random_ambient(spec, rng);
      const Eigen::MatrixXd gap = jacobian(spec, p) - finite_difference_jacobian(spec, p);
      worst = std::max(worst, gap.cwiseAbs().maxCoeff());
    }
    checks.push_back(
        detail::threshold_check("jacobian-finite-difference", worst, 1e-6, fd_count));
  }

  {
    // The nonnegative-slice lift is determined by (V, W); on a sampled point
    // it must reproduce the folded coordinates. Points grazing the boundary
    // (some |Z_k|^2 at the sampling-residual scale) are skipped: there the
    // lift's feasibility window is narrower than the residual.
    double worst = 0.0;
    long long lifted = 0, skipped = 0;
    for (const auto& p : points) {
      double zmin2 = 1e300;
      for (const auto& z : p.Z) zmin2 = std::min(zmin2, std::norm(z));
      if (zmin2 < 1e-8) {
        ++skipped;
        continue;
      }
      const auto lift = lift_from_vw(spec, p.V.front(), p.W.front());
      if (!lift) {
        worst = 1.0;
        continue;
      }
      ++lifted;
      worst = std::max(worst, eval_defining(spec, *lift).norm());
      const QuadricPoint folded = fold_nonnegative(p);
      for (std::size_t k = 0; k < folded.Z.size(); ++k) {
        worst = std::max(worst, std::abs(lift->Z[k].real() - folded.Z[k].real()));
        if (lift->Z[k].real() < 0.0) worst = 1.0;
      }
    }
    std::ostringstream os;
    os << lifted << " samples lifted, " << skipped << " boundary-grazing skipped";
    checks.push_back(CheckResult{"vw-lift-recovers-folded",
                                 worst <= 1e-5 && lifted + skipped == count, count, worst,
                                 os.str()});
  }

  {
    const auto center = lift_from_vw(spec, AlgebraElement(n), AlgebraElement(n));
    double worst = 1.0;
    if (center) {
      worst = 0.0;
      const double expected = 1.0 / std::sqrt(static_cast<double>(n) + 1.0);
      for (const auto& z : center->Z) worst = std::max(worst, std::abs(z.real() - expected));
    }
    checks.push_back(detail::threshold_check("vw-lift-center", worst, 1e-12, 1,
                                             "V = W = 0 lifts to uniform coordinates"));
  }

  {
    // Cone point of the non-hyperbolic two-vector frame: on the variety but
    // the derivative image collapses to a line.
    const std::vector<AlgebraElement> pair = {AlgebraElement::one(2),
                                              -AlgebraElement::one(2)};
    const VarietySpec cone = VarietySpec::general(2, pair, 1, Field::Complex);
    QuadricPoint p;
    const double r = 1.0 / std::sqrt(2.0);
    p.Z = {r, r};
    p.V = {AlgebraElement(2)};
    p.W = {AlgebraElement(2)};
    const double resid = eval_defining(cone, p).norm();
    const RegularityReport rep = is_regular(cone, p, 1e-6);
    std::ostringstream os;
    os << "residual " << format_residual(resid) << ", sigma_min "
       << format_residual(rep.sigma_min);
    checks.push_back(CheckResult{"singular-cone-flagged",
                                 resid <= 1e-12 && !rep.regular && rep.sigma_min <= 1e-9, 1,
                                 rep.sigma_min, os.str()});
  }

  {
    bool ok = true;
    std::ostringstream os;

    std::vector<AlgebraElement> with_zero = {AlgebraElement(n), AlgebraElement::one(n)};
    const auto cert_zero = hull_membership(with_zero, 1);
    ok = ok && cert_zero.member;

    const auto cert_frame = hull_membership(spec.frame, n);
    ok = ok && !cert_frame.member;
    for (const auto& sep : cert_frame.separations) {
      for (int k : sep.indices) {
        ok = ok && inner(sep.direction, spec.frame[static_cast<std::size_t>(k)]) > 0.0;
      }
    }

    const std::vector<AlgebraElement> pair = {AlgebraElement::one(2),
                                              -AlgebraElement::one(2)};
    const auto cert_pair = hull_membership(pair, 2);
    ok = ok && cert_pair.member && cert_pair.coefficients.size() == 2;
    double coeff_err = 1.0;
    if (cert_pair.coefficients.size() == 2) {
      coeff_err = std::max(std::abs(cert_pair.coefficients[0] - 0.5),
                           std::abs(cert_pair.coefficients[1] - 0.5));
      ok = ok && coeff_err <= 1e-9;
    }
    os << "zero-vector member, frame separated (" << cert_frame.separations.size()
       << " subsets certified), midpoint coefficients";
    checks.push_back(CheckResult{"hull-membership-examples", ok, 3, coeff_err, os.str()});
  }

  {
    bool ok = false;
    try {
      std::vector<AlgebraElement> degenerate = spec.frame;
      degenerate.push_back(AlgebraElement(n));
      (void)sample(VarietySpec::general(n, degenerate, 1, field), seed, 1);
    } catch (const NotWeaklyHyperbolic&) {
      ok = true;
    }
    checks.push_back(CheckResult{"non-hyperbolic-rejected", ok, 1, 0.0,
                                 "frame containing 0 raises NotWeaklyHyperbolic"});
  }

  if (field == Field::Real) {
    // Real-case points, read with complex coordinates, satisfy the complex
    // system of the same frame.
    VarietySpec complex_spec = spec;
    complex_spec.field = Field::Complex;
    double worst = 0.0;
    for (const auto& p : points) {
      for (const auto& z : p.Z) worst = std::max(worst, std::abs(z.imag()));
      worst = std::max(worst, eval_defining(complex_spec, p).norm());
    }
    checks.push_back(detail::threshold_check("real-restriction-embeds", worst, 1e-10, count));
  }

  return checks;
}

// ---------------------------------------------------------------------------
// Maps
// ---------------------------------------------------------------------------

inline CompactifiedPoint random_compactified(int n, Rng& rng, int boundary_zeros = 0) {
  Eigen::VectorXd a(n + 1);
  for (int k = 0; k <= n; ++k) a[k] = std::abs(rng.normal());
  for (int j = 0; j < boundary_zeros && j <= n; ++j) {
    a[static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(n) + 1))] = 0.0;
  }
  double b = rng.normal();
  const double scale = std::sqrt(a.squaredNorm() + b * b);
  CompactifiedPoint c;
  c.a = a / scale;
  c.b = b / scale;
  return c;
}

inline std::vector<CheckResult> maps_suite(int n, std::uint64_t seed,
                                           long long ambient_count = 10000,
                                           long long point_count = 1000) {
  require_algebra_dim(n);
  const SimplexFrame frame = build_lambda(n);
  const VarietySpec spec = VarietySpec::standard_spec(n);
  std::vector<CheckResult> checks;

  {
    Rng rng(derive_seed(seed, 31));
    double worst = 0.0;
    for (long long i = 0; i < ambient_count; ++i) {
      QuadricPoint p = random_ambient(spec, rng);
      // Include points far from the varieties.
      const double blow = 1.0 + 3.0 * rng.uniform();
      for (auto& z : p.Z) z *= blow;
      worst = std::max(worst, residual_relation_error(frame, p));
    }
    checks.push_back(
        detail::threshold_check("residual-transfer-identity", worst, 1e-12, ambient_count));
  }

  {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(residual_transfer_matrix(frame));
    const double smin = svd.singularValues()[n];
    std::ostringstream os;
    os << "sigma_min " << format_residual(smin);
    checks.push_back(CheckResult{"transfer-matrix-invertible", smin > 0.1, 1, smin, os.str()});
  }

  const auto points = sample(spec, derive_seed(seed, 32), point_count);

  {
    double worst = 0.0;
    for (const auto& p : points) {
      const SpanPoint q = quadric_to_span(frame, p);
      for (double g : eval_sphere(spec, q)) worst = std::max(worst, std::abs(g));
      const QuadricPoint back = span_to_quadric(frame, q);
      for (std::size_t k = 0; k < p.Z.size(); ++k) {
        worst = std::max(worst, std::abs(back.Z[k] - p.Z[k]));
      }
      worst = std::max(worst, norm(back.V.front() - p.V.front()));
      worst = std::max(worst, norm(back.W.front() - p.W.front()));
    }
    checks.push_back(detail::threshold_check("span-roundtrip-identity", worst, 1e-9,
                                             point_count, "images on sphere system"));
  }

  {
    Rng rng(derive_seed(seed, 33));
    double worst = 0.0;
    for (const auto& p : points) {
      const TorusElement g = random_torus(spec, rng);
      const SpanPoint lhs = quadric_to_span_ambient(frame, act(spec, g, p));
      SpanPoint rhs = quadric_to_span_ambient(frame, p);
      for (std::size_t k = 0; k < rhs.z.size(); ++k) rhs.z[k] *= g.g[k];
      for (std::size_t k = 0; k < rhs.z.size(); ++k) {
        worst = std::max(worst, std::abs(lhs.z[k] - rhs.z[k]));
        worst = std::max(worst, norm(lhs.u[k] - rhs.u[k]));
      }
    }
    checks.push_back(detail::threshold_check("map-equivariance", worst, 1e-14, point_count));
  }

  {
    double worst_gap = 0.0;
    const double root = std::sqrt(static_cast<double>(n) + 1.0);
    for (std::size_t i = 1; i < points.size(); ++i) {
      const auto& p1 = points[i - 1];
      const auto& p2 = points[i];
      double zdist = 0.0, Zdist = 0.0;
      const SpanPoint q1 = quadric_to_span_ambient(frame, p1);
      const SpanPoint q2 = quadric_to_span_ambient(frame, p2);
      for (std::size_t k = 0; k < p1.Z.size(); ++k) {
        zdist += std::norm(q1.z[k] - q2.z[k]);
        Zdist += std::norm(p1.Z[k] - p2.Z[k]);
      }
      const double bound = (1.0 - 1e-6) * root * std::sqrt(Zdist);
      worst_gap = std::max(worst_gap, bound - std::sqrt(zdist));
    }
    checks.push_back(CheckResult{"distinct-points-separated", worst_gap <= 0.0,
                                 static_cast<long long>(points.size()) - 1, worst_gap,
                                 "z-block expands distances by sqrt(n+1)"});
  }

  {
    double worst = 0.0;
    for (const auto& p : points) {
      const CompactifiedPoint c = compactify(orbit_invariants(frame, fold_nonnegative(p)));
      worst = std::max(worst, c.invariant_error());
      worst = std::max(worst, std::max(-c.min_entry(), 0.0));
    }
    checks.push_back(detail::threshold_check("compactified-invariant", worst, 1e-12,
                                             point_count));
  }

  {
    // Orbit-level identity on generic slice points: reconstruction from the
    // compactified image preserves the full invariant data (Z, VW, |V|, |W|).
    double worst = 0.0;
    for (const auto& p : points) {
      const QuadricPoint folded = fold_nonnegative(p);
      const OrbitInvariants before = orbit_invariants(frame, folded);
      const QuadricPoint rebuilt =
          reconstruct_from_compactified(frame, compactify(before));
      const OrbitInvariants after = orbit_invariants(frame, rebuilt);
      worst = std::max(worst, (before.Z - after.Z).lpNorm<Eigen::Infinity>());
      worst = std::max(worst, norm(before.product - after.product));
      worst = std::max(worst, std::abs(before.v - after.v));
      worst = std::max(worst, std::abs(before.w - after.w));
    }
    checks.push_back(
        detail::threshold_check("orbit-data-roundtrip", worst, 1e-9, point_count));
  }

  {
    // On canonical slice points (V a nonnegative real scalar) the chain is a
    // genuine identity in every coordinate; at least 10 are boundary points.
    Rng rng(derive_seed(seed, 34));
    double worst = 0.0;
    long long boundary = 0;
    long long idx = 0;
    for (const auto& p : points) {
      const bool force_boundary = (idx++ % 50 == 0);
      QuadricPoint canonical;
      if (force_boundary) {
        const CompactifiedPoint c = random_compactified(n, rng, 1);
        canonical = reconstruct_from_compactified(frame, c);
        bool has_zero = false;
        for (const auto& z : canonical.Z) has_zero = has_zero || std::abs(z) <= 1e-15;
        if (has_zero) ++boundary;
      } else {
        canonical = reconstruct_from_compactified(
            frame, compactify(orbit_invariants(frame, fold_nonnegative(p))));
      }
      const QuadricPoint again = reconstruct_from_compactified(
          frame, compactify(orbit_invariants(frame, canonical)));
      for (std::size_t k = 0; k < canonical.Z.size(); ++k) {
        worst = std::max(worst, std::abs(again.Z[k] - canonical.Z[k]));
      }
      worst = std::max(worst, norm(again.V.front() - canonical.V.front()));
      worst = std::max(worst, norm(again.W.front() - canonical.W.front()));
    }
    std::ostringstream os;
    os << boundary << " boundary points included";
    checks.push_back(CheckResult{"canonical-slice-roundtrip",
                                 worst <= 1e-9 && boundary >= 10, point_count, worst,
                                 os.str()});
  }

  {
    // Surjectivity: every compactified point reconstructs to a slice point
    // of the variety mapping forward onto it.
    Rng rng(derive_seed(seed, 35));
    double worst = 0.0;
    for (long long i = 0; i < point_count; ++i) {
      const CompactifiedPoint c = random_compactified(n, rng, i % 97 == 0 ? 1 : 0);
      const QuadricPoint p = reconstruct_from_compactified(frame, c);
      worst = std::max(worst, eval_defining(spec, p).norm());
      for (const auto& z : p.Z) {
        worst = std::max(worst, std::max(-z.real(), 0.0));
        worst = std::max(worst, std::abs(z.imag()));
      }
      const CompactifiedPoint back = compactify(orbit_invariants(frame, p));
      worst = std::max(worst, (back.a - c.a).lpNorm<Eigen::Infinity>());
      worst = std::max(worst, std::abs(back.b - c.b));
    }
    checks.push_back(detail::threshold_check("compactified-surjectivity", worst, 1e-9,
                                             point_count));
  }

  {
    // Boundary correspondence: vanishing Z coordinates match vanishing
    // compactified coordinates, index by index.
    Rng rng(derive_seed(seed, 36));
    bool ok = true;
    const long long boundary_count = 50;
    for (long long i = 0; i < boundary_count; ++i) {
      CompactifiedPoint c = random_compactified(n, rng, 1 + static_cast<int>(i % 2));
      const QuadricPoint p = reconstruct_from_compactified(frame, c);
      const CompactifiedPoint back = compactify(orbit_invariants(frame, p));
      for (int k = 0; k <= n; ++k) {
        const bool z_zero = std::abs(p.Z[static_cast<std::size_t>(k)]) <= 1e-10;
        const bool a_zero = std::abs(back.a[k]) <= 1e-10;
        ok = ok && (z_zero == a_zero);
      }
    }
    checks.push_back(CheckResult{"boundary-correspondence", ok, boundary_count, 0.0,
                                 "Z_k = 0 iff a_k = 0"});
  }

  {
    bool ok = true;
    double worst = 0.0;
    {
      const auto [x, y] = solve_sum_product(2.0, 1.0);
      worst = std::max({worst, std::abs(x - 1.0), std::abs(y - 1.0)});
    }
    {
      const auto [x, y] = solve_sum_product(1.0, 0.0);
      worst = std::max({worst, std::abs(x - 1.0), std::abs(y)});
    }
    {
      const auto [x, y] = solve_sum_product(1.25, 0.5);
      worst = std::max({worst, std::abs(x - 1.0), std::abs(y - 0.5)});
    }
    try {
      (void)solve_sum_product(1.0, 0.75);
      ok = false;
    } catch (const std::domain_error&) {
    }
    Rng rng(derive_seed(seed, 37));
    for (int i = 0; i < 200; ++i) {
      const double q = std::abs(rng.normal());
      const double p = 2.0 * q + std::abs(rng.normal());
      const auto [x, y] = solve_sum_product(p, q);
      worst = std::max(worst, std::abs(x * x + y * y - p) / std::max(1.0, p));
      worst = std::max(worst, std::abs(x * y - q) / std::max(1.0, q));
      if (x < y || y < 0.0) ok = false;
    }
    checks.push_back(CheckResult{"sum-product-solver", ok && worst <= 1e-12, 204, worst,
                                 "frozen examples, random forward checks, infeasible rejected"});
  }

  {
    Rng rng(derive_seed(seed, 38));
    double worst = 0.0;
    for (long long i = 0; i < point_count; ++i) {
      const AlgebraElement V = AlgebraElement::random_normal(n, rng);
      const AlgebraElement W = AlgebraElement::random_normal(n, rng);
      const HopfImage img = hopf(V, W);
      worst = std::max(worst, std::abs(norm(img.product) - img.v * img.w) /
                                  (img.v * img.w + 1e-300));
    }
    checks.push_back(
        detail::threshold_check("hopf-norm-compatibility", worst, 1e-12, point_count));
  }

  if (n <= 4) {
    // Fiber invariance holds verbatim in the associative algebras.
    Rng rng(derive_seed(seed, 39));
    double worst = 0.0;
    for (long long i = 0; i < point_count; ++i) {
      AlgebraElement V = AlgebraElement::random_normal(n, rng);
      AlgebraElement W = AlgebraElement::random_normal(n, rng);
      AlgebraElement a = detail::random_nonzero(n, rng);
      a /= norm(a);
      const HopfImage base = hopf(V, W);
      const HopfImage moved = hopf(mul(V, a), mul(inverse(a), W));
      const double scale = norm(V) * norm(W) + 1e-300;
      worst = std::max(worst, norm(base.product - moved.product) / scale);
      worst = std::max(worst, std::abs(base.v - moved.v) / (base.v + 1e-300));
      worst = std::max(worst, std::abs(base.w - moved.w) / (base.w + 1e-300));
    }
    checks.push_back(detail::threshold_check("hopf-fiber-invariance", worst, 1e-12,
                                             point_count));
  }

  return checks;
}

// ---------------------------------------------------------------------------
// Fixed points
// ---------------------------------------------------------------------------

inline std::vector<CheckResult> fixed_points_suite(int n, std::uint64_t seed,
                                                   long long count = 1000,
                                                   Field field = Field::Complex) {
  const VarietySpec spec = VarietySpec::standard_spec(n, field);
  const FixedPointReport rep = verify_fixed_points(spec, seed, count);
  std::vector<CheckResult> checks;

  {
    std::ostringstream os;
    os << "max min(|V|,|W|) = " << format_residual(rep.max_min_norm);
    checks.push_back(CheckResult{"zero-product-dichotomy", rep.violations == 0, rep.samples,
                                 rep.max_min_norm, os.str()});
  }
  {
    std::ostringstream os;
    os << rep.v_zero_count << " with V = 0, " << rep.w_zero_count << " with W = 0";
    checks.push_back(CheckResult{"two-fixed-components", rep.components == 2, rep.samples,
                                 0.0, os.str()});
  }
  checks.push_back(detail::threshold_check("zero-z-sample-residual", rep.max_residual, 1e-10,
                                           rep.samples));
  {
    std::ostringstream os;
    os << rep.moved_checked << " generic points checked";
    checks.push_back(CheckResult{"generic-points-moved",
                                 rep.moved_failures == 0 && rep.moved_checked > 0,
                                 rep.moved_checked, 0.0, os.str()});
  }
  return checks;
}

// ---------------------------------------------------------------------------
// Topology (exact, dimension-independent)
// ---------------------------------------------------------------------------

inline std::vector<CheckResult> topology_suite() {
  std::vector<CheckResult> checks;

  {
    bool ok = true;
    ok = ok && connected_sum_betti({{2, 2, 1}}).betti == std::vector<long long>{1, 0, 2, 0, 1};
    ok = ok && connected_sum_betti({{2, 2, 3}}).betti == std::vector<long long>{1, 0, 6, 0, 1};
    ok = ok && connected_sum_betti({{3, 4, 3}}).betti ==
                   std::vector<long long>{1, 0, 0, 3, 3, 0, 0, 1};
    const PoincarePolynomial p4 = connected_sum_betti({{5, 8, 5}, {6, 7, 10}});
    ok = ok && p4.top_degree() == 13 && p4.betti[5] == 5 && p4.betti[6] == 10 &&
         p4.betti[7] == 10 && p4.betti[8] == 5 && p4.betti[0] == 1 && p4.betti[13] == 1;
    checks.push_back(CheckResult{"connected-sum-betti-examples", ok, 4, 0.0, {}});
  }

  {
    bool ok = true;
    const auto t1 = predicted_type(VarietySpec::standard_spec(1));
    ok = ok && t1.kind == DiffeoKind::SphereProduct && t1.product_a == 2 &&
         t1.product_b == 2 && !t1.note.empty();

    const auto t2 = predicted_type(VarietySpec::standard_spec(2));
    ok = ok && t2.kind == DiffeoKind::ConnectedSum &&
         t2.betti.betti == std::vector<long long>{1, 0, 0, 3, 3, 0, 0, 1};

    const auto t4 = predicted_type(VarietySpec::standard_spec(4));
    ok = ok && t4.dimension == 13 && t4.betti.betti[5] == 5 && t4.betti.betti[6] == 10 &&
         t4.betti.betti[7] == 10 && t4.betti.betti[8] == 5;

    const auto t8 = predicted_type(VarietySpec::standard_spec(8));
    ok = ok && t8.dimension == 25 && t8.betti.poincare_duality() &&
         t8.betti.euler_characteristic() == 0 && t8.betti.betti[0] == 1 &&
         t8.betti.betti[9] == 9 && t8.betti.betti[10] == 36 && t8.betti.betti[11] == 84 &&
         t8.betti.betti[12] == 126;
    checks.push_back(CheckResult{"standard-complex-predictions", ok, 4, 0.0, {}});
  }

  {
    bool ok = true;
    const auto r1 = predicted_type(VarietySpec::standard_spec(1, Field::Real));
    ok = ok && r1.kind == DiffeoKind::ConnectedSum &&
         r1.betti.betti == std::vector<long long>{1, 2, 1} && r1.dimension == 2 &&
         r1.betti.euler_characteristic() == 0;

    const auto r2 = predicted_type(VarietySpec::standard_spec(2, Field::Real));
    ok = ok && r2.betti.betti == std::vector<long long>{1, 0, 6, 0, 1} &&
         r2.betti.euler_characteristic() == 8;

    const auto r4 = predicted_type(VarietySpec::standard_spec(4, Field::Real));
    ok = ok && r4.dimension == 8 && r4.betti.betti[4] == 2 * (15);
    checks.push_back(CheckResult{"standard-real-predictions", ok, 3, 0.0, {}});
  }

  {
    bool ok = true;
    // Origin outside the hull: product type, any algebra.
    const auto lone = predicted_type(
        VarietySpec::general(1, {AlgebraElement::one(1)}, 1, Field::Complex));
    ok = ok && lone.kind == DiffeoKind::SphereProduct && lone.product_a == 2 &&
         lone.product_b == 0;

    std::vector<AlgebraElement> tilted = {AlgebraElement::one(2), AlgebraElement::one(2)};
    tilted[1][0] = 0.8;
    tilted[1][1] = 0.6;
    const auto prod = predicted_type(VarietySpec::general(2, tilted, 1, Field::Complex));
    ok = ok && prod.kind == DiffeoKind::SphereProduct && prod.product_a == 4 &&
         prod.product_b == 1;

    const auto stiefel = predicted_type(VarietySpec::general(2, {}, 2, Field::Complex));
    ok = ok && stiefel.kind == DiffeoKind::Stiefel && stiefel.stiefel_rows == 4 &&
         stiefel.dimension == 5 &&
         stiefel.betti.betti == std::vector<long long>{1, 0, 1, 1, 0, 1};

    // n = 2 real family rows from the closing table.
    std::vector<AlgebraElement> real3 = build_lambda(2).vectors;
    const auto sum3 = predicted_type(VarietySpec::general(2, real3, 2, Field::Real));
    ok = ok && sum3.kind == DiffeoKind::ConnectedSum &&
         sum3.betti.betti == std::vector<long long>{1, 0, 0, 0, 6, 0, 0, 0, 1};

    const auto nohull = predicted_type(VarietySpec::general(2, tilted, 2, Field::Real));
    ok = ok && nohull.kind == DiffeoKind::SphereProduct && nohull.product_a == 4 &&
         nohull.product_b == 3;

    // No prediction beyond the stated families.
    const auto none = predicted_type(
        VarietySpec::general(4, build_lambda(4).vectors, 2, Field::Complex));
    ok = ok && none.kind == DiffeoKind::NoPrediction;
    checks.push_back(CheckResult{"family-predictions", ok, 6, 0.0, {}});
  }

  {
    bool ok = true;
    for (int n : {1, 2, 4, 8}) {
      const auto full = fixed_set_prediction(VarietySpec::standard_spec(n), n + 1);
      ok = ok && full.kind == DiffeoKind::SphereProduct && full.product_a == 0 &&
           full.product_b == n - 1;
    }
    const auto one_circle = fixed_set_prediction(VarietySpec::standard_spec(2), 1);
    ok = ok && one_circle.product_a == 4 && one_circle.product_b == 1;
    bool rejected = false;
    try {
      (void)fixed_set_prediction(VarietySpec::standard_spec(2), 0);
    } catch (const std::invalid_argument&) {
      rejected = true;
    }
    checks.push_back(CheckResult{"fixed-set-predictions", ok && rejected, 6, 0.0, {}});
  }

  {
    bool ok = true;
    for (int n : {1, 2, 4, 8}) {
      for (Field f : {Field::Complex, Field::Real}) {
        const auto v = freeness_verdict(VarietySpec::standard_spec(n, f));
        const bool want_free = (n == 1);
        ok = ok && (v.verdict == Freeness::Free) == want_free &&
             v.fixed_set_betti_sum == 4;
      }
    }
    std::vector<AlgebraElement> tilted = {AlgebraElement::one(2), AlgebraElement::one(2)};
    tilted[1][0] = 0.8;
    tilted[1][1] = 0.6;
    const auto away = freeness_verdict(VarietySpec::general(2, tilted, 1, Field::Complex));
    ok = ok && away.verdict == Freeness::Free && away.manifold_betti_sum == 4;

    const auto stiefel = freeness_verdict(VarietySpec::general(2, {}, 2, Field::Complex));
    ok = ok && stiefel.verdict == Freeness::Free;

    const auto sum3 =
        freeness_verdict(VarietySpec::general(2, build_lambda(2).vectors, 2, Field::Real));
    ok = ok && sum3.verdict == Freeness::TorsionFreeNotFree;
    checks.push_back(CheckResult{"freeness-criterion", ok, 11, 0.0,
                                 "free exactly for n = 1 and hull-free frames"});
  }

  {
    bool ok = true;
    for (int n : {1, 2, 4, 8}) {
      for (Field f : {Field::Complex, Field::Real}) {
        const auto t = predicted_type(VarietySpec::standard_spec(n, f));
        ok = ok && t.betti.poincare_duality();
        ok = ok && t.betti.betti.front() == 1 && t.betti.betti.back() == 1;
        if (t.dimension % 2 == 1) ok = ok && t.betti.euler_characteristic() == 0;
      }
    }
    checks.push_back(CheckResult{"prediction-invariants", ok, 8, 0.0,
                                 "duality, connectedness, odd-dimensional Euler zero"});
  }

  return checks;
}

}  // namespace suites
}  // namespace divquad
