#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "divquad/simplex.hpp"
#include "divquad/variety.hpp"

namespace divquad {

/// Raw coordinate change z = sqrt(n+1) Z, u_k = conj(V) lambda_k + W. Defined
/// on the whole ambient space; no on-variety check.
inline SpanPoint quadric_to_span_ambient(const SimplexFrame& frame, const QuadricPoint& p) {
  const int n = frame.dim;
  if (static_cast<int>(p.Z.size()) != n + 1 || p.V.size() != 1 || p.W.size() != 1) {
    throw std::invalid_argument("quadric_to_span: point shape must be (n+1, 1, 1)");
  }
  const double root = std::sqrt(static_cast<double>(n) + 1.0);
  SpanPoint q;
  q.z.resize(p.Z.size());
  for (std::size_t k = 0; k < p.Z.size(); ++k) q.z[k] = root * p.Z[k];
  const AlgebraElement vbar = conj(p.V.front());
  q.u.reserve(p.Z.size());
  for (const auto& lk : frame.vectors) q.u.push_back(mul(vbar, lk) + p.W.front());
  return q;
}

/// The equivariant diffeomorphism onto the sphere-product model, restricted
/// to points of the variety (checked within tol).
inline SpanPoint quadric_to_span(const SimplexFrame& frame, const QuadricPoint& p,
                                 double tol = 1e-8) {
  require_standard_frame(frame);
  const VarietySpec spec = VarietySpec::standard_spec(frame.dim);
  if (eval_defining(spec, p).norm() > tol) {
    throw std::domain_error("quadric_to_span: point is off the variety");
  }
  return quadric_to_span_ambient(frame, p);
}

/// Inverse coordinate change: Z = z/sqrt(n+1) and (V, W) recovered from the
/// span coordinates of u (with conjugation on the V side). Throws when u is
/// not in Span(lambda, 1) or the point is off the sphere system.
inline QuadricPoint span_to_quadric(const SimplexFrame& frame, const SpanPoint& q,
                                    double tol = 1e-8) {
  require_standard_frame(frame);
  const int n = frame.dim;
  if (static_cast<int>(q.z.size()) != n + 1 || static_cast<int>(q.u.size()) != n + 1) {
    throw std::invalid_argument("span_to_quadric: point shape must be (n+1, n+1)");
  }
  const SpanCoords c = span_coords(frame, q.u, tol);
  QuadricPoint p;
  const double root = std::sqrt(static_cast<double>(n) + 1.0);
  p.Z.resize(q.z.size());
  for (std::size_t k = 0; k < q.z.size(); ++k) p.Z[k] = q.z[k] / root;
  p.V = {conj(c.V)};
  p.W = {c.W};
  const VarietySpec spec = VarietySpec::standard_spec(n);
  for (double g : eval_sphere(spec, q)) {
    if (std::abs(g) > tol) {
      throw std::domain_error("span_to_quadric: point is off the sphere system");
    }
  }
  return p;
}

/// Rows (1, 2 lambda_k^T): the invertible matrix relating the sphere
/// residuals of the mapped point to the defining residuals.
inline Eigen::MatrixXd residual_transfer_matrix(const SimplexFrame& frame) {
  const int n = frame.dim;
  Eigen::MatrixXd M(n + 1, n + 1);
  for (int k = 0; k <= n; ++k) {
    M(k, 0) = 1.0;
    for (int i = 0; i < n; ++i) M(k, i + 1) = 2.0 * frame.vectors[static_cast<std::size_t>(k)][i];
  }
  return M;
}

/// Relative error in the algebraic identity G(image) = M F(point), valid on
/// the whole ambient space, on or off the varieties.
inline double residual_relation_error(const SimplexFrame& frame, const QuadricPoint& p) {
  const VarietySpec spec = VarietySpec::standard_spec(frame.dim);
  const SpanPoint q = quadric_to_span_ambient(frame, p);
  const std::vector<double> g = eval_sphere(spec, q);
  Eigen::VectorXd gv(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) gv[static_cast<Eigen::Index>(k)] = g[k];
  const Eigen::VectorXd mf =
      residual_transfer_matrix(frame) * eval_defining(spec, p).as_vector();
  return (gv - mf).norm() / (1.0 + gv.norm() + mf.norm());
}

/// The torus-invariant data of a nonnegative-slice point: the (real) Z
/// coordinates, the pair product VW and the two norms.
struct OrbitInvariants {
  Eigen::VectorXd Z;
  AlgebraElement product;
  double v = 0.0;
  double w = 0.0;
};

/// Point of the compactified orbit sphere: nonnegative coordinates a plus a
/// signed last coordinate b, with |a|^2 + b^2 = 1.
struct CompactifiedPoint {
  Eigen::VectorXd a;
  double b = 0.0;

  double invariant_error() const { return std::abs(a.squaredNorm() + b * b - 1.0); }
  double min_entry() const { return a.size() ? a.minCoeff() : 0.0; }
};

inline void check_compactified(const CompactifiedPoint& c, double tol = 1e-9) {
  if (c.min_entry() < -tol) {
    throw std::invalid_argument("compactified point has a negative coordinate");
  }
  if (c.invariant_error() > tol) {
    throw std::invalid_argument("compactified point is off the unit sphere");
  }
}

/// First factor of the orbit-space chain: records (Z, VW, |V|, |W|). Requires
/// a point of the nonnegative slice of the variety.
inline OrbitInvariants orbit_invariants(const SimplexFrame& frame, const QuadricPoint& p,
                                        double tol = 1e-8) {
  require_standard_frame(frame);
  const VarietySpec spec = VarietySpec::standard_spec(frame.dim);
  if (eval_defining(spec, p).norm() > tol) {
    throw std::domain_error("orbit_invariants: point is off the variety");
  }
  OrbitInvariants img;
  img.Z.resize(static_cast<Eigen::Index>(p.Z.size()));
  for (std::size_t k = 0; k < p.Z.size(); ++k) {
    if (std::abs(p.Z[k].imag()) > tol || p.Z[k].real() < -tol) {
      throw std::domain_error("orbit_invariants: point is not in the nonnegative slice");
    }
    img.Z[static_cast<Eigen::Index>(k)] = std::max(p.Z[k].real(), 0.0);
  }
  img.product = mul(p.V.front(), p.W.front());
  img.v = norm(p.V.front());
  img.w = norm(p.W.front());
  return img;
}

/// Second factor: a = Z/sqrt(1-2|VW|), b = (|V|-|W|)/sqrt(1-2|VW|). Requires
/// |VW| < 1/2, which holds on the whole variety.
inline CompactifiedPoint compactify(const OrbitInvariants& img) {
  const double pnorm = norm(img.product);
  if (pnorm >= 0.5) {
    throw std::domain_error("compactify: |VW| must be below 1/2");
  }
  const double scale = 1.0 / std::sqrt(1.0 - 2.0 * pnorm);
  CompactifiedPoint c;
  c.a = scale * img.Z;
  c.b = scale * (img.v - img.w);
  return c;
}

/// Nonnegative solution of x^2 + y^2 = p, xy = q with x >= y, unique up to
/// the swap. Soluble exactly when p >= 2q; tiny negative p-2q from rounding
/// is clamped to the boundary. The smaller root is computed as q/x to avoid
/// cancellation.
inline std::pair<double, double> solve_sum_product(double p, double q) {
  if (p < 0.0 || q < -1e-12) {
    throw std::domain_error("solve_sum_product: p and q must be nonnegative");
  }
  q = std::max(q, 0.0);
  double spread = p - 2.0 * q;
  if (spread < 0.0) {
    if (spread < -1e-12) {
      throw std::domain_error("solve_sum_product: infeasible, requires p >= 2q");
    }
    spread = 0.0;
  }
  const double x = 0.5 * (std::sqrt(p + 2.0 * q) + std::sqrt(spread));
  const double y = x > 0.0 ? q / x : 0.0;
  return {x, y};
}

/// Constructive inverse of the orbit-space chain: from a compactified point
/// rebuilds the unique nonnegative-slice variety point with V a nonnegative
/// real scalar. Composing forward reproduces the input.
inline QuadricPoint reconstruct_from_compactified(const SimplexFrame& frame,
                                                  const CompactifiedPoint& c) {
  require_standard_frame(frame);
  check_compactified(c);
  const int n = frame.dim;
  if (c.a.size() != n + 1) {
    throw std::invalid_argument("reconstruct_from_compactified: coordinate count must be n+1");
  }
  AlgebraElement weighted(n);
  for (int k = 0; k <= n; ++k) {
    const double ak = std::max(c.a[k], 0.0);
    weighted += (0.5 * n * ak * ak) * frame.vectors[static_cast<std::size_t>(k)];
  }
  const double cval = norm(weighted);
  const double b = std::abs(c.b) < 1e-12 ? 0.0 : c.b;
  const double p = (b * b + 2.0 * cval) / (1.0 + 2.0 * cval);
  const double q = cval / (1.0 + 2.0 * cval);
  auto [hi, lo] = solve_sum_product(p, q);
  const double x = b >= 0.0 ? hi : lo;
  const double y = b >= 0.0 ? lo : hi;

  QuadricPoint out;
  out.Z.resize(static_cast<std::size_t>(n) + 1);
  const double zfac = std::sqrt(std::max(1.0 - 2.0 * x * y, 0.0));
  AlgebraElement zweighted(n);
  for (int k = 0; k <= n; ++k) {
    const double zk = zfac * std::max(c.a[k], 0.0);
    out.Z[static_cast<std::size_t>(k)] = zk;
    zweighted += (0.5 * n * zk * zk) * frame.vectors[static_cast<std::size_t>(k)];
  }
  out.V = {AlgebraElement::scalar(n, x)};
  if (x == 0.0) {
    out.W = {AlgebraElement::scalar(n, y)};
  } else {
    out.W = {zweighted * (-1.0 / x)};
  }
  return out;
}

struct HopfImage {
  AlgebraElement product;
  double v = 0.0;
  double w = 0.0;
};

/// (V, W) -> (VW, |V|, |W|); restricted to the unit sphere of the algebra
/// pair this is the Hopf fibration S^{2n-1} -> S^n.
inline HopfImage hopf(const AlgebraElement& V, const AlgebraElement& W) {
  return HopfImage{mul(V, W), norm(V), norm(W)};
}

}  // namespace divquad
