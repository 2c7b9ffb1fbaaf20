#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "divquad/algebra.hpp"
#include "divquad/simplex.hpp"

namespace divquad {

enum class Field { Real, Complex };

inline const char* field_name(Field f) { return f == Field::Real ? "real" : "complex"; }

/// Full description of one quadric variety: the intersection of
///   sum_k |Z_k|^2 w lambda_k + sum_l V_l W_l = 0      (algebra-valued)
///   sum_k |Z_k|^2 + sum_l (|V_l|^2 + |W_l|^2) = 1     (unit sphere)
/// with Z in C^m (or R^m in the real case) and V_l, W_l in the algebra of
/// dimension n. The standard spec has m = n+1, s = 1, the symmetric simplex
/// frame, and carries the weight w = n/2 on the frame; general specs fold
/// any weight into the frame vectors themselves (w = 1).
struct VarietySpec {
  int n = 1;
  int m = 2;
  int s = 1;
  Field field = Field::Complex;
  bool standard = true;
  std::vector<AlgebraElement> frame;

  double frame_weight() const { return standard ? 0.5 * n : 1.0; }
  int z_real_dim() const { return field == Field::Complex ? 2 * m : m; }
  int ambient_real_dim() const { return z_real_dim() + 2 * n * s; }
  int residual_dim() const { return 1 + n; }
  int manifold_dim() const { return ambient_real_dim() - residual_dim(); }

  static VarietySpec standard_spec(int n, Field field = Field::Complex) {
    require_algebra_dim(n);
    VarietySpec spec;
    spec.n = n;
    spec.m = n + 1;
    spec.s = 1;
    spec.field = field;
    spec.standard = true;
    spec.frame = build_lambda(n).vectors;
    return spec;
  }

  static VarietySpec general(int n, std::vector<AlgebraElement> frame, int s = 1,
                             Field field = Field::Complex) {
    require_algebra_dim(n);
    VarietySpec spec;
    spec.n = n;
    spec.m = static_cast<int>(frame.size());
    spec.s = s;
    spec.field = field;
    spec.standard = false;
    spec.frame = std::move(frame);
    spec.validate();
    return spec;
  }

  void validate() const {
    require_algebra_dim(n);
    if (static_cast<int>(frame.size()) != m) {
      throw std::invalid_argument("frame length must equal m");
    }
    for (const auto& v : frame) {
      if (v.dim() != n) throw std::invalid_argument("frame vector dimension mismatch");
    }
    if (s < 1) throw std::invalid_argument("s must be >= 1");
    if (m < 0) throw std::invalid_argument("m must be >= 0");
    if (standard && (m != n + 1 || s != 1 || !is_standard_frame(frame, n))) {
      throw std::invalid_argument("standard spec requires m = n+1, s = 1 and the simplex frame");
    }
  }

  SimplexFrame simplex_frame() const {
    if (!standard) throw std::invalid_argument("not a standard spec");
    return SimplexFrame{n, frame};
  }
};

/// Ambient point for the quadric system. On-variety status is a predicate
/// (eval_defining), not a type invariant.
struct QuadricPoint {
  std::vector<std::complex<double>> Z;
  std::vector<AlgebraElement> V;
  std::vector<AlgebraElement> W;
};

/// Ambient point for the sphere-product system: z in C^{n+1} and an
/// (n+1)-tuple u expected to lie in Span(lambda, 1).
struct SpanPoint {
  std::vector<std::complex<double>> z;
  std::vector<AlgebraElement> u;
};

struct TorusElement {
  std::vector<std::complex<double>> g;
};

struct DefiningResidual {
  double sphere = 0.0;       // sum of squared norms minus 1
  AlgebraElement quadric;    // weighted frame combination plus the pair products

  double norm() const { return std::sqrt(sphere * sphere + norm_sq(quadric)); }

  Eigen::VectorXd as_vector() const {
    Eigen::VectorXd v(1 + quadric.dim());
    v[0] = sphere;
    for (int i = 0; i < quadric.dim(); ++i) v[i + 1] = quadric[i];
    return v;
  }
};

inline void check_point(const VarietySpec& spec, const QuadricPoint& p) {
  if (static_cast<int>(p.Z.size()) != spec.m ||
      static_cast<int>(p.V.size()) != spec.s ||
      static_cast<int>(p.W.size()) != spec.s) {
    throw std::invalid_argument("point dimensions do not match the spec");
  }
  for (const auto& v : p.V) {
    if (v.dim() != spec.n) throw std::invalid_argument("V dimension mismatch");
  }
  for (const auto& w : p.W) {
    if (w.dim() != spec.n) throw std::invalid_argument("W dimension mismatch");
  }
}

inline DefiningResidual eval_defining(const VarietySpec& spec, const QuadricPoint& p) {
  check_point(spec, p);
  const double weight = spec.frame_weight();
  DefiningResidual r;
  r.quadric = AlgebraElement(spec.n);
  double total = 0.0;
  for (int k = 0; k < spec.m; ++k) {
    const double zk2 = std::norm(p.Z[static_cast<std::size_t>(k)]);
    total += zk2;
    r.quadric += (weight * zk2) * spec.frame[static_cast<std::size_t>(k)];
  }
  for (int l = 0; l < spec.s; ++l) {
    const auto& V = p.V[static_cast<std::size_t>(l)];
    const auto& W = p.W[static_cast<std::size_t>(l)];
    r.quadric += mul(V, W);
    total += norm_sq(V) + norm_sq(W);
  }
  r.sphere = total - 1.0;
  return r;
}

/// Per-coordinate sphere residuals |z_k|^2 + |u_k|^2 - 1 of the
/// sphere-product system.
inline std::vector<double> eval_sphere(const VarietySpec& spec, const SpanPoint& q) {
  if (static_cast<int>(q.z.size()) != spec.m || static_cast<int>(q.u.size()) != spec.m) {
    throw std::invalid_argument("span point dimensions do not match the spec");
  }
  std::vector<double> res(static_cast<std::size_t>(spec.m));
  for (int k = 0; k < spec.m; ++k) {
    res[static_cast<std::size_t>(k)] =
        std::norm(q.z[static_cast<std::size_t>(k)]) +
        norm_sq(q.u[static_cast<std::size_t>(k)]) - 1.0;
  }
  return res;
}

/// Packs (Z, V-list, W-list) into real coordinates: Z block first (re, im
/// pairs in the complex case), then all V, then all W.
inline Eigen::VectorXd pack_point(const VarietySpec& spec, const QuadricPoint& p) {
  check_point(spec, p);
  Eigen::VectorXd x(spec.ambient_real_dim());
  int at = 0;
  for (int k = 0; k < spec.m; ++k) {
    x[at++] = p.Z[static_cast<std::size_t>(k)].real();
    if (spec.field == Field::Complex) x[at++] = p.Z[static_cast<std::size_t>(k)].imag();
  }
  for (int l = 0; l < spec.s; ++l) {
    for (int i = 0; i < spec.n; ++i) x[at++] = p.V[static_cast<std::size_t>(l)][i];
  }
  for (int l = 0; l < spec.s; ++l) {
    for (int i = 0; i < spec.n; ++i) x[at++] = p.W[static_cast<std::size_t>(l)][i];
  }
  return x;
}

inline QuadricPoint unpack_point(const VarietySpec& spec, const Eigen::VectorXd& x) {
  if (x.size() != spec.ambient_real_dim()) {
    throw std::invalid_argument("packed vector has wrong length");
  }
  QuadricPoint p;
  p.Z.resize(static_cast<std::size_t>(spec.m));
  p.V.assign(static_cast<std::size_t>(spec.s), AlgebraElement(spec.n));
  p.W.assign(static_cast<std::size_t>(spec.s), AlgebraElement(spec.n));
  int at = 0;
  for (int k = 0; k < spec.m; ++k) {
    const double re = x[at++];
    const double im = spec.field == Field::Complex ? x[at++] : 0.0;
    p.Z[static_cast<std::size_t>(k)] = {re, im};
  }
  for (int l = 0; l < spec.s; ++l) {
    for (int i = 0; i < spec.n; ++i) p.V[static_cast<std::size_t>(l)][i] = x[at++];
  }
  for (int l = 0; l < spec.s; ++l) {
    for (int i = 0; i < spec.n; ++i) p.W[static_cast<std::size_t>(l)][i] = x[at++];
  }
  return p;
}

/// Derivative of the quadric (algebra-valued) part as a dense real matrix,
/// n rows by ambient_real_dim columns.
inline Eigen::MatrixXd quadric_jacobian(const VarietySpec& spec, const QuadricPoint& p) {
  check_point(spec, p);
  const double weight = spec.frame_weight();
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(spec.n, spec.ambient_real_dim());
  int at = 0;
  for (int k = 0; k < spec.m; ++k) {
    const auto& lk = spec.frame[static_cast<std::size_t>(k)];
    const double re = p.Z[static_cast<std::size_t>(k)].real();
    for (int i = 0; i < spec.n; ++i) J(i, at) = 2.0 * weight * re * lk[i];
    ++at;
    if (spec.field == Field::Complex) {
      const double im = p.Z[static_cast<std::size_t>(k)].imag();
      for (int i = 0; i < spec.n; ++i) J(i, at) = 2.0 * weight * im * lk[i];
      ++at;
    }
  }
  const int vbase = at;
  for (int l = 0; l < spec.s; ++l) {
    const auto& W = p.W[static_cast<std::size_t>(l)];
    for (int j = 0; j < spec.n; ++j) {
      const AlgebraElement col = mul(AlgebraElement::unit(spec.n, j), W);
      for (int i = 0; i < spec.n; ++i) J(i, vbase + l * spec.n + j) = col[i];
    }
  }
  const int wbase = vbase + spec.s * spec.n;
  for (int l = 0; l < spec.s; ++l) {
    const auto& V = p.V[static_cast<std::size_t>(l)];
    for (int j = 0; j < spec.n; ++j) {
      const AlgebraElement col = mul(V, AlgebraElement::unit(spec.n, j));
      for (int i = 0; i < spec.n; ++i) J(i, wbase + l * spec.n + j) = col[i];
    }
  }
  return J;
}

/// Full derivative of (sphere, quadric): 1+n rows by ambient columns.
inline Eigen::MatrixXd jacobian(const VarietySpec& spec, const QuadricPoint& p) {
  Eigen::MatrixXd J(spec.residual_dim(), spec.ambient_real_dim());
  J.row(0) = 2.0 * pack_point(spec, p).transpose();
  J.bottomRows(spec.n) = quadric_jacobian(spec, p);
  return J;
}

struct RegularityReport {
  bool regular = false;
  double sigma_min = 0.0;
  double residual = 0.0;
};

/// Certifies that the point is a regular point of the defining system: the
/// Jacobian must have full row rank with smallest singular value above tol.
/// The point must lie on the variety within residual_tol.
inline RegularityReport is_regular(const VarietySpec& spec, const QuadricPoint& p, double tol,
                                   double residual_tol = 1e-8) {
  RegularityReport rep;
  rep.residual = eval_defining(spec, p).norm();
  if (rep.residual > residual_tol) {
    throw std::domain_error("is_regular: point is not on the variety");
  }
  const Eigen::MatrixXd J = jacobian(spec, p);
  if (J.rows() > J.cols()) {
    rep.regular = false;
    return rep;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(J);
  rep.sigma_min = svd.singularValues()[J.rows() - 1];
  rep.regular = rep.sigma_min > tol;
  return rep;
}

inline void check_torus_element(const VarietySpec& spec, const TorusElement& g,
                                double tol = 1e-9) {
  if (static_cast<int>(g.g.size()) != spec.m) {
    throw std::invalid_argument("torus element length must equal m");
  }
  for (const auto& gk : g.g) {
    if (std::abs(std::abs(gk) - 1.0) > tol) {
      throw std::invalid_argument("torus element entries must have modulus 1");
    }
    if (spec.field == Field::Real && std::abs(gk.imag()) > tol) {
      throw std::invalid_argument("real-case specs admit only sign entries");
    }
  }
}

/// Coordinatewise action Z_k -> g_k Z_k; V and W are untouched.
inline QuadricPoint act(const VarietySpec& spec, const TorusElement& g, const QuadricPoint& p) {
  check_point(spec, p);
  check_torus_element(spec, g);
  QuadricPoint q = p;
  for (int k = 0; k < spec.m; ++k) {
    q.Z[static_cast<std::size_t>(k)] *= g.g[static_cast<std::size_t>(k)];
  }
  return q;
}

/// Replaces each Z_k by |Z_k| (a torus translate of the point), landing in
/// the nonnegative slice.
inline QuadricPoint fold_nonnegative(const QuadricPoint& p) {
  QuadricPoint q = p;
  for (auto& z : q.Z) z = std::abs(z);
  return q;
}

/// Barycentric lift: the unique candidate nonnegative-slice point over
/// (V, W). The squared coordinates are
///   t_k = (1 - |V|^2 - |W|^2)/(n+1) - 2/(n+1) <lambda_k, VW>,
/// nonnegative exactly when (V, W) is realizable; values in (-1e-12, 0) are
/// clamped to zero (rounding at the boundary sphere).
inline std::optional<QuadricPoint> lift_from_vw(const VarietySpec& spec,
                                                const AlgebraElement& V,
                                                const AlgebraElement& W) {
  if (!spec.standard) throw std::invalid_argument("lift_from_vw requires the standard spec");
  if (V.dim() != spec.n || W.dim() != spec.n) {
    throw std::invalid_argument("lift_from_vw: dimension mismatch");
  }
  const int n = spec.n;
  const AlgebraElement prod = mul(V, W);
  const double base = (1.0 - norm_sq(V) - norm_sq(W)) / (n + 1);
  QuadricPoint p;
  p.Z.resize(static_cast<std::size_t>(spec.m));
  p.V = {V};
  p.W = {W};
  for (int k = 0; k < spec.m; ++k) {
    double tk = base - 2.0 / (n + 1) * inner(spec.frame[static_cast<std::size_t>(k)], prod);
    if (tk < 0.0) {
      if (tk < -1e-12) return std::nullopt;
      tk = 0.0;
    }
    p.Z[static_cast<std::size_t>(k)] = std::sqrt(tk);
  }
  return p;
}

}  // namespace divquad
