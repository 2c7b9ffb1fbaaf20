#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "divquad/algebra.hpp"

namespace divquad {

/// The symmetric unit-vector frame: n+1 unit vectors in the algebra of
/// dimension n whose pairwise inner products are all -1/n. They are the
/// vertices of a regular n-simplex centered at the origin.
struct SimplexFrame {
  int dim = 1;
  std::vector<AlgebraElement> vectors;

  int size() const { return static_cast<int>(vectors.size()); }
};

/// Coordinates of a point of Span(lambda, 1): the pair (V, W) with
/// u_k = V lambda_k + W.
struct SpanCoords {
  AlgebraElement V;
  AlgebraElement W;
};

/// Builds the standard frame by the inductive construction: starting from
/// (-1, 1) on the line, each step appends the top vertex (0,...,0,1) and
/// shrinks the previous solution onto the slice at height -1/d.
inline SimplexFrame build_lambda(int n) {
  require_algebra_dim(n);
  std::vector<std::vector<double>> vs = {{-1.0}, {1.0}};
  for (int d = 2; d <= n; ++d) {
    const double shrink = std::sqrt(1.0 - 1.0 / (static_cast<double>(d) * d));
    std::vector<std::vector<double>> next;
    next.reserve(static_cast<std::size_t>(d) + 1);
    for (const auto& v : vs) {
      std::vector<double> w(static_cast<std::size_t>(d), 0.0);
      for (int i = 0; i < d - 1; ++i) w[static_cast<std::size_t>(i)] = shrink * v[static_cast<std::size_t>(i)];
      w.back() = -1.0 / d;
      next.push_back(std::move(w));
    }
    std::vector<double> top(static_cast<std::size_t>(d), 0.0);
    top.back() = 1.0;
    next.push_back(std::move(top));
    vs = std::move(next);
  }
  SimplexFrame frame;
  frame.dim = n;
  frame.vectors.reserve(vs.size());
  for (const auto& v : vs) {
    AlgebraElement e(n);
    for (int i = 0; i < n; ++i) e[i] = v[static_cast<std::size_t>(i)];
    frame.vectors.push_back(e);
  }
  return frame;
}

/// True when the vectors satisfy the defining Gram conditions (diagonal 1,
/// off-diagonal -1/n) within tol and the count is n+1.
inline bool is_standard_frame(const std::vector<AlgebraElement>& vectors, int n,
                              double tol = 1e-9) {
  if (static_cast<int>(vectors.size()) != n + 1) return false;
  for (std::size_t k = 0; k < vectors.size(); ++k) {
    if (vectors[k].dim() != n) return false;
    for (std::size_t l = 0; l < vectors.size(); ++l) {
      const double target = (k == l) ? 1.0 : -1.0 / n;
      if (std::abs(inner(vectors[k], vectors[l]) - target) > tol) return false;
    }
  }
  return true;
}

inline bool is_standard_frame(const SimplexFrame& frame, double tol = 1e-9) {
  return is_standard_frame(frame.vectors, frame.dim, tol);
}

inline void require_standard_frame(const SimplexFrame& frame) {
  if (!is_standard_frame(frame)) {
    throw std::invalid_argument("operation requires the standard symmetric frame");
  }
}

/// Projection identity x = n/(n+1) sum_k <lambda_k, x> lambda_k; the frame is
/// an overcomplete tight basis, so this reproduces x.
inline AlgebraElement reconstruct(const SimplexFrame& frame, const AlgebraElement& x) {
  require_standard_frame(frame);
  const int n = frame.dim;
  AlgebraElement acc(n);
  for (const auto& lk : frame.vectors) acc += inner(lk, x) * lk;
  return acc * (static_cast<double>(n) / (n + 1));
}

/// u_k = V lambda_k + W for k = 0..n.
inline std::vector<AlgebraElement> span_embed(const SimplexFrame& frame, const SpanCoords& c) {
  require_standard_frame(frame);
  std::vector<AlgebraElement> u;
  u.reserve(frame.vectors.size());
  for (const auto& lk : frame.vectors) u.push_back(mul(c.V, lk) + c.W);
  return u;
}

/// Recovers (V, W) from a tuple in Span(lambda, 1):
/// V = 1/(n+1) sum u_k conj(lambda_k), W = 1/(n+1) sum u_k.
/// Throws when re-embedding the result does not reproduce u within tol.
inline SpanCoords span_coords(const SimplexFrame& frame, const std::vector<AlgebraElement>& u,
                              double tol = 1e-9) {
  require_standard_frame(frame);
  const int n = frame.dim;
  if (static_cast<int>(u.size()) != n + 1) {
    throw std::invalid_argument("span_coords: tuple length must be n+1");
  }
  AlgebraElement V(n), W(n);
  for (std::size_t k = 0; k < u.size(); ++k) {
    V += mul(u[k], conj(frame.vectors[k]));
    W += u[k];
  }
  V /= n + 1;
  W /= n + 1;
  SpanCoords c{V, W};
  const auto back = span_embed(frame, c);
  double resid = 0.0, scale = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    resid += norm_sq(u[k] - back[k]);
    scale += norm_sq(u[k]);
  }
  if (std::sqrt(resid) > tol * std::max(1.0, std::sqrt(scale))) {
    throw std::domain_error("span_coords: tuple is not in Span(lambda, 1)");
  }
  return c;
}

}  // namespace divquad
