#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <stdexcept>
#include <vector>

#include "divquad/algebra.hpp"

namespace divquad {

namespace detail {

struct LpFeasibility {
  bool feasible = false;
  std::vector<double> x;       // solution with x >= 0, A x = b (feasible case)
  std::vector<double> farkas;  // y with y^T A_j <= eps for all j and y^T b > 0 (infeasible case)
};

/// Phase-1 simplex for the feasibility of {A x = b, x >= 0} with Bland's
/// rule. On infeasibility the simplex multipliers give a Farkas certificate.
inline LpFeasibility lp_equality_feasible(Eigen::MatrixXd A, Eigen::VectorXd b, double tol) {
  const int rows = static_cast<int>(A.rows());
  const int cols = static_cast<int>(A.cols());
  std::vector<double> row_sign(static_cast<std::size_t>(rows), 1.0);
  for (int i = 0; i < rows; ++i) {
    if (b[i] < 0) {
      A.row(i) = -A.row(i);
      b[i] = -b[i];
      row_sign[static_cast<std::size_t>(i)] = -1.0;
    }
  }

  // Tableau [A | I | rhs] plus a reduced-cost row for the artificial
  // objective min sum(artificials), already canonicalized against the
  // artificial starting basis.
  const int total = cols + rows;
  Eigen::MatrixXd T(rows + 1, total + 1);
  T.setZero();
  T.block(0, 0, rows, cols) = A;
  T.block(0, cols, rows, rows) = Eigen::MatrixXd::Identity(rows, rows);
  T.block(0, total, rows, 1) = b;
  for (int j = 0; j < cols; ++j) T(rows, j) = -A.col(j).sum();
  T(rows, total) = -b.sum();

  std::vector<int> basis(static_cast<std::size_t>(rows));
  for (int i = 0; i < rows; ++i) basis[static_cast<std::size_t>(i)] = cols + i;

  const double pivot_eps = 1e-11;
  const int max_pivots = 200 * (rows + cols + 1);
  for (int pivots = 0; pivots < max_pivots; ++pivots) {
    int enter = -1;
    for (int j = 0; j < total; ++j) {
      if (T(rows, j) < -pivot_eps) {
        enter = j;
        break;  // Bland: smallest index
      }
    }
    if (enter < 0) break;
    int leave = -1;
    double best = 0.0;
    for (int i = 0; i < rows; ++i) {
      if (T(i, enter) > pivot_eps) {
        const double ratio = T(i, total) / T(i, enter);
        if (leave < 0 || ratio < best - 1e-15 ||
            (ratio < best + 1e-15 && basis[static_cast<std::size_t>(i)] <
                                         basis[static_cast<std::size_t>(leave)])) {
          leave = i;
          best = ratio;
        }
      }
    }
    if (leave < 0) break;  // cannot happen: phase-1 objective is bounded below
    T.row(leave) /= T(leave, enter);
    for (int i = 0; i <= rows; ++i) {
      if (i != leave && T(i, enter) != 0.0) T.row(i) -= T(i, enter) * T.row(leave);
    }
    basis[static_cast<std::size_t>(leave)] = enter;
  }

  LpFeasibility out;
  const double objective = -T(rows, total);
  if (objective <= tol) {
    out.feasible = true;
    out.x.assign(static_cast<std::size_t>(cols), 0.0);
    for (int i = 0; i < rows; ++i) {
      const int j = basis[static_cast<std::size_t>(i)];
      if (j < cols) out.x[static_cast<std::size_t>(j)] = std::max(0.0, T(i, total));
    }
  } else {
    // Reduced cost of artificial i is 1 - y_i, so y_i = 1 - T(rows, cols+i);
    // the sign flips applied to make b nonnegative transfer to y.
    out.farkas.assign(static_cast<std::size_t>(rows), 0.0);
    for (int i = 0; i < rows; ++i) {
      out.farkas[static_cast<std::size_t>(i)] =
          row_sign[static_cast<std::size_t>(i)] * (1.0 - T(rows, cols + i));
    }
  }
  return out;
}

inline void next_combination_init(std::vector<int>& idx, int k) {
  idx.resize(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
}

inline bool next_combination(std::vector<int>& idx, int m) {
  const int k = static_cast<int>(idx.size());
  int i = k - 1;
  while (i >= 0 && idx[static_cast<std::size_t>(i)] == m - k + i) --i;
  if (i < 0) return false;
  ++idx[static_cast<std::size_t>(i)];
  for (int j = i + 1; j < k; ++j) {
    idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
  return true;
}

}  // namespace detail

/// One rejected subset with a direction that strictly separates it from the
/// origin: <direction, v_k> > 0 for every k in the subset.
struct SubsetSeparation {
  std::vector<int> indices;
  AlgebraElement direction;
};

struct HullCertificate {
  bool member = false;
  // Membership: convex coefficients on `subset` with sum 1 and zero combination.
  std::vector<int> subset;
  std::vector<double> coefficients;
  // Non-membership: one separating direction per tested maximal subset.
  std::vector<SubsetSeparation> separations;
};

/// Decides whether the origin lies in the convex hull of some subset of at
/// most max_subset_size of the given vectors, by LP feasibility of
/// {c >= 0, sum c = 1, sum c_k v_k = 0} over every subset of size
/// min(max_subset_size, count). Testing only maximal subsets is exhaustive:
/// membership for a smaller subset extends by zero coefficients, and a
/// separating direction for a superset separates every subset of it.
inline HullCertificate hull_membership(const std::vector<AlgebraElement>& vectors,
                                       int max_subset_size, double tol = 1e-9) {
  HullCertificate cert;
  if (vectors.empty()) return cert;  // empty hull: not a member
  if (max_subset_size < 1) throw std::invalid_argument("max_subset_size must be >= 1");
  const int m = static_cast<int>(vectors.size());
  const int n = vectors.front().dim();
  for (const auto& v : vectors) v.check_dim(vectors.front());
  const int k = std::min(max_subset_size, m);

  std::vector<int> idx;
  detail::next_combination_init(idx, k);
  do {
    Eigen::MatrixXd A(n + 1, k);
    for (int j = 0; j < k; ++j) {
      const auto& v = vectors[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])];
      for (int i = 0; i < n; ++i) A(i, j) = v[i];
      A(n, j) = 1.0;
    }
    Eigen::VectorXd b = Eigen::VectorXd::Zero(n + 1);
    b[n] = 1.0;
    auto lp = detail::lp_equality_feasible(A, b, tol);
    if (lp.feasible) {
      cert.member = true;
      cert.subset = idx;
      cert.coefficients = lp.x;
      cert.separations.clear();
      return cert;
    }
    SubsetSeparation sep;
    sep.indices = idx;
    sep.direction = AlgebraElement(n);
    for (int i = 0; i < n; ++i) sep.direction[i] = -lp.farkas[static_cast<std::size_t>(i)];
    cert.separations.push_back(std::move(sep));
  } while (detail::next_combination(idx, m));

  cert.member = false;
  return cert;
}

inline bool origin_in_hull(const std::vector<AlgebraElement>& vectors, double tol = 1e-9) {
  if (vectors.empty()) return false;
  return hull_membership(vectors, static_cast<int>(vectors.size()), tol).member;
}

/// Weak hyperbolicity: no n or fewer of the vectors contain the origin in
/// their convex hull. An empty collection is trivially weakly hyperbolic.
inline bool weakly_hyperbolic(const std::vector<AlgebraElement>& vectors, int n,
                              double tol = 1e-9) {
  if (vectors.empty()) return true;
  return !hull_membership(vectors, n, tol).member;
}

}  // namespace divquad
