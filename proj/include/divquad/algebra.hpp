#pragma once

#include <array>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include "divquad/rng.hpp"

namespace divquad {

inline constexpr int kMaxAlgebraDim = 8;

inline bool valid_algebra_dim(int n) { return n == 1 || n == 2 || n == 4 || n == 8; }

inline void require_algebra_dim(int n) {
  if (!valid_algebra_dim(n)) {
    throw std::invalid_argument("algebra dimension must be one of {1,2,4,8}, got " +
                                std::to_string(n));
  }
}

namespace detail {

inline void cd_conj(int n, const double* a, double* out) {
  out[0] = a[0];
  for (int i = 1; i < n; ++i) out[i] = -a[i];
}

// Doubling rule (a,b)(c,d) = (ac - conj(d) b, d a + b conj(c)), recursively
// from the reals. This convention embeds the complex numbers and quaternions
// with the usual i, j, k multiplication table.
inline void cd_mul(int n, const double* x, const double* y, double* out) {
  if (n == 1) {
    out[0] = x[0] * y[0];
    return;
  }
  const int h = n / 2;
  const double* a = x;
  const double* b = x + h;
  const double* c = y;
  const double* d = y + h;
  double t[4], cj[4];
  cd_mul(h, a, c, out);
  cd_conj(h, d, cj);
  cd_mul(h, cj, b, t);
  for (int i = 0; i < h; ++i) out[i] -= t[i];
  cd_mul(h, d, a, out + h);
  cd_conj(h, c, cj);
  cd_mul(h, b, cj, t);
  for (int i = 0; i < h; ++i) out[h + i] += t[i];
}

}  // namespace detail

/// Element of the normed real division algebra of dimension 1, 2, 4 or 8
/// (reals, complex numbers, quaternions, octonions), stored as coefficients
/// over the canonical basis. Coefficient 0 is the real part.
class AlgebraElement {
 public:
  AlgebraElement() : n_(1), c_{} {}

  explicit AlgebraElement(int n) : n_(n), c_{} { require_algebra_dim(n); }

  static AlgebraElement scalar(int n, double x) {
    AlgebraElement r(n);
    r.c_[0] = x;
    return r;
  }

  static AlgebraElement one(int n) { return scalar(n, 1.0); }

  /// Basis unit e_k, 0 <= k < n.
  static AlgebraElement unit(int n, int k) {
    require_algebra_dim(n);
    if (k < 0 || k >= n) throw std::invalid_argument("basis index out of range");
    AlgebraElement r(n);
    r.c_[k] = 1.0;
    return r;
  }

  static AlgebraElement random_normal(int n, Rng& rng) {
    AlgebraElement r(n);
    for (int i = 0; i < n; ++i) r.c_[i] = rng.normal();
    return r;
  }

  int dim() const { return n_; }

  double operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  double& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }

  AlgebraElement& operator+=(const AlgebraElement& o) {
    check_dim(o);
    for (int i = 0; i < n_; ++i) c_[i] += o.c_[i];
    return *this;
  }
  AlgebraElement& operator-=(const AlgebraElement& o) {
    check_dim(o);
    for (int i = 0; i < n_; ++i) c_[i] -= o.c_[i];
    return *this;
  }
  AlgebraElement& operator*=(double t) {
    for (int i = 0; i < n_; ++i) c_[i] *= t;
    return *this;
  }
  AlgebraElement& operator/=(double t) { return (*this) *= (1.0 / t); }

  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator-(AlgebraElement a) { return a *= -1.0; }
  friend AlgebraElement operator*(AlgebraElement a, double t) { return a *= t; }
  friend AlgebraElement operator*(double t, AlgebraElement a) { return a *= t; }
  friend AlgebraElement operator/(AlgebraElement a, double t) { return a /= t; }

  void check_dim(const AlgebraElement& o) const {
    if (n_ != o.n_) throw std::invalid_argument("algebra dimension mismatch");
  }

 private:
  int n_;
  std::array<double, kMaxAlgebraDim> c_;
};

/// Product under the fixed doubling convention.
inline AlgebraElement mul(const AlgebraElement& a, const AlgebraElement& b) {
  a.check_dim(b);
  const int n = a.dim();
  double x[kMaxAlgebraDim] = {}, y[kMaxAlgebraDim] = {}, out[kMaxAlgebraDim] = {};
  for (int i = 0; i < n; ++i) {
    x[i] = a[i];
    y[i] = b[i];
  }
  detail::cd_mul(n, x, y, out);
  AlgebraElement r(n);
  for (int i = 0; i < n; ++i) r[i] = out[i];
  return r;
}

inline AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
  return mul(a, b);
}

/// Conjugation: negates every coefficient except the real part.
inline AlgebraElement conj(const AlgebraElement& a) {
  AlgebraElement r = a;
  for (int i = 1; i < a.dim(); ++i) r[i] = -r[i];
  return r;
}

inline double real_part(const AlgebraElement& a) { return a[0]; }

/// <a,b> = Re(conj(a) b), which over the canonical basis equals the
/// coefficient dot product.
inline double inner(const AlgebraElement& a, const AlgebraElement& b) {
  a.check_dim(b);
  double s = 0.0;
  for (int i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm_sq(const AlgebraElement& a) { return inner(a, a); }

inline double norm(const AlgebraElement& a) { return std::sqrt(norm_sq(a)); }

/// Multiplicative inverse conj(a)/|a|^2.
inline AlgebraElement inverse(const AlgebraElement& a) {
  const double n2 = norm_sq(a);
  if (n2 <= 0.0) throw std::domain_error("inverse of zero element");
  return conj(a) / n2;
}

inline std::ostream& operator<<(std::ostream& os, const AlgebraElement& a) {
  os << '(';
  for (int i = 0; i < a.dim(); ++i) {
    if (i) os << ", ";
    os << a[i];
  }
  return os << ')';
}

}  // namespace divquad
