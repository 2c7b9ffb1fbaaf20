#pragma once

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "divquad/hull.hpp"
#include "divquad/maps.hpp"
#include "divquad/sampling.hpp"
#include "divquad/variety.hpp"

namespace divquad {

struct SphereProductSummand {
  int a = 1;
  int b = 1;
  int multiplicity = 1;
};

struct PoincarePolynomial {
  std::vector<long long> betti;  // indexed by degree 0..top

  int top_degree() const { return static_cast<int>(betti.size()) - 1; }

  long long betti_sum() const {
    long long s = 0;
    for (long long b : betti) s += b;
    return s;
  }

  long long euler_characteristic() const {
    long long chi = 0;
    for (std::size_t k = 0; k < betti.size(); ++k) {
      chi += (k % 2 == 0) ? betti[k] : -betti[k];
    }
    return chi;
  }

  bool poincare_duality() const {
    const std::size_t d = betti.size();
    for (std::size_t k = 0; k < d; ++k) {
      if (betti[k] != betti[d - 1 - k]) return false;
    }
    return true;
  }

  bool operator==(const PoincarePolynomial& o) const { return betti == o.betti; }
};

/// Kuenneth for S^a x S^b: the coefficients of (1 + t^a)(1 + t^b).
inline PoincarePolynomial sphere_product_betti(int a, int b) {
  if (a < 0 || b < 0) throw std::invalid_argument("sphere dimensions must be >= 0");
  PoincarePolynomial p;
  p.betti.assign(static_cast<std::size_t>(a + b) + 1, 0);
  p.betti[0] += 1;
  p.betti[static_cast<std::size_t>(a)] += 1;
  p.betti[static_cast<std::size_t>(b)] += 1;
  p.betti[static_cast<std::size_t>(a + b)] += 1;
  return p;
}

/// Homology of a connected sum of sphere products: 1 at the bottom and top,
/// and in between the summand contributions add up.
inline PoincarePolynomial connected_sum_betti(const std::vector<SphereProductSummand>& summands) {
  if (summands.empty()) throw std::invalid_argument("connected sum needs at least one summand");
  const int d = summands.front().a + summands.front().b;
  // d = 2 is allowed: the formula reproduces orientable surface homology,
  // and the real one-dimensional family predicts the torus S^1 x S^1.
  if (d < 2) throw std::invalid_argument("connected-sum formula requires dimension >= 2");
  PoincarePolynomial p;
  p.betti.assign(static_cast<std::size_t>(d) + 1, 0);
  for (const auto& s : summands) {
    if (s.a < 1 || s.b < 1) throw std::invalid_argument("summand spheres must be positive-dimensional");
    if (s.a + s.b != d) throw std::invalid_argument("summands have inconsistent dimensions");
    if (s.multiplicity < 1) throw std::invalid_argument("multiplicity must be >= 1");
    for (int deg : {s.a, s.b}) {
      if (deg > 0 && deg < d) p.betti[static_cast<std::size_t>(deg)] += s.multiplicity;
    }
  }
  p.betti[0] = 1;
  p.betti[static_cast<std::size_t>(d)] = 1;
  return p;
}

/// Betti numbers of the Stiefel manifold of orthonormal 2-frames in R^{2s}
/// (the unit tangent bundle of the odd sphere S^{2s-1}): classes in degrees
/// 0, 2s-2, 2s-1 and 4s-3.
inline PoincarePolynomial stiefel_2frame_betti(int s) {
  if (s < 1) throw std::invalid_argument("stiefel_2frame_betti requires s >= 1");
  PoincarePolynomial p;
  p.betti.assign(static_cast<std::size_t>(4 * s - 3) + 1, 0);
  p.betti[0] += 1;
  p.betti[static_cast<std::size_t>(2 * s - 2)] += 1;
  p.betti[static_cast<std::size_t>(2 * s - 1)] += 1;
  p.betti[static_cast<std::size_t>(4 * s - 3)] += 1;
  return p;
}

enum class DiffeoKind { ConnectedSum, SphereProduct, Stiefel, NoPrediction };

struct DiffeotypeDescriptor {
  DiffeoKind kind = DiffeoKind::NoPrediction;
  int dimension = 0;
  std::vector<SphereProductSummand> summands;  // ConnectedSum
  int product_a = 0;                           // SphereProduct: S^a x S^b
  int product_b = 0;
  int stiefel_rows = 0;                        // Stiefel: V_{rows,2}
  PoincarePolynomial betti;
  std::string note;

  std::string describe() const {
    std::ostringstream os;
    switch (kind) {
      case DiffeoKind::ConnectedSum: {
        bool first = true;
        for (const auto& s : summands) {
          if (!first) os << " # ";
          first = false;
          if (s.multiplicity > 1) os << "#_" << s.multiplicity << " ";
          os << "S^" << s.a << " x S^" << s.b;
        }
        break;
      }
      case DiffeoKind::SphereProduct:
        os << "S^" << product_a << " x S^" << product_b;
        break;
      case DiffeoKind::Stiefel:
        os << "V_{" << stiefel_rows << ",2}";
        break;
      case DiffeoKind::NoPrediction:
        os << "no prediction in paper";
        break;
    }
    return os.str();
  }
};

inline long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

namespace detail {

inline DiffeotypeDescriptor make_product(int a, int b, std::string note = {}) {
  DiffeotypeDescriptor d;
  d.kind = DiffeoKind::SphereProduct;
  d.product_a = a;
  d.product_b = b;
  d.dimension = a + b;
  d.betti = sphere_product_betti(a, b);
  d.note = std::move(note);
  return d;
}

inline DiffeotypeDescriptor make_connected_sum(std::vector<SphereProductSummand> summands,
                                               std::string note = {}) {
  DiffeotypeDescriptor d;
  d.kind = DiffeoKind::ConnectedSum;
  d.summands = std::move(summands);
  d.dimension = d.summands.front().a + d.summands.front().b;
  d.betti = connected_sum_betti(d.summands);
  d.note = std::move(note);
  return d;
}

}  // namespace detail

/// Case analysis for the predicted diffeomorphism type. The n = 2 rows with
/// general m and s apply to real-coordinate specs (and to m = 0, where the
/// field flag is vacuous); their dimension counts only hold with real Z's.
inline DiffeotypeDescriptor predicted_type(const VarietySpec& spec) {
  spec.validate();
  if (!weakly_hyperbolic(spec.frame, spec.n)) throw NotWeaklyHyperbolic();
  const bool in_hull = origin_in_hull(spec.frame);
  const int n = spec.n;

  if (!in_hull) {
    if (spec.s == 1 && spec.field == Field::Complex) {
      return detail::make_product(2 * spec.m, n - 1);
    }
    if (n == 2 && (spec.field == Field::Real || spec.m == 0)) {
      if (spec.m == 0) {
        DiffeotypeDescriptor d;
        d.kind = DiffeoKind::Stiefel;
        d.stiefel_rows = 2 * spec.s;
        d.dimension = 4 * spec.s - 3;
        d.betti = stiefel_2frame_betti(spec.s);
        return d;
      }
      return detail::make_product(spec.m + 2 * spec.s - 2, 2 * spec.s - 1);
    }
  } else {
    if (spec.s == 1 && is_standard_frame(spec.frame, n)) {
      if (spec.field == Field::Complex) {
        if (n == 1) {
          return detail::make_product(
              2, 2,
              "single product; the literal summand-count formula would give two "
              "copies at n = 1, conflicting with the direct description");
        }
        std::vector<SphereProductSummand> summands;
        for (int k = 1; k <= n / 2; ++k) {
          summands.push_back({n + k, 2 * n + 1 - k, static_cast<int>(binomial(n + 1, k))});
        }
        return detail::make_connected_sum(std::move(summands));
      }
      std::vector<SphereProductSummand> summands{{n, n, static_cast<int>((1LL << n) - 1)}};
      return detail::make_connected_sum(std::move(summands));
    }
    if (n == 2 && spec.field == Field::Real && spec.m == 3) {
      std::vector<SphereProductSummand> summands{{2 * spec.s, 2 * spec.s, 3}};
      return detail::make_connected_sum(std::move(summands));
    }
  }

  DiffeotypeDescriptor d;
  d.kind = DiffeoKind::NoPrediction;
  d.dimension = spec.manifold_dim();
  return d;
}

/// Fixed set of a coordinate subtorus with fixed_circle_count circle factors
/// acting on a standard spec: the product S^{2m'} x S^{n-1} with
/// m' = n + 1 - fixed_circle_count.
inline DiffeotypeDescriptor fixed_set_prediction(const VarietySpec& spec,
                                                 int fixed_circle_count) {
  if (!spec.standard) throw std::invalid_argument("fixed_set_prediction requires a standard spec");
  if (fixed_circle_count < 1 || fixed_circle_count > spec.n + 1) {
    throw std::invalid_argument("fixed_circle_count must be between 1 and n+1");
  }
  const int m_rest = spec.n + 1 - fixed_circle_count;
  return detail::make_product(2 * m_rest, spec.n - 1);
}

enum class Freeness { Free, TorsionFreeNotFree };

struct FreenessVerdict {
  Freeness verdict = Freeness::Free;
  long long manifold_betti_sum = 0;
  long long fixed_set_betti_sum = 0;
};

/// Betti-sum criterion: the equivariant cohomology (real coefficients) is
/// free exactly when the manifold and its fixed set have equal total Betti
/// numbers; otherwise, for these varieties, it is torsion-free but not free.
/// The fixed set is two unit spheres of the algebra when s = 1 and the
/// 2-frame Stiefel manifold for the n = 2 families with s >= 2; its Betti
/// sum is 4 either way.
inline FreenessVerdict freeness_verdict(const VarietySpec& spec) {
  const DiffeotypeDescriptor type = predicted_type(spec);
  if (type.kind == DiffeoKind::NoPrediction) {
    throw std::invalid_argument("freeness_verdict: no prediction available for this spec");
  }
  FreenessVerdict v;
  v.manifold_betti_sum = type.betti.betti_sum();
  if (spec.s == 1) {
    v.fixed_set_betti_sum = sphere_product_betti(0, spec.n - 1).betti_sum();
  } else {
    v.fixed_set_betti_sum = stiefel_2frame_betti(spec.s).betti_sum();
  }
  v.verdict = (v.manifold_betti_sum == v.fixed_set_betti_sum) ? Freeness::Free
                                                              : Freeness::TorsionFreeNotFree;
  return v;
}

struct FixedPointReport {
  long long samples = 0;
  long long violations = 0;       // neither V nor W vanishes at tolerance
  long long v_zero_count = 0;
  long long w_zero_count = 0;
  int components = 0;
  double max_min_norm = 0.0;      // largest min(|V|, |W|) seen
  double max_residual = 0.0;
  long long moved_checked = 0;
  long long moved_failures = 0;   // generic points not displaced by a generic torus element
};

/// Samples the zero-Z locus {sum V_l W_l = 0, sum(|V_l|^2+|W_l|^2) = 1} of a
/// standard spec and confirms the division-algebra dichotomy: every sampled
/// point has V = 0 or W = 0, and both unit-sphere components occur. Also
/// checks that generic variety points with Z != 0 are displaced by a generic
/// torus element.
inline FixedPointReport verify_fixed_points(const VarietySpec& spec, std::uint64_t seed,
                                            long long count, double tol = 1e-10) {
  if (!spec.standard) throw std::invalid_argument("verify_fixed_points requires a standard spec");
  VarietySpec zero_z;
  zero_z.n = spec.n;
  zero_z.m = 0;
  zero_z.s = 1;
  zero_z.field = spec.field;
  zero_z.standard = false;
  zero_z.frame.clear();

  FixedPointReport rep;
  rep.samples = count;
  for (const auto& p : sample(zero_z, seed, count)) {
    const double nv = norm(p.V.front());
    const double nw = norm(p.W.front());
    const double small = std::min(nv, nw);
    rep.max_min_norm = std::max(rep.max_min_norm, small);
    rep.max_residual = std::max(rep.max_residual, eval_defining(zero_z, p).norm());
    if (small > tol) {
      ++rep.violations;
    } else if (nv < nw) {
      ++rep.v_zero_count;
    } else {
      ++rep.w_zero_count;
    }
  }
  rep.components = (rep.v_zero_count > 0 ? 1 : 0) + (rep.w_zero_count > 0 ? 1 : 0);

  const long long generic_count = std::min<long long>(count, 200);
  const auto generic = sample(spec, derive_seed(seed, 0x5eedULL), generic_count);
  Rng rng(derive_seed(seed, 0xac7edULL));
  for (const auto& p : generic) {
    double zmax = 0.0;
    for (const auto& z : p.Z) zmax = std::max(zmax, std::abs(z));
    if (zmax < 1e-3) continue;  // too close to the fixed set to assert motion
    TorusElement g;
    g.g.resize(p.Z.size());
    for (auto& gk : g.g) {
      if (spec.field == Field::Complex) {
        const double t = 6.283185307179586476925286766559 * rng.uniform(0.1, 0.9);
        gk = {std::cos(t), std::sin(t)};
      } else {
        gk = -1.0;
      }
    }
    ++rep.moved_checked;
    const QuadricPoint moved = act(spec, g, p);
    double displacement = 0.0;
    for (std::size_t k = 0; k < p.Z.size(); ++k) {
      displacement = std::max(displacement, std::abs(moved.Z[k] - p.Z[k]));
    }
    if (displacement < 1e-6 * zmax) ++rep.moved_failures;
  }
  return rep;
}

}  // namespace divquad
