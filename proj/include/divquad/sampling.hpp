#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "divquad/hull.hpp"
#include "divquad/rng.hpp"
#include "divquad/variety.hpp"

namespace divquad {

struct NotWeaklyHyperbolic : std::runtime_error {
  NotWeaklyHyperbolic()
      : std::runtime_error(
            "frame is not weakly hyperbolic: the origin lies in the convex hull "
            "of n or fewer frame vectors") {}
};

struct NonConvergence : std::runtime_error {
  explicit NonConvergence(const std::string& what) : std::runtime_error(what) {}
};

struct ProjectionOptions {
  int max_iterations = 100;
  double newton_tol = 1e-12;   // convergence threshold on the quadric residual
  double accept_tol = 1e-10;   // post-rescale full-residual acceptance
  int redraw_budget = 50;
};

namespace detail {

inline Eigen::VectorXd quadric_residual_vector(const VarietySpec& spec, const QuadricPoint& p) {
  const DefiningResidual r = eval_defining(spec, p);
  Eigen::VectorXd v(spec.n);
  for (int i = 0; i < spec.n; ++i) v[i] = r.quadric[i];
  return v;
}

}  // namespace detail

/// Gauss-Newton projection of the packed ambient point onto the cone where
/// the quadric residual vanishes. Pseudoinverse steps with the damping
/// factor halved whenever the residual would increase.
inline bool project_to_quadric_cone(const VarietySpec& spec, Eigen::VectorXd& x,
                                    const ProjectionOptions& opts = {}) {
  double res = detail::quadric_residual_vector(spec, unpack_point(spec, x)).norm();
  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    if (res <= opts.newton_tol) return true;
    const QuadricPoint p = unpack_point(spec, x);
    const Eigen::VectorXd r = detail::quadric_residual_vector(spec, p);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(quadric_jacobian(spec, p),
                                          Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(1e-12);
    const Eigen::VectorXd step = -svd.solve(r);
    double alpha = 1.0;
    bool advanced = false;
    while (alpha > 0x1.0p-30) {
      const Eigen::VectorXd trial = x + alpha * step;
      const double trial_res =
          detail::quadric_residual_vector(spec, unpack_point(spec, trial)).norm();
      if (trial_res < res) {
        x = trial;
        res = trial_res;
        advanced = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!advanced) return false;
  }
  return res <= opts.newton_tol;
}

inline QuadricPoint random_ambient(const VarietySpec& spec, Rng& rng) {
  QuadricPoint p;
  p.Z.resize(static_cast<std::size_t>(spec.m));
  for (auto& z : p.Z) {
    z = {rng.normal(), spec.field == Field::Complex ? rng.normal() : 0.0};
  }
  p.V.reserve(static_cast<std::size_t>(spec.s));
  p.W.reserve(static_cast<std::size_t>(spec.s));
  for (int l = 0; l < spec.s; ++l) {
    p.V.push_back(AlgebraElement::random_normal(spec.n, rng));
    p.W.push_back(AlgebraElement::random_normal(spec.n, rng));
  }
  return p;
}

inline TorusElement random_torus(const VarietySpec& spec, Rng& rng) {
  TorusElement g;
  g.g.resize(static_cast<std::size_t>(spec.m));
  for (auto& gk : g.g) {
    if (spec.field == Field::Complex) {
      const double t = 6.283185307179586476925286766559 * rng.uniform();
      gk = {std::cos(t), std::sin(t)};
    } else {
      gk = rng.uniform() < 0.5 ? -1.0 : 1.0;
    }
  }
  return g;
}

/// Draws points of the variety: a standard-normal ambient point is
/// Gauss-Newton-projected onto the quadric cone and then rescaled radially
/// onto the unit sphere, which is exact because the quadric part is
/// homogeneous of degree 2. The sampling measure is this projection of a
/// Gaussian, not the uniform measure on the manifold; only residual and
/// regularity properties are claimed for it. Deterministic for a fixed seed
/// and independent of any batching, since point i uses the derived stream
/// derive_seed(seed, i).
inline std::vector<QuadricPoint> sample(const VarietySpec& spec, std::uint64_t seed,
                                        long long count, const ProjectionOptions& opts = {}) {
  spec.validate();
  if (spec.m > 0 && !weakly_hyperbolic(spec.frame, spec.n)) throw NotWeaklyHyperbolic();
  std::vector<QuadricPoint> out;
  out.reserve(static_cast<std::size_t>(count));
  for (long long i = 0; i < count; ++i) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
    bool accepted = false;
    for (int attempt = 0; attempt < opts.redraw_budget && !accepted; ++attempt) {
      Eigen::VectorXd x = pack_point(spec, random_ambient(spec, rng));
      if (!project_to_quadric_cone(spec, x, opts)) continue;
      const double radius = x.norm();
      if (radius < 1e-3) continue;  // collapsed toward the cone vertex
      x /= radius;
      const QuadricPoint p = unpack_point(spec, x);
      if (eval_defining(spec, p).norm() <= opts.accept_tol) {
        out.push_back(p);
        accepted = true;
      }
    }
    if (!accepted) {
      throw NonConvergence("sampling failed to converge within the redraw budget (point " +
                           std::to_string(i) + ")");
    }
  }
  return out;
}

}  // namespace divquad
