#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "divquad/hull.hpp"
#include "divquad/rng.hpp"
#include "divquad/simplex.hpp"

using namespace divquad;

namespace {

// Independent certificate audit: a returned certificate must prove its claim
// on its own, without rerunning the decision procedure.
void audit(const std::vector<AlgebraElement>& vectors, const HullCertificate& cert) {
  if (cert.member) {
    REQUIRE(cert.subset.size() == cert.coefficients.size());
    const int n = vectors.front().dim();
    AlgebraElement combo(n);
    double total = 0.0;
    for (std::size_t j = 0; j < cert.subset.size(); ++j) {
      const double c = cert.coefficients[j];
      REQUIRE(c >= -1e-9);
      total += c;
      combo += c * vectors[(std::size_t)cert.subset[j]];
    }
    REQUIRE(std::abs(total - 1.0) <= 1e-9);
    REQUIRE(norm(combo) <= 1e-8);
  } else {
    for (const auto& sep : cert.separations) {
      for (int k : sep.indices) {
        REQUIRE(inner(sep.direction, vectors[(std::size_t)k]) > 0.0);
      }
    }
  }
}

}  // namespace

TEST_CASE("zero vector forces membership at any bound") {
  std::vector<AlgebraElement> vs = {AlgebraElement(4), AlgebraElement::one(4)};
  const auto cert = hull_membership(vs, 1);
  CHECK(cert.member);
  audit(vs, cert);
}

TEST_CASE("standard frame is weakly hyperbolic but its full hull contains the origin") {
  for (int n : {1, 2, 4, 8}) {
    const auto frame = build_lambda(n).vectors;
    const auto below = hull_membership(frame, n);
    CHECK_FALSE(below.member);
    CHECK(below.separations.size() == static_cast<std::size_t>(n + 1));
    audit(frame, below);
    CHECK(weakly_hyperbolic(frame, n));

    const auto full = hull_membership(frame, n + 1);
    CHECK(full.member);
    audit(frame, full);
    // Uniform barycentric weights are the unique solution.
    for (double c : full.coefficients) CHECK(c == Catch::Approx(1.0 / (n + 1)).margin(1e-9));
    CHECK(origin_in_hull(frame));
  }
}

TEST_CASE("antipodal unit pair contains the origin at its midpoint") {
  const std::vector<AlgebraElement> vs = {AlgebraElement::one(2), -AlgebraElement::one(2)};
  const auto cert = hull_membership(vs, 2);
  REQUIRE(cert.member);
  REQUIRE(cert.coefficients.size() == 2);
  CHECK(cert.coefficients[0] == Catch::Approx(0.5).margin(1e-9));
  CHECK(cert.coefficients[1] == Catch::Approx(0.5).margin(1e-9));
  audit(vs, cert);

  CHECK_FALSE(hull_membership(vs, 1).member);
}

TEST_CASE("random shifted clouds are separated with valid certificates") {
  Rng rng(2024);
  for (int n : {2, 4}) {
    for (int rep = 0; rep < 50; ++rep) {
      // All vectors pushed into an open half-space: never contains the origin.
      AlgebraElement shift = AlgebraElement::random_normal(n, rng);
      shift /= std::max(norm(shift), 1e-9);
      std::vector<AlgebraElement> vs;
      for (int i = 0; i < 5; ++i) {
        vs.push_back(AlgebraElement::random_normal(n, rng) * 0.3 + shift * 2.0);
      }
      const auto cert = hull_membership(vs, static_cast<int>(vs.size()));
      CHECK_FALSE(cert.member);
      audit(vs, cert);
    }
  }
}

TEST_CASE("random convex combinations are recognized") {
  Rng rng(99);
  for (int rep = 0; rep < 50; ++rep) {
    const int n = 4;
    // Build vectors with an explicit convex combination equal to zero.
    std::vector<AlgebraElement> vs;
    for (int i = 0; i < 4; ++i) vs.push_back(AlgebraElement::random_normal(n, rng));
    double c0 = 0.2 + 0.6 * rng.uniform();
    double c1 = (1.0 - c0) * rng.uniform();
    double c2 = (1.0 - c0 - c1) * rng.uniform();
    double c3 = 1.0 - c0 - c1 - c2;
    AlgebraElement last = -(c0 * vs[0] + c1 * vs[1] + c2 * vs[2]) / c3;
    vs[3] = last;
    const auto cert = hull_membership(vs, 4);
    CHECK(cert.member);
    audit(vs, cert);
  }
}

TEST_CASE("feasibility solver handles negative right-hand sides") {
  // x1 - x2 = -1, x1 + x2 = 1, x >= 0 has the solution (0, 1).
  Eigen::MatrixXd A(2, 2);
  A << 1, -1, 1, 1;
  Eigen::VectorXd b(2);
  b << -1, 1;
  const auto r = detail::lp_equality_feasible(A, b, 1e-9);
  REQUIRE(r.feasible);
  CHECK(r.x[0] == Catch::Approx(0.0).margin(1e-9));
  CHECK(r.x[1] == Catch::Approx(1.0).margin(1e-9));

  // x1 + x2 = -1 with x >= 0 is infeasible; the certificate must satisfy
  // y^T A <= 0 and y^T b > 0 for the original (unflipped) system.
  Eigen::MatrixXd A2(1, 2);
  A2 << 1, 1;
  Eigen::VectorXd b2(1);
  b2 << -1;
  const auto r2 = detail::lp_equality_feasible(A2, b2, 1e-9);
  REQUIRE_FALSE(r2.feasible);
  REQUIRE(r2.farkas.size() == 1);
  CHECK(r2.farkas[0] * A2(0, 0) <= 1e-9);
  CHECK(r2.farkas[0] * A2(0, 1) <= 1e-9);
  CHECK(r2.farkas[0] * b2[0] > 0.0);
}

TEST_CASE("empty collection and bad bounds") {
  CHECK_FALSE(hull_membership({}, 3).member);
  CHECK(weakly_hyperbolic({}, 2));
  std::vector<AlgebraElement> vs = {AlgebraElement::one(2)};
  CHECK_THROWS_AS(hull_membership(vs, 0), std::invalid_argument);
}
