#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "divquad/maps.hpp"
#include "divquad/sampling.hpp"
#include "divquad/suites.hpp"

using namespace divquad;

TEST_CASE("map to the sphere model: desk examples") {
  const auto frame = build_lambda(1);

  QuadricPoint fixed;
  fixed.Z = {0.0, 0.0};
  fixed.V = {AlgebraElement(1)};
  fixed.W = {AlgebraElement::one(1)};
  const SpanPoint qf = quadric_to_span(frame, fixed);
  for (const auto& z : qf.z) CHECK(std::abs(z) == 0.0);
  for (const auto& u : qf.u) CHECK(norm(u - AlgebraElement::one(1)) == 0.0);

  QuadricPoint p;
  const double z = std::sqrt(3.0 / 8.0);
  p.Z = {z, z};
  p.V = {AlgebraElement::scalar(1, 0.5)};
  p.W = {AlgebraElement(1)};
  const SpanPoint q = quadric_to_span(frame, p);
  const double half_root3 = std::sqrt(3.0) / 2.0;
  CHECK(q.z[0].real() == Catch::Approx(half_root3).margin(1e-15));
  CHECK(q.z[1].real() == Catch::Approx(half_root3).margin(1e-15));
  CHECK(q.u[0][0] == Catch::Approx(-0.5).margin(1e-15));
  CHECK(q.u[1][0] == Catch::Approx(0.5).margin(1e-15));
  const auto spec = VarietySpec::standard_spec(1);
  for (double g : eval_sphere(spec, q)) CHECK(std::abs(g) <= 1e-15);
}

TEST_CASE("checked maps reject off-variety and off-sphere points") {
  const auto frame = build_lambda(2);
  QuadricPoint off;
  off.Z = {0.9, 0.1, 0.3};
  off.V = {AlgebraElement::one(2)};
  off.W = {AlgebraElement::one(2)};
  CHECK_THROWS_AS(quadric_to_span(frame, off), std::domain_error);
  CHECK_THROWS_AS(orbit_invariants(frame, off), std::domain_error);

  // u in the span but z inflated: the sphere residuals reject it.
  const auto spec = VarietySpec::standard_spec(2);
  const auto p = sample(spec, 3, 1).front();
  SpanPoint q = quadric_to_span(frame, p);
  for (auto& z : q.z) z *= 1.5;
  CHECK_THROWS_AS(span_to_quadric(frame, q), std::domain_error);
}

TEST_CASE("map back from the sphere model") {
  const auto frame = build_lambda(2);
  SpanPoint q;
  q.z = {0.0, 0.0, 0.0};
  q.u.assign(3, AlgebraElement::one(2));
  const QuadricPoint p = span_to_quadric(frame, q);
  for (const auto& zz : p.Z) CHECK(std::abs(zz) == 0.0);
  CHECK(norm(p.V.front()) <= 1e-12);
  CHECK(norm(p.W.front() - AlgebraElement::one(2)) <= 1e-12);

  // Off the span: rejected.
  q.u[0] = AlgebraElement::unit(2, 0) * 2.0;
  CHECK_THROWS_AS(span_to_quadric(frame, q), std::domain_error);
}

TEST_CASE("round trip through the sphere model on sampled points") {
  for (int n : {1, 2, 4, 8}) {
    const auto frame = build_lambda(n);
    const auto spec = VarietySpec::standard_spec(n);
    for (const auto& p : sample(spec, 21 + n, 50)) {
      const QuadricPoint back = span_to_quadric(frame, quadric_to_span(frame, p));
      for (std::size_t k = 0; k < p.Z.size(); ++k) {
        CHECK(std::abs(back.Z[k] - p.Z[k]) <= 1e-9);
      }
      CHECK(norm(back.V.front() - p.V.front()) <= 1e-9);
      CHECK(norm(back.W.front() - p.W.front()) <= 1e-9);
    }
  }
}

TEST_CASE("residual relation holds on arbitrary ambient points") {
  Rng rng(515);
  for (int n : {1, 2, 4, 8}) {
    const auto frame = build_lambda(n);
    const auto spec = VarietySpec::standard_spec(n);
    for (int rep = 0; rep < 500; ++rep) {
      QuadricPoint p = random_ambient(spec, rng);
      for (auto& zz : p.Z) zz *= 3.0 * rng.uniform();
      CHECK(residual_relation_error(frame, p) <= 1e-12);
    }
    // On-variety points: both residual systems vanish together.
    for (const auto& p : sample(spec, 99, 20)) {
      CHECK(residual_relation_error(frame, p) <= 1e-12);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(residual_transfer_matrix(frame));
    CHECK(svd.singularValues()[n] > 0.1);
  }
}

TEST_CASE("orbit invariants and compactification desk examples") {
  const auto frame = build_lambda(1);

  QuadricPoint fixed;
  fixed.Z = {0.0, 0.0};
  fixed.V = {AlgebraElement(1)};
  fixed.W = {AlgebraElement::one(1)};
  const OrbitInvariants img = orbit_invariants(frame, fixed);
  CHECK(img.Z.norm() == 0.0);
  CHECK(norm(img.product) == 0.0);
  CHECK(img.v == 0.0);
  CHECK(img.w == 1.0);
  const CompactifiedPoint c = compactify(img);
  CHECK(c.a.norm() == 0.0);
  CHECK(c.b == -1.0);

  QuadricPoint p;
  const double z = std::sqrt(3.0 / 8.0);
  p.Z = {z, z};
  p.V = {AlgebraElement::scalar(1, 0.5)};
  p.W = {AlgebraElement(1)};
  const OrbitInvariants img2 = orbit_invariants(frame, p);
  CHECK(norm(img2.product) == 0.0);
  CHECK(img2.v == 0.5);
  CHECK(img2.w == 0.0);
  const CompactifiedPoint c2 = compactify(img2);
  CHECK(c2.a[0] == Catch::Approx(z).margin(1e-15));
  CHECK(c2.a[1] == Catch::Approx(z).margin(1e-15));
  CHECK(c2.b == Catch::Approx(0.5).margin(1e-15));
  CHECK(c2.invariant_error() <= 1e-15);  // 3/8 + 3/8 + 1/4 = 1

  // Points outside the nonnegative slice are rejected.
  QuadricPoint neg = p;
  neg.Z[0] = -z;
  CHECK_THROWS_AS(orbit_invariants(frame, neg), std::domain_error);

  OrbitInvariants big;
  big.Z = Eigen::VectorXd::Zero(2);
  big.product = AlgebraElement::scalar(1, 0.5);
  big.v = 1.0;
  big.w = 0.5;
  CHECK_THROWS_AS(compactify(big), std::domain_error);

  // Equal norms compactify to the equator b = 0.
  OrbitInvariants even;
  even.Z = Eigen::VectorXd::Constant(2, std::sqrt(0.25));
  even.product = AlgebraElement(1);
  even.v = 0.5;
  even.w = 0.5;
  CHECK(compactify(even).b == 0.0);
}

TEST_CASE("sum-product solver") {
  {
    const auto [x, y] = solve_sum_product(2.0, 1.0);
    CHECK(x == Catch::Approx(1.0).margin(1e-15));
    CHECK(y == Catch::Approx(1.0).margin(1e-15));
  }
  {
    const auto [x, y] = solve_sum_product(1.0, 0.0);
    CHECK(x == 1.0);
    CHECK(y == 0.0);
  }
  {
    const auto [x, y] = solve_sum_product(1.25, 0.5);
    CHECK(x == Catch::Approx(1.0).margin(1e-15));
    CHECK(y == Catch::Approx(0.5).margin(1e-15));
  }
  CHECK_THROWS_AS(solve_sum_product(1.0, 0.6), std::domain_error);
}

TEST_CASE("reconstruction desk examples") {
  const auto frame = build_lambda(1);

  CompactifiedPoint top;
  top.a = Eigen::VectorXd::Zero(2);
  top.b = 1.0;
  const QuadricPoint p = reconstruct_from_compactified(frame, top);
  for (const auto& z : p.Z) CHECK(std::abs(z) == 0.0);
  CHECK(norm(p.V.front() - AlgebraElement::one(1)) <= 1e-15);
  CHECK(norm(p.W.front()) <= 1e-15);

  CompactifiedPoint c;
  c.a = Eigen::VectorXd::Constant(2, std::sqrt(3.0 / 8.0));
  c.b = 0.5;
  const QuadricPoint r = reconstruct_from_compactified(frame, c);
  CHECK(r.Z[0].real() == Catch::Approx(std::sqrt(3.0 / 8.0)).margin(1e-12));
  CHECK(r.Z[1].real() == Catch::Approx(std::sqrt(3.0 / 8.0)).margin(1e-12));
  CHECK(r.V.front()[0] == Catch::Approx(0.5).margin(1e-12));
  CHECK(norm(r.W.front()) <= 1e-12);

  // b = 0 forces equal norms.
  CompactifiedPoint mid;
  mid.a = Eigen::VectorXd::Zero(2);
  mid.a[0] = std::sqrt(0.5);
  mid.a[1] = std::sqrt(0.5);
  mid.b = 0.0;
  const QuadricPoint m = reconstruct_from_compactified(frame, mid);
  CHECK(norm(m.V.front()) == Catch::Approx(norm(m.W.front())).margin(1e-12));
}

TEST_CASE("reconstruction lands on the variety and inverts the chain") {
  Rng rng(828);
  for (int n : {1, 2, 4, 8}) {
    const auto frame = build_lambda(n);
    const auto spec = VarietySpec::standard_spec(n);
    for (int rep = 0; rep < 200; ++rep) {
      const CompactifiedPoint c = suites::random_compactified(n, rng, rep % 7 == 0 ? 1 : 0);
      const QuadricPoint p = reconstruct_from_compactified(frame, c);
      CHECK(eval_defining(spec, p).norm() <= 1e-12);
      const CompactifiedPoint back = compactify(orbit_invariants(frame, p));
      CHECK((back.a - c.a).lpNorm<Eigen::Infinity>() <= 1e-9);
      CHECK(std::abs(back.b - c.b) <= 1e-9);
    }
  }
}

TEST_CASE("generic points keep their invariant data through the reconstruction") {
  for (int n : {2, 8}) {
    const auto frame = build_lambda(n);
    const auto spec = VarietySpec::standard_spec(n);
    for (const auto& raw : sample(spec, 606 + n, 50)) {
      const QuadricPoint p = fold_nonnegative(raw);
      const OrbitInvariants before = orbit_invariants(frame, p);
      const QuadricPoint rebuilt =
          reconstruct_from_compactified(frame, compactify(before));
      const OrbitInvariants after = orbit_invariants(frame, rebuilt);
      CHECK((before.Z - after.Z).lpNorm<Eigen::Infinity>() <= 1e-9);
      CHECK(norm(before.product - after.product) <= 1e-9);
      CHECK(std::abs(before.v - after.v) <= 1e-9);
      CHECK(std::abs(before.w - after.w) <= 1e-9);
    }
  }
}

TEST_CASE("hopf map") {
  const auto one = AlgebraElement::one(4);
  const auto img = hopf(one, AlgebraElement(4));
  CHECK(norm(img.product) == 0.0);
  CHECK(img.v == 1.0);
  CHECK(img.w == 0.0);

  // Sign fiber on the line.
  Rng rng(40716);
  for (int rep = 0; rep < 100; ++rep) {
    const auto V = AlgebraElement::random_normal(1, rng);
    const auto W = AlgebraElement::random_normal(1, rng);
    const auto a = hopf(V, W);
    const auto b = hopf(-V, -W);
    CHECK(norm(a.product - b.product) == 0.0);
    CHECK(a.v == b.v);
    CHECK(a.w == b.w);
  }

  // Phase fiber in the plane algebra.
  for (int rep = 0; rep < 100; ++rep) {
    const auto V = AlgebraElement::random_normal(2, rng);
    const auto W = AlgebraElement::random_normal(2, rng);
    const double t = rng.uniform() * 6.28318530717958648;
    AlgebraElement phase(2);
    phase[0] = std::cos(t);
    phase[1] = std::sin(t);
    const auto a = hopf(V, W);
    const auto b = hopf(mul(phase, V), mul(conj(phase), W));
    const double scale = norm(V) * norm(W) + 1e-300;
    CHECK(norm(a.product - b.product) <= 1e-12 * scale);
    CHECK(std::abs(a.v - b.v) <= 1e-12 * (a.v + 1.0));
    CHECK(std::abs(a.w - b.w) <= 1e-12 * (a.w + 1.0));
  }

  // Norm compatibility survives in the octonions.
  for (int rep = 0; rep < 100; ++rep) {
    const auto V = AlgebraElement::random_normal(8, rng);
    const auto W = AlgebraElement::random_normal(8, rng);
    const auto img8 = hopf(V, W);
    CHECK(std::abs(norm(img8.product) - img8.v * img8.w) <= 1e-12 * (img8.v * img8.w + 1.0));
  }
}
