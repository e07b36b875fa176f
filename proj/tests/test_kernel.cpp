// Kernel evaluation, Gram construction and G-norm arithmetic.
#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "ksep/dataset.hpp"
#include "ksep/gram.hpp"
#include "ksep/synthetic.hpp"

using namespace ksep;

namespace {

// +1 at (0.6, 0.8) against -1 at (0.8, 0.6): the tilted near-parallel pair
// used throughout the suite. Its normalized margin is sqrt(0.02).
LabeledDataset tilted_pair() {
  Matrix points(2, 2);
  points << 0.6, 0.8, 0.8, 0.6;
  Vector labels(2);
  labels << 1, -1;
  return LabeledDataset(points, labels);
}

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

GramMatrix gram_from(std::initializer_list<double> entries, Index n) {
  Matrix m(n, n);
  Index k = 0;
  for (double value : entries) m(k / n, k % n) = value, ++k;
  return GramMatrix::from_entries(m);
}

}  // namespace

TEST_CASE("evaluate_kernel basic values") {
  CHECK(evaluate_kernel(KernelSpec::linear(), vec2(3, 4), vec2(3, 4)) == 25.0);
  CHECK(evaluate_kernel(KernelSpec::rbf(0.7), vec2(1, 2), vec2(1, 2)) == 1.0);
  CHECK(evaluate_kernel(KernelSpec::linear(), vec2(0.6, 0.8), vec2(0.8, 0.6)) ==
        Catch::Approx(0.96).margin(1e-12));
  CHECK(evaluate_kernel(KernelSpec::polynomial(2, 1.0), vec2(1, 0), vec2(0, 1)) ==
        Catch::Approx(1.0));
}

TEST_CASE("evaluate_kernel is symmetric") {
  synthetic::SplitMix64 rng(7001);
  for (int trial = 0; trial < 50; ++trial) {
    Vector u(3), v(3);
    for (Index i = 0; i < 3; ++i) {
      u[i] = rng.uniform(-2.0, 2.0);
      v[i] = rng.uniform(-2.0, 2.0);
    }
    for (const auto& spec : {KernelSpec::linear(), KernelSpec::rbf(1.3),
                             KernelSpec::polynomial(3, 0.5)}) {
      CHECK(evaluate_kernel(spec, u, v) == Catch::Approx(evaluate_kernel(spec, v, u)).margin(1e-12));
    }
  }
}

TEST_CASE("evaluate_kernel rejects bad input") {
  CHECK_THROWS_AS(evaluate_kernel(KernelSpec::linear(), vec2(1, 2), Vector::Ones(3)),
                  std::invalid_argument);
  Matrix k(1, 1);
  k << 1.0;
  CHECK_THROWS_AS(evaluate_kernel(KernelSpec::precomputed(k), vec2(1, 2), vec2(1, 2)),
                  std::invalid_argument);
}

TEST_CASE("build_gram single point") {
  Matrix points(1, 1);
  points << 2.0;
  Vector labels(1);
  labels << -1;
  const LabeledDataset data(points, labels);
  for (const auto& spec : {KernelSpec::linear(), KernelSpec::rbf(0.5),
                           KernelSpec::polynomial(2, 1.0)}) {
    const GramMatrix g = build_gram(data, spec);
    REQUIRE(g.size() == 1);
    CHECK(g(0, 0) == 1.0);
  }
}

TEST_CASE("build_gram on the tilted pair") {
  const GramMatrix g = build_gram(tilted_pair(), KernelSpec::linear());
  CHECK(g(0, 0) == 1.0);
  CHECK(g(1, 1) == 1.0);
  CHECK(g(0, 1) == Catch::Approx(-0.96).margin(1e-12));
  CHECK(g(0, 1) == g(1, 0));
}

TEST_CASE("build_gram identical points with opposite labels") {
  Matrix points(2, 3);
  points << 0.3, -1.2, 0.5, 0.3, -1.2, 0.5;
  Vector labels(2);
  labels << 1, -1;
  const LabeledDataset data(points, labels);
  for (const auto& spec : {KernelSpec::linear(), KernelSpec::rbf(0.8),
                           KernelSpec::polynomial(3, 0.25)}) {
    const GramMatrix g = build_gram(data, spec);
    CHECK(g(0, 1) == -1.0);
    CHECK(g(1, 0) == -1.0);
  }
}

TEST_CASE("build_gram rejects degenerate points naming the index") {
  Matrix points(2, 2);
  points << 1.0, 0.0, 0.0, 0.0;
  Vector labels(2);
  labels << 1, -1;
  const LabeledDataset data(points, labels);
  CHECK_THROWS_WITH(build_gram(data, KernelSpec::linear()),
                    Catch::Matchers::ContainsSubstring("index 1"));
}

TEST_CASE("precomputed kernel validation") {
  Matrix asym(2, 2);
  asym << 1.0, 2.0, 0.5, 1.0;
  CHECK_THROWS_WITH(KernelSpec::precomputed(asym),
                    Catch::Matchers::ContainsSubstring("asymmetric"));
  Matrix bad_diag(2, 2);
  bad_diag << 1.0, 0.0, 0.0, 0.0;
  CHECK_THROWS_WITH(KernelSpec::precomputed(bad_diag),
                    Catch::Matchers::ContainsSubstring("diagonal"));
  Matrix fine(2, 2);
  fine << 4.0, 1.0, 1.0, 1.0;
  const KernelSpec spec = KernelSpec::precomputed(fine);
  Matrix points(2, 1);
  points << 0.0, 0.0;  // features unused for precomputed kernels
  Vector labels(2);
  labels << 1, -1;
  const GramMatrix g = build_gram(LabeledDataset(points, labels), spec);
  CHECK(g(0, 0) == 1.0);
  CHECK(g(0, 1) == Catch::Approx(-0.5).margin(1e-15));
}

TEST_CASE("build_gram size mismatch for precomputed kernels") {
  Matrix k(3, 3);
  k.setIdentity();
  const KernelSpec spec = KernelSpec::precomputed(k);
  CHECK_THROWS_AS(build_gram(tilted_pair(), spec), std::invalid_argument);
}

TEST_CASE("g_inner and g_norm examples") {
  const GramMatrix g = gram_from({1.0, -0.96, -0.96, 1.0}, 2);
  const Vector half = Vector::Constant(2, 0.5);
  CHECK(g_inner(g, Vector::Unit(2, 0), Vector::Unit(2, 0)) == 1.0);
  CHECK(g_inner(g, half, half) == Catch::Approx(0.02).margin(1e-15));
  CHECK(g_inner(g, Vector::Zero(2), half) == 0.0);
  CHECK(g_norm(g, Vector::Unit(2, 1)) == 1.0);
  CHECK(g_norm(g, half) == Catch::Approx(std::sqrt(0.02)).margin(1e-12));

  const GramMatrix witness = gram_from({1.0, -1.0, -1.0, 1.0}, 2);
  CHECK(g_norm(witness, half) == 0.0);
  CHECK_THROWS_AS(g_inner(g, Vector::Ones(3), half), std::invalid_argument);
}

TEST_CASE("decision_values examples") {
  const GramMatrix g = gram_from({1.0, -0.96, -0.96, 1.0}, 2);
  const Vector half = Vector::Constant(2, 0.5);
  CHECK(decision_values(g, Vector::Zero(2)).isZero());
  const Vector d = decision_values(g, half);
  CHECK(d[0] == Catch::Approx(0.02).margin(1e-15));
  CHECK(d[1] == Catch::Approx(0.02).margin(1e-15));
  const GramMatrix witness = gram_from({1.0, -1.0, -1.0, 1.0}, 2);
  CHECK(decision_values(witness, half).isZero(1e-15));
}

TEST_CASE("predict matches the reproducing identity") {
  const LabeledDataset data = tilted_pair();
  const KernelSpec spec = KernelSpec::linear();
  const Vector half = Vector::Constant(2, 0.5);
  CHECK(predict(data, spec, Vector::Zero(2), vec2(0.3, -2.0)) == 0.0);
  CHECK(predict(data, spec, half, vec2(0.6, 0.8)) ==
        Catch::Approx(0.02).margin(1e-12));

  // y_j f(x_j) / sqrt(K(x_j,x_j)) == (G alpha)_j on the training points
  const LabeledDataset random_data = synthetic::planted_margin(4242, 12, 3, 0.05);
  for (const auto& k :
       {KernelSpec::linear(), KernelSpec::rbf(0.9), KernelSpec::polynomial(2, 0.7)}) {
    const GramMatrix g = build_gram(random_data, k);
    synthetic::SplitMix64 rng(99);
    Vector alpha(random_data.size());
    for (Index i = 0; i < alpha.size(); ++i) alpha[i] = rng.uniform(-1.0, 1.0);
    const Vector d = decision_values(g, alpha);
    for (Index j = 0; j < random_data.size(); ++j) {
      const Vector xj = random_data.point(j);
      const double self = evaluate_kernel(k, xj, xj);
      const double lhs = random_data.label(j) *
                         predict(random_data, k, alpha, xj) / std::sqrt(self);
      CHECK(lhs == Catch::Approx(d[j]).margin(1e-10));
    }
  }
}

TEST_CASE("predict rejects precomputed kernels") {
  Matrix k(2, 2);
  k.setIdentity();
  CHECK_THROWS_AS(
      predict(tilted_pair(), KernelSpec::precomputed(k), Vector::Ones(2), vec2(1, 1)),
      std::invalid_argument);
}

TEST_CASE("norm chain over random instances") {
  // ||alpha||_G <= ||alpha||_1 <= sqrt(n) ||alpha||_2
  synthetic::SplitMix64 rng(20240519);
  for (int trial = 0; trial < 1000; ++trial) {
    const Index n = 2 + static_cast<Index>(rng.next() % 30);
    const Index d = 1 + static_cast<Index>(rng.next() % 6);
    Matrix points(n, d);
    Vector labels(n);
    for (Index i = 0; i < n; ++i) {
      points.row(i) = rng.unit_vector(d).transpose() * rng.uniform(0.25, 3.0);
      labels[i] = rng.uniform() < 0.5 ? 1.0 : -1.0;
    }
    const GramMatrix g = build_gram(LabeledDataset(points, labels),
                                    KernelSpec::linear());
    Vector alpha(n);
    for (Index i = 0; i < n; ++i) alpha[i] = rng.uniform(-2.0, 2.0);
    const double norm_g = g_norm(g, alpha);
    const double norm_1 = alpha.lpNorm<1>();
    const double norm_2 = alpha.norm();
    CHECK(norm_g <= norm_1 * (1.0 + 1e-9) + 1e-12);
    CHECK(norm_1 <= std::sqrt(static_cast<double>(n)) * norm_2 * (1.0 + 1e-9));
  }
}

TEST_CASE("Gram quadratic form stays nonnegative") {
  synthetic::SplitMix64 rng(31337);
  const LabeledDataset data = synthetic::planted_margin(5150, 20, 4, 0.02);
  for (const auto& spec :
       {KernelSpec::linear(), KernelSpec::rbf(1.1), KernelSpec::polynomial(3, 1.0)}) {
    const GramMatrix g = build_gram(data, spec);
    for (int trial = 0; trial < 100; ++trial) {
      Vector v(g.size());
      for (Index i = 0; i < v.size(); ++i) v[i] = rng.uniform(-1.0, 1.0);
      CHECK(v.dot(g.matrix() * v) >= -1e-8 * v.squaredNorm());
    }
  }
}

TEST_CASE("triangle inequality of the semi-norm") {
  synthetic::SplitMix64 rng(777);
  const LabeledDataset data = synthetic::planted_margin(123, 16, 3, 0.02);
  const GramMatrix g = build_gram(data, KernelSpec::rbf(0.8));
  for (int trial = 0; trial < 200; ++trial) {
    Vector a(g.size()), b(g.size());
    for (Index i = 0; i < g.size(); ++i) {
      a[i] = rng.uniform(-1.5, 1.5);
      b[i] = rng.uniform(-1.5, 1.5);
    }
    CHECK(g_norm(g, a + b) <= g_norm(g, a) + g_norm(g, b) + 1e-9);
  }
}

TEST_CASE("linear kernel on unit-norm points gives exact signed dot products") {
  synthetic::SplitMix64 rng(2718);
  int checked = 0;
  while (checked < 20) {
    const Index n = 4;
    Matrix points(n, 3);
    Vector labels(n);
    bool exact = true;
    for (Index i = 0; i < n; ++i) {
      Vector u = rng.unit_vector(3);
      u /= u.norm();
      if (u.squaredNorm() != 1.0) {
        exact = false;
        break;
      }
      points.row(i) = u.transpose();
      labels[i] = rng.uniform() < 0.5 ? 1.0 : -1.0;
    }
    if (!exact) continue;  // only keep draws whose norm is exactly 1.0
    ++checked;
    const LabeledDataset data(points, labels);
    const GramMatrix g = build_gram(data, KernelSpec::linear());
    for (Index i = 0; i < n; ++i)
      for (Index j = i + 1; j < n; ++j)
        CHECK(g(i, j) ==
              labels[i] * labels[j] * points.row(i).dot(points.row(j)));
  }
}

TEST_CASE("GramMatrix::from_entries validation") {
  Matrix bad_diag(2, 2);
  bad_diag << 0.5, 0.1, 0.1, 1.0;
  CHECK_THROWS_AS(GramMatrix::from_entries(bad_diag), std::invalid_argument);
  Matrix asym(2, 2);
  asym << 1.0, 0.2, 0.3, 1.0;
  CHECK_THROWS_AS(GramMatrix::from_entries(asym), std::invalid_argument);
  Matrix too_big(2, 2);
  too_big << 1.0, 1.5, 1.5, 1.0;
  CHECK_THROWS_AS(GramMatrix::from_entries(too_big), std::invalid_argument);
}

TEST_CASE("dataset validation") {
  Matrix points(2, 2);
  points << 1, 2, 3, 4;
  Vector bad_labels(2);
  bad_labels << 1, 0;
  CHECK_THROWS_WITH(LabeledDataset(points, bad_labels),
                    Catch::Matchers::ContainsSubstring("label must be -1 or +1"));
  Vector short_labels(1);
  short_labels << 1;
  CHECK_THROWS_AS(LabeledDataset(points, short_labels), std::invalid_argument);
}
