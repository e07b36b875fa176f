// Reference implementations: minimum G-norm point, brute projection and the
// exact 2-D feasibility sweep.
#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "ksep/gram.hpp"
#include "ksep/oracle.hpp"
#include "ksep/synthetic.hpp"

using namespace ksep;

namespace {

GramMatrix gram2(double off_diagonal) {
  Matrix m(2, 2);
  m << 1.0, off_diagonal, off_diagonal, 1.0;
  return GramMatrix::from_entries(m);
}

LabeledDataset dataset_2d(std::initializer_list<double> xs,
                          std::initializer_list<double> ys,
                          std::initializer_list<double> labels) {
  const Index n = static_cast<Index>(labels.size());
  Matrix points(n, 2);
  Vector y(n);
  auto xi = xs.begin();
  auto yi = ys.begin();
  auto li = labels.begin();
  for (Index i = 0; i < n; ++i) {
    points(i, 0) = *xi++;
    points(i, 1) = *yi++;
    y[i] = *li++;
  }
  return LabeledDataset(points, y);
}

}  // namespace

TEST_CASE("reference_min_gnorm on the tilted pair") {
  const OracleReport report = reference_min_gnorm(gram2(-0.96), 1e-6);
  CHECK(report.feasible);
  CHECK(report.margin_estimate == Catch::Approx(std::sqrt(0.02)).margin(1e-6));
  CHECK(report.minimizer[0] == Catch::Approx(0.5).margin(1e-9));
}

TEST_CASE("reference_min_gnorm on an exact witness") {
  const OracleReport report = reference_min_gnorm(gram2(-1.0), 1e-6);
  CHECK_FALSE(report.feasible);
  CHECK(report.margin_estimate == 0.0);
  CHECK(report.minimizer[0] == Catch::Approx(0.5).margin(1e-12));
  CHECK(report.margin_estimate ==
        Catch::Approx(g_norm(gram2(-1.0), report.minimizer.vec())).margin(1e-12));
}

TEST_CASE("reference_min_gnorm trivial cases") {
  Matrix one(1, 1);
  one << 1.0;
  const OracleReport report =
      reference_min_gnorm(GramMatrix::from_entries(one), 1e-6);
  CHECK(report.feasible);
  CHECK(report.margin_estimate == 1.0);
  CHECK_THROWS_AS(reference_min_gnorm(gram2(0.0), 0.0), std::invalid_argument);
}

TEST_CASE("conditional-gradient path agrees with the enumeration path") {
  // embed a 3-point instance into a 4-point one by duplicating a point;
  // the margin is unchanged and the larger instance runs conditional gradient
  synthetic::SplitMix64 rng(4661);
  for (int trial = 0; trial < 20; ++trial) {
    const LabeledDataset small = synthetic::random_2d(rng.next(), 3);
    Matrix points(4, 2);
    points.topRows(3) = small.points();
    points.row(3) = small.points().row(2);
    Vector labels(4);
    labels.head(3) = small.labels();
    labels[3] = small.labels()[2];
    const LabeledDataset big(points, labels);
    const OracleReport exact =
        reference_min_gnorm(build_gram(small, KernelSpec::linear()), 1e-6);
    const OracleReport fw =
        reference_min_gnorm(build_gram(big, KernelSpec::linear()), 1e-6);
    CHECK(fw.margin_estimate ==
          Catch::Approx(exact.margin_estimate).margin(2e-6));
  }
}

TEST_CASE("margin never increases when a point is added") {
  synthetic::SplitMix64 rng(90210);
  for (int trial = 0; trial < 30; ++trial) {
    // 2 -> 3 points stays on the exact enumeration path
    const LabeledDataset data = synthetic::random_2d(rng.next(), 3);
    const Matrix fewer = data.points().topRows(2);
    const Vector fewer_labels = data.labels().head(2);
    const OracleReport before = reference_min_gnorm(
        build_gram(LabeledDataset(fewer, fewer_labels), KernelSpec::linear()),
        1e-6);
    const OracleReport after =
        reference_min_gnorm(build_gram(data, KernelSpec::linear()), 1e-6);
    CHECK(after.margin_estimate <= before.margin_estimate + 1e-9);
  }
  for (int trial = 0; trial < 10; ++trial) {
    // extending any instance by a deeply infeasible anchor triangle drives
    // the margin to zero
    const LabeledDataset base = synthetic::random_2d(rng.next(), 3);
    const OracleReport before = reference_min_gnorm(
        build_gram(base, KernelSpec::linear()), 1e-6);
    Matrix points(6, 2);
    points.topRows(3) = base.points();
    for (Index i = 0; i < 3; ++i) {
      const double angle = i * (2.0 * M_PI / 3.0);
      points(3 + i, 0) = std::cos(angle);
      points(3 + i, 1) = std::sin(angle);
    }
    Vector labels(6);
    labels.head(3) = base.labels();
    labels.tail(3).setOnes();
    const OracleReport after = reference_min_gnorm(
        build_gram(LabeledDataset(points, labels), KernelSpec::linear()), 1e-6);
    // the larger instance runs conditional gradient, certified to 1e-6
    CHECK(after.margin_estimate <= before.margin_estimate + 1e-6);
    CHECK(after.margin_estimate <= 1e-6);
  }
}

TEST_CASE("brute_projection examples") {
  Vector v(3);
  v << 1.2, 0.3, -0.5;
  const SimplexVector p = brute_projection(v);
  CHECK(p[0] == Catch::Approx(0.95).margin(1e-12));
  CHECK(p[1] == Catch::Approx(0.05).margin(1e-12));
  CHECK(p[2] == 0.0);

  Vector feasible(2);
  feasible << 0.25, 0.75;
  CHECK((brute_projection(feasible).vec() - feasible).norm() <= 1e-12);

  Vector negative(2);
  negative << -1.0, -2.0;
  const SimplexVector corner = brute_projection(negative);
  CHECK(corner[0] == 1.0);
  CHECK(corner[1] == 0.0);

  CHECK_THROWS_WITH(brute_projection(Vector::Zero(13)),
                    Catch::Matchers::ContainsSubstring("n <= 12"));
}

TEST_CASE("exact_feasibility_2d verdicts") {
  // the tilted pair is separable
  CHECK(exact_feasibility_2d(dataset_2d({0.6, 0.8}, {0.8, 0.6}, {1, -1})));
  // antipodal pair with the same label: 0 sits on the segment
  CHECK_FALSE(exact_feasibility_2d(dataset_2d({1.0, -1.0}, {0.0, 0.0}, {1, 1})));
  // identical points with opposite labels
  CHECK_FALSE(exact_feasibility_2d(dataset_2d({0.5, 0.5}, {0.5, 0.5}, {1, -1})));
  // a single point is always separable
  CHECK(exact_feasibility_2d(dataset_2d({-0.3}, {0.4}, {-1})));
  Matrix p3(1, 3);
  p3 << 1, 2, 3;
  Vector l1(1);
  l1 << 1;
  CHECK_THROWS_AS(exact_feasibility_2d(LabeledDataset(p3, l1)),
                  std::invalid_argument);
}

namespace {

/// Signed boundary distance of a 2-D instance: -cos(max angular gap / 2) of
/// the signed normalized points. Positive values equal the normalized margin,
/// negative magnitudes the depth of the origin inside the hull.
double sweep_margin_proxy(const LabeledDataset& data) {
  std::vector<double> angles;
  for (Index i = 0; i < data.size(); ++i) {
    const Vector x = data.point(i);
    angles.push_back(std::atan2(data.label(i) * x[1], data.label(i) * x[0]));
  }
  std::sort(angles.begin(), angles.end());
  double max_gap = angles.front() + 2.0 * M_PI - angles.back();
  for (std::size_t i = 1; i < angles.size(); ++i)
    max_gap = std::max(max_gap, angles[i] - angles[i - 1]);
  return -std::cos(max_gap / 2.0);
}

}  // namespace

TEST_CASE("oracle margin agrees with the sweep verdict") {
  synthetic::SplitMix64 rng(20111);
  int checked = 0;
  for (int trial = 0; trial < 2000 && checked < 200; ++trial) {
    const Index n = 2 + static_cast<Index>(rng.next() % 3);
    const LabeledDataset data = synthetic::random_2d(rng.next(), n);
    if (std::abs(sweep_margin_proxy(data)) < 0.05) continue;  // off-boundary
    const GramMatrix g = build_gram(data, KernelSpec::linear());
    const OracleReport report = reference_min_gnorm(g, 1e-6);
    ++checked;
    CHECK(exact_feasibility_2d(data) == (report.margin_estimate > 1e-4));
  }
  CHECK(checked == 200);
}

TEST_CASE("lopsided cluster instances have the margin they were built for") {
  synthetic::SplitMix64 rng(62832);
  for (int trial = 0; trial < 10; ++trial) {
    const LabeledDataset data =
        synthetic::lopsided_two_cluster(rng.next(), 8, 0.08);
    const GramMatrix g = build_gram(data, KernelSpec::linear());
    const OracleReport report = reference_min_gnorm(g, 1e-6);
    CHECK(report.feasible);
    CHECK(report.margin_estimate >= 0.03);
    CHECK(report.margin_estimate <= 0.09);
    // the uniform mix misclassifies the lone point, so solvers must work
    CHECK(decision_values(g, SimplexVector::uniform(8).vec()).minCoeff() < 0.0);
  }
}

TEST_CASE("infeasible spread instances are infeasible") {
  synthetic::SplitMix64 rng(11235);
  for (int trial = 0; trial < 10; ++trial) {
    const LabeledDataset data = synthetic::infeasible_spread(rng.next(), 10);
    CHECK_FALSE(exact_feasibility_2d(data));
    const GramMatrix g = build_gram(data, KernelSpec::linear());
    const OracleReport report = reference_min_gnorm(g, 1e-4);
    CHECK_FALSE(report.feasible);
  }
}
