// Minimal usage: build a Gram matrix, run the smoothed solver, print the
// separator coefficients and the achieved margins.
#include <iostream>

#include "ksep/ksep.hpp"

int main() {
  ksep::Matrix points(4, 2);
  points << 0.6, 0.8,
            0.8, 0.6,
            1.0, 0.1,
            0.1, 1.0;
  ksep::Vector labels(4);
  labels << 1, -1, -1, 1;
  const ksep::LabeledDataset data(points, labels);
  const ksep::GramMatrix gram =
      ksep::build_gram(data, ksep::KernelSpec::rbf(0.75));

  ksep::SolverConfig config;
  const ksep::SolveOutcome outcome = ksep::snkp(gram, config);
  if (outcome.kind != ksep::SolveOutcome::Kind::primal) {
    std::cout << "no separator found\n";
    return 1;
  }
  std::cout << "separator after " << outcome.iterations_used << " updates\n";
  std::cout << "alpha: " << outcome.alpha.transpose() << "\n";
  std::cout << "decision values: "
            << ksep::decision_values(gram, outcome.alpha).transpose() << "\n";
  return 0;
}
