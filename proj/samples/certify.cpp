// Infeasible instance: the iterated solver returns a dual witness whose
// G-norm certifies that no perfect separator exists.
#include <iostream>

#include "ksep/ksep.hpp"

int main() {
  // Two identical points with opposite labels can never be separated.
  ksep::Matrix points(2, 2);
  points << 0.3, 0.7,
            0.3, 0.7;
  ksep::Vector labels(2);
  labels << 1, -1;
  const ksep::LabeledDataset data(points, labels);
  const ksep::GramMatrix gram =
      ksep::build_gram(data, ksep::KernelSpec::linear());

  ksep::SolverConfig config;
  config.dual_epsilon = 1e-6;
  const ksep::SolveOutcome outcome = ksep::isnkpvn(gram, config);
  if (outcome.kind != ksep::SolveOutcome::Kind::dual) {
    std::cout << "expected a dual certificate\n";
    return 1;
  }
  std::cout << "witness p: " << outcome.dual_certificate->vec().transpose()
            << "\n";
  std::cout << "||p||_G = " << outcome.dual_gnorm << " (<= 1e-6 certifies "
            << "near-infeasibility)\n";
  return 0;
}
