// ksep command line.
//
//   solve    run one solver on a dataset
//   certify  run the iterated primal-dual solver to an epsilon certificate
//   margin   reference margin of an instance (slow oracle)
//   bench    race all solvers on one seeded synthetic instance
//
// Results go to stdout as a single JSON object, a human-readable summary to
// stderr. Exit status: 0 primal certificate (or feasible margin), 1 dual
// certificate (or infeasible margin), 2 iteration limit, 64 usage error,
// 65 unreadable or invalid input data, 70 internal error.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ksep/ksep.hpp"

namespace {

constexpr int kExitPrimal = 0;
constexpr int kExitDual = 1;
constexpr int kExitLimit = 2;
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;
constexpr int kExitInternal = 70;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string data_path;
  std::string kernel = "linear";
  int degree = 3;
  double offset = 1.0;
  double bandwidth = 1.0;
  std::string gram_path;
  std::string algorithm = "snkp";
  double epsilon = 1e-6;
  double delta = 1e-3;
  double gamma = 2.0;
  long max_iter = 1'000'000;
  std::string trace_path;
  long trace_every = 0;
  std::uint64_t seed = 0;
};

void add_kernel_flags(CLI::App* cmd, Options& opt) {
  cmd->add_option("--kernel", opt.kernel, "kernel kind")
      ->check(CLI::IsMember({"linear", "poly", "rbf", "precomputed"}))
      ->default_val("linear");
  cmd->add_option("--degree", opt.degree, "polynomial degree");
  cmd->add_option("--offset", opt.offset, "polynomial offset");
  cmd->add_option("--bandwidth", opt.bandwidth, "rbf bandwidth");
  cmd->add_option("--gram", opt.gram_path,
                  "raw kernel matrix CSV (required for --kernel precomputed)");
}

void add_config_flags(CLI::App* cmd, Options& opt) {
  cmd->add_option("--epsilon", opt.epsilon, "dual certificate accuracy");
  cmd->add_option("--delta", opt.delta, "snkpvn dual exit threshold");
  cmd->add_option("--gamma", opt.gamma, "isnkpvn outer shrink factor (> 1)");
  cmd->add_option("--max-iter", opt.max_iter, "iteration limit");
  cmd->add_option("--trace", opt.trace_path, "trace file (JSON lines)");
  cmd->add_option("--trace-every", opt.trace_every,
                  "record every k-th iteration (default 1 when --trace is set)");
}

ksep::SolverConfig config_from_options(const Options& opt) {
  ksep::SolverConfig config;
  config.max_iterations = opt.max_iter;
  config.dual_epsilon = opt.epsilon;
  config.gamma = opt.gamma;
  if (opt.trace_every > 0 && opt.trace_path.empty())
    throw UsageError("--trace-every requires --trace");
  config.trace_every =
      !opt.trace_path.empty() && opt.trace_every == 0 ? 1 : opt.trace_every;
  return config;
}

ksep::KernelSpec kernel_from_options(const Options& opt) {
  if (opt.kernel == "linear") return ksep::KernelSpec::linear();
  if (opt.kernel == "poly")
    return ksep::KernelSpec::polynomial(opt.degree, opt.offset);
  if (opt.kernel == "rbf") return ksep::KernelSpec::rbf(opt.bandwidth);
  throw UsageError("unsupported kernel: " + opt.kernel);
}

ksep::GramMatrix gram_from_options(const Options& opt,
                                   const ksep::LabeledDataset& data) {
  if (opt.kernel == "precomputed") {
    if (opt.gram_path.empty())
      throw UsageError("--kernel precomputed requires --gram");
    return ksep::load_gram(opt.gram_path, data.labels());
  }
  return ksep::build_gram(data, kernel_from_options(opt));
}

ksep::SolveOutcome run_algorithm(const std::string& algorithm,
                                 const ksep::LabeledDataset& data,
                                 const ksep::GramMatrix& gram,
                                 const ksep::SolverConfig& config, double delta) {
  if (algorithm == "perceptron") return ksep::perceptron(data, config);
  if (algorithm == "normalized-perceptron")
    return ksep::normalized_perceptron(data, config);
  if (algorithm == "nkp") return ksep::nkp(gram, config);
  if (algorithm == "snkp") return ksep::snkp(gram, config);
  if (algorithm == "nvn") return ksep::nvn(gram, config);
  if (algorithm == "snkpvn")
    return ksep::snkpvn(gram, ksep::SimplexVector::uniform(gram.size()), delta,
                        config);
  if (algorithm == "isnkpvn") return ksep::isnkpvn(gram, config);
  throw UsageError("unknown algorithm: " + algorithm);
}

/// The perceptron reports raw update counts; scaling each count by ||x_i||
/// re-expresses the same separator over normalized features so the emitted
/// certificate validates against the normalized Gram matrix.
void rescale_perceptron_alpha(ksep::SolveOutcome& outcome,
                              const ksep::LabeledDataset& data) {
  for (ksep::Index i = 0; i < outcome.alpha.size(); ++i)
    outcome.alpha[i] *= data.points().row(i).norm();
}

void write_trace_file(const std::string& path,
                      const std::vector<ksep::IterationRecord>& trace) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open trace file for writing: " + path);
  ksep::write_trace(out, trace);
}

int exit_code_for(const ksep::SolveOutcome& outcome) {
  switch (outcome.kind) {
    case ksep::SolveOutcome::Kind::primal:
      return kExitPrimal;
    case ksep::SolveOutcome::Kind::dual:
      return kExitDual;
    default:
      return kExitLimit;
  }
}

int run_solve_like(const Options& opt, const std::string& algorithm) {
  const ksep::LabeledDataset data = ksep::load_dataset(opt.data_path);
  if ((algorithm == "perceptron" || algorithm == "normalized-perceptron") &&
      opt.kernel != "linear")
    throw UsageError(algorithm + " works on raw features; only --kernel linear "
                     "is meaningful");
  const ksep::GramMatrix gram = gram_from_options(opt, data);
  const ksep::SolverConfig config = config_from_options(opt);

  const auto start = std::chrono::steady_clock::now();
  ksep::SolveOutcome outcome =
      run_algorithm(algorithm, data, gram, config, opt.delta);
  const auto stop = std::chrono::steady_clock::now();
  const double wall_ms =
      std::chrono::duration<double, std::milli>(stop - start).count();

  if (algorithm == "perceptron") rescale_perceptron_alpha(outcome, data);
  if (!opt.trace_path.empty()) write_trace_file(opt.trace_path, outcome.trace);

  const ksep::RunResult result = ksep::make_run_result(outcome, gram, wall_ms);
  std::cout << ksep::to_json(result).dump() << "\n";
  std::cerr << "ksep " << algorithm << ": outcome=" << result.outcome_kind
            << " iterations=" << result.iterations;
  if (result.min_decision) std::cerr << " min_decision=" << *result.min_decision;
  if (result.certificate_gnorm)
    std::cerr << " certificate_gnorm=" << *result.certificate_gnorm;
  std::cerr << " wall_time_ms=" << wall_ms << "\n";
  return exit_code_for(outcome);
}

int run_margin(const Options& opt) {
  const ksep::LabeledDataset data = ksep::load_dataset(opt.data_path);
  const ksep::GramMatrix gram = gram_from_options(opt, data);
  const auto start = std::chrono::steady_clock::now();
  const ksep::OracleReport report =
      ksep::reference_min_gnorm(gram, opt.epsilon);
  const auto stop = std::chrono::steady_clock::now();
  const double wall_ms =
      std::chrono::duration<double, std::milli>(stop - start).count();

  nlohmann::json j;
  j["feasible"] = report.feasible;
  j["margin_estimate"] = report.margin_estimate;
  j["minimizer"] = std::vector<double>(
      report.minimizer.vec().data(),
      report.minimizer.vec().data() + report.minimizer.size());
  j["iterations"] = report.iterations;
  j["wall_time_ms"] = wall_ms;
  std::cout << j.dump() << "\n";
  std::cerr << "ksep margin: feasible=" << (report.feasible ? "true" : "false")
            << " margin_estimate=" << report.margin_estimate
            << " iterations=" << report.iterations << "\n";
  return report.feasible ? kExitPrimal : kExitDual;
}

int run_bench(const Options& opt) {
  const ksep::LabeledDataset data =
      ksep::synthetic::lopsided_two_cluster(opt.seed, 24, 0.1);
  const ksep::GramMatrix gram =
      ksep::build_gram(data, ksep::KernelSpec::linear());
  const ksep::SolverConfig config = config_from_options(opt);

  const std::vector<std::string> algorithms = {
      "perceptron", "normalized-perceptron", "nkp", "snkp",
      "nvn",        "snkpvn",                "isnkpvn"};
  nlohmann::json results;
  for (const auto& algorithm : algorithms) {
    const auto start = std::chrono::steady_clock::now();
    ksep::SolveOutcome outcome =
        run_algorithm(algorithm, data, gram, config, opt.delta);
    const auto stop = std::chrono::steady_clock::now();
    const double wall_ms =
        std::chrono::duration<double, std::milli>(stop - start).count();
    if (algorithm == "perceptron") rescale_perceptron_alpha(outcome, data);
    if (!opt.trace_path.empty())
      write_trace_file(opt.trace_path + "." + algorithm + ".jsonl",
                       outcome.trace);
    const ksep::RunResult result = ksep::make_run_result(outcome, gram, wall_ms);
    results[algorithm] = ksep::to_json(result);
    std::cerr << "ksep bench " << algorithm << ": outcome="
              << result.outcome_kind << " iterations=" << result.iterations
              << " wall_time_ms=" << wall_ms << "\n";
  }
  nlohmann::json j;
  j["seed"] = opt.seed;
  j["n"] = data.size();
  j["d"] = data.dim();
  j["instance"] = "lopsided-two-cluster";
  j["results"] = results;
  std::cout << j.dump() << "\n";
  return kExitPrimal;
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{"kernelized linear feasibility: perfect separators and dual "
               "certificates"};
  app.require_subcommand(1);

  CLI::App* solve = app.add_subcommand("solve", "run one solver on a dataset");
  solve->add_option("--data", opt.data_path, "dataset CSV")->required();
  solve->add_option("--algorithm", opt.algorithm, "solver")
      ->check(CLI::IsMember({"perceptron", "normalized-perceptron", "nkp",
                             "snkp", "nvn", "snkpvn", "isnkpvn"}))
      ->required();
  add_kernel_flags(solve, opt);
  add_config_flags(solve, opt);

  CLI::App* certify = app.add_subcommand(
      "certify", "separator or epsilon dual certificate via isnkpvn");
  certify->add_option("--data", opt.data_path, "dataset CSV")->required();
  add_kernel_flags(certify, opt);
  add_config_flags(certify, opt);

  CLI::App* margin =
      app.add_subcommand("margin", "reference margin of an instance");
  margin->add_option("--data", opt.data_path, "dataset CSV")->required();
  margin->add_option("--epsilon", opt.epsilon, "oracle tolerance");
  add_kernel_flags(margin, opt);

  CLI::App* bench = app.add_subcommand(
      "bench", "race all solvers on one seeded synthetic instance");
  bench->add_option("--seed", opt.seed, "instance seed")->required();
  add_config_flags(bench, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (app.got_subcommand(solve)) return run_solve_like(opt, opt.algorithm);
    if (app.got_subcommand(certify)) return run_solve_like(opt, "isnkpvn");
    if (app.got_subcommand(margin)) return run_margin(opt);
    if (app.got_subcommand(bench)) return run_bench(opt);
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
