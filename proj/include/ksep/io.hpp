// File ingestion and machine-readable emission.
//
// Dataset format: headerless CSV, first column the label (-1 or +1), the
// remaining columns features. UTF-8, LF or CRLF. Kernel matrix files are
// n x n CSV of raw kernel values; normalization and label signs are applied
// on load. Trace files hold one flat JSON object per line with keys
// {k, mu, loss, smoothed_loss, p_gnorm, min_decision}, floats printed with
// 17 significant digits so records round-trip losslessly.
#pragma once

#include <charconv>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ksep/dataset.hpp"
#include "ksep/gram.hpp"
#include "ksep/solvers.hpp"
#include "ksep/types.hpp"

namespace ksep {

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  fields.push_back(current);
  return fields;
}

inline double parse_number(const std::string& field, long line_number) {
  const char* begin = field.data();
  const char* end = begin + field.size();
  while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
  while (end > begin && (*(end - 1) == ' ' || *(end - 1) == '\t')) --end;
  if (begin < end && *begin == '+') ++begin;  // from_chars rejects a leading +
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || begin == end)
    throw std::runtime_error("non-numeric field '" + field + "' (line " +
                             std::to_string(line_number) + ")");
  return value;
}

/// Reads non-empty CSV rows; trailing blank lines are tolerated, interior
/// blank lines are an error. Returns rows paired with their line numbers.
inline std::vector<std::pair<std::vector<std::string>, long>> read_csv_rows(
    std::istream& in, const std::string& origin) {
  std::vector<std::pair<std::vector<std::string>, long>> rows;
  std::string line;
  long line_number = 0;
  long pending_blank = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) {
      pending_blank = pending_blank == 0 ? line_number : pending_blank;
      continue;
    }
    if (pending_blank != 0)
      throw std::runtime_error(origin + ": empty line (line " +
                               std::to_string(pending_blank) + ")");
    rows.emplace_back(split_csv_line(line), line_number);
  }
  return rows;
}

}  // namespace detail

/// Parses a labeled dataset from CSV. Errors carry the offending line number.
inline LabeledDataset load_dataset(std::istream& in, const std::string& origin) {
  const auto rows = detail::read_csv_rows(in, origin);
  if (rows.empty()) throw std::runtime_error(origin + ": dataset is empty");
  const Index n = static_cast<Index>(rows.size());
  const Index width = static_cast<Index>(rows.front().first.size());
  if (width < 2)
    throw std::runtime_error(origin + ": rows need a label and at least one " +
                             "feature (line " +
                             std::to_string(rows.front().second) + ")");
  Matrix points(n, width - 1);
  Vector labels(n);
  for (Index i = 0; i < n; ++i) {
    const auto& [fields, line_number] = rows[static_cast<std::size_t>(i)];
    if (static_cast<Index>(fields.size()) != width)
      throw std::runtime_error(
          origin + ": ragged row, expected " + std::to_string(width) +
          " fields but found " + std::to_string(fields.size()) + " (line " +
          std::to_string(line_number) + ")");
    const double label = detail::parse_number(fields[0], line_number);
    if (label != 1.0 && label != -1.0)
      throw std::runtime_error("label must be -1 or +1 (line " +
                               std::to_string(line_number) + ")");
    labels[i] = label;
    for (Index j = 1; j < width; ++j)
      points(i, j - 1) =
          detail::parse_number(fields[static_cast<std::size_t>(j)], line_number);
  }
  return LabeledDataset(std::move(points), std::move(labels));
}

inline LabeledDataset load_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset file: " + path);
  return load_dataset(in, path);
}

/// Parses an n x n raw kernel matrix and returns the normalized signed Gram
/// matrix for the given labels. Size, symmetry (1e-9) and a strictly positive
/// diagonal are validated.
inline GramMatrix load_gram(std::istream& in, const std::string& origin,
                            const Vector& labels) {
  const auto rows = detail::read_csv_rows(in, origin);
  const Index n = labels.size();
  if (static_cast<Index>(rows.size()) != n)
    throw std::runtime_error(origin + ": kernel matrix has " +
                             std::to_string(rows.size()) + " rows, dataset has " +
                             std::to_string(n));
  Matrix raw(n, n);
  for (Index i = 0; i < n; ++i) {
    const auto& [fields, line_number] = rows[static_cast<std::size_t>(i)];
    if (static_cast<Index>(fields.size()) != n)
      throw std::runtime_error(
          origin + ": kernel matrix row has " + std::to_string(fields.size()) +
          " columns, expected " + std::to_string(n) + " (line " +
          std::to_string(line_number) + ")");
    for (Index j = 0; j < n; ++j)
      raw(i, j) =
          detail::parse_number(fields[static_cast<std::size_t>(j)], line_number);
  }
  // KernelSpec validates symmetry and the diagonal; build shares the one
  // normalization path.
  const KernelSpec spec = KernelSpec::precomputed(std::move(raw));
  return GramMatrix::from_entries(
      detail::normalize_signed_gram(spec.matrix(), labels));
}

inline GramMatrix load_gram(const std::string& path, const Vector& labels) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open kernel matrix file: " + path);
  return load_gram(in, path, labels);
}

// --- Trace serialization -----------------------------------------------------

namespace detail {
inline std::string format_double17(double x) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", x);
  return buffer;
}
}  // namespace detail

inline std::string format_trace_line(const IterationRecord& rec) {
  std::ostringstream out;
  out << "{\"k\":" << rec.k << ",\"mu\":" << detail::format_double17(rec.mu)
      << ",\"loss\":" << detail::format_double17(rec.loss_value)
      << ",\"smoothed_loss\":" << detail::format_double17(rec.smoothed_loss_value)
      << ",\"p_gnorm\":" << detail::format_double17(rec.p_gnorm)
      << ",\"min_decision\":" << detail::format_double17(rec.min_decision)
      << "}";
  return out.str();
}

inline IterationRecord parse_trace_line(const std::string& line) {
  const auto j = nlohmann::json::parse(line);
  IterationRecord rec;
  rec.k = j.at("k").get<long>();
  rec.mu = j.at("mu").get<double>();
  rec.loss_value = j.at("loss").get<double>();
  rec.smoothed_loss_value = j.at("smoothed_loss").get<double>();
  rec.p_gnorm = j.at("p_gnorm").get<double>();
  rec.min_decision = j.at("min_decision").get<double>();
  return rec;
}

inline void write_trace(std::ostream& out,
                        const std::vector<IterationRecord>& trace) {
  for (const auto& rec : trace) out << format_trace_line(rec) << '\n';
}

inline std::vector<IterationRecord> read_trace(std::istream& in) {
  std::vector<IterationRecord> trace;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    trace.push_back(parse_trace_line(line));
  }
  return trace;
}

// --- Result serialization ----------------------------------------------------

/// Flat, machine-readable outcome of one solver run. Primal outcomes carry
/// min_decision, dual outcomes certificate_gnorm; limit outcomes carry only
/// the iteration count. Serialized as a single JSON object on stdout.
struct RunResult {
  std::string outcome_kind;  // "primal" | "dual" | "limit"
  long iterations = 0;
  Vector certificate;
  std::optional<double> certificate_gnorm;
  std::optional<double> min_decision;
  double wall_time_ms = 0.0;
};

inline RunResult make_run_result(const SolveOutcome& outcome,
                                 const GramMatrix& gram, double wall_time_ms) {
  RunResult result;
  result.iterations = outcome.iterations_used;
  result.wall_time_ms = wall_time_ms;
  switch (outcome.kind) {
    case SolveOutcome::Kind::primal:
      result.outcome_kind = "primal";
      result.certificate = outcome.alpha;
      result.min_decision = decision_values(gram, outcome.alpha).minCoeff();
      break;
    case SolveOutcome::Kind::dual:
      result.outcome_kind = "dual";
      result.certificate = outcome.dual_certificate->vec();
      result.certificate_gnorm = outcome.dual_gnorm;
      break;
    case SolveOutcome::Kind::limit:
      result.outcome_kind = "limit";
      break;
  }
  return result;
}

inline nlohmann::json to_json(const RunResult& result) {
  nlohmann::json j;
  j["outcome"] = result.outcome_kind;
  j["iterations"] = result.iterations;
  j["certificate"] =
      std::vector<double>(result.certificate.data(),
                          result.certificate.data() + result.certificate.size());
  if (result.certificate_gnorm) j["certificate_gnorm"] = *result.certificate_gnorm;
  if (result.min_decision) j["min_decision"] = *result.min_decision;
  j["wall_time_ms"] = result.wall_time_ms;
  return j;
}

inline RunResult run_result_from_json(const nlohmann::json& j) {
  RunResult result;
  result.outcome_kind = j.at("outcome").get<std::string>();
  result.iterations = j.at("iterations").get<long>();
  const auto values = j.at("certificate").get<std::vector<double>>();
  result.certificate = Eigen::Map<const Vector>(values.data(),
                                                static_cast<Index>(values.size()));
  if (j.contains("certificate_gnorm"))
    result.certificate_gnorm = j.at("certificate_gnorm").get<double>();
  if (j.contains("min_decision"))
    result.min_decision = j.at("min_decision").get<double>();
  result.wall_time_ms = j.at("wall_time_ms").get<double>();
  return result;
}

}  // namespace ksep
