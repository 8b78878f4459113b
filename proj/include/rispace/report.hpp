#pragma once

/**
 * @file report.hpp
 * @brief Verification reports: per-case ratios, summary statistics, verdicts,
 * and their JSON / CSV serialisations.
 */

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "rispace/core.hpp"

namespace rispace {

enum class Verdict { Bounded, ConstantExactOK, Violated, Conditional };
std::string_view to_string(Verdict v);

struct CaseRecord {
  double lhs = 0.0;
  double rhs = 0.0;
  /// lhs / rhs with 0/0 = 0.
  double ratio = 0.0;
  /// Ratio of the same case on the refined grid, when the suite has one.
  std::optional<double> refined_ratio;
  std::string tag;
};

double safe_ratio(double lhs, double rhs);

struct VerificationReport {
  std::string suite;
  std::string label;
  std::string anchor;
  std::vector<CaseRecord> cases;

  std::size_t n_cases = 0;
  double max_ratio = 0.0;
  double mean_ratio = 0.0;
  std::size_t argmax = 0;
  std::optional<StepFunction> argmax_f;
  std::optional<StepFunction> argmax_g;
  /// |max refined - max base| / max base; absent for grid-free suites.
  std::optional<double> refinement_drift;
  Verdict verdict = Verdict::Bounded;

  /// Constant the suite checks against (1 for constant-exact inequalities).
  std::optional<double> claimed_constant;
  double tolerance = 0.0;

  /// Resolved configuration: spaces, grids, tolerances, seed.
  nlohmann::ordered_json parameters = nlohmann::ordered_json::object();
  /// Suite-specific diagnostics.
  nlohmann::ordered_json diagnostics = nlohmann::ordered_json::object();
  std::vector<std::string> notes;

  /// Fills n_cases, max/mean and argmax from `cases`.
  void summarize();

  nlohmann::ordered_json to_json() const;
  /// index,tag,lhs,rhs,ratio[,refined_ratio]
  std::string to_csv() const;
};

/// Writes through a temporary file in the same directory and renames it over `path`.
void write_file_atomic(const std::string& path, std::string_view content);

/// Shortest round-trip decimal form of a double ("inf", "-inf", "nan" for the rest).
std::string format_double(double x);

}  // namespace rispace
