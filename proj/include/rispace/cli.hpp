#pragma once

/**
 * @file cli.hpp
 * @brief Suite catalogue and the configuration-driven runner behind the
 * `verify`, `run` and `multiplier` subcommands.
 *
 * Exit codes: 0 when no verdict is Violated, 2 on a Violated verdict, 3 on a
 * configuration error, 1 on any other failure.
 */

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "rispace/grammar.hpp"
#include "rispace/report.hpp"

namespace rispace {

struct SuiteInfo {
  std::string id;
  /// The result the suite checks, in words.
  std::string anchor;
  /// constant-exact, constant-robust or report-only.
  std::string kind;
  /// Settings the suite reads besides the common ones.
  std::string keys;
};

/// Stable order.
const std::vector<SuiteInfo>& suite_catalogue();
/// One line per suite: id, kind, anchor.
std::string list_suites();

/// A configuration plus the effective value of every setting a suite read.
struct RunConfig {
  ConfigFile settings;
  /// Filled by run_suite.
  nlohmann::ordered_json resolved = nlohmann::ordered_json::object();
};

/// Runs the suite named by the `suite` setting. ConfigError for unknown
/// suites, unknown settings and malformed values.
VerificationReport run_suite(RunConfig& config);

/// run_suite, then the JSON and CSV reports (written atomically) and a plain
/// text summary on `out`. Diagnostics go to `err`. Never throws.
int run(RunConfig& config, std::ostream& out, std::ostream& err);

std::string summary_text(const VerificationReport& report);

/// Exit code for a finished report.
int exit_code(const VerificationReport& report);

}  // namespace rispace
