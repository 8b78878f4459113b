#pragma once

// Shared plumbing of the verification suites.

#include <functional>
#include <vector>

#include "rispace/corpus.hpp"
#include "rispace/interp.hpp"
#include "rispace/report.hpp"
#include "rispace/young.hpp"

namespace rispace::suite {

struct Sides {
  double lhs = 0.0;
  double rhs = 0.0;
};

using SidesFn = std::function<Sides(const FunctionPair&)>;

std::vector<CaseRecord> evaluate(const std::vector<FunctionPair>& corpus, unsigned threads, const SidesFn& fn);
void attach_refined(std::vector<CaseRecord>& cases, const std::vector<FunctionPair>& corpus, unsigned threads,
                    const SidesFn& fn);
VerificationReport start(std::string suite, std::string label, std::string anchor,
                         const std::vector<FunctionPair>& corpus, std::vector<CaseRecord> cases);
double max_refined(const VerificationReport& r);
/// A case violates C when it exceeds C (1 + tol) on the base grid and, if the
/// suite has one, on the refined grid too.
bool violates(const VerificationReport& r, double C, double tol);
void finish_exact(VerificationReport& r, const SuiteOptions& o, double default_tol);
/// Bounded when finite and refinement-stable; Conditional when the drift
/// exceeds `drift_limit` or `conditional` is set; Violated only against an
/// explicitly claimed constant.
void finish_robust(VerificationReport& r, const SuiteOptions& o, double drift_limit, bool conditional);
StepFunction conv_step(const StepFunction& f, const StepFunction& g, int resample);
InterpParams refined_params(InterpParams p);
nlohmann::ordered_json params_json(const InterpParams& p);

}  // namespace rispace::suite
