#include "suite_common.hpp"

#include <cmath>

namespace rispace::suite {

std::vector<CaseRecord> evaluate(const std::vector<FunctionPair>& corpus, unsigned threads, const SidesFn& fn) {
  const std::function<CaseRecord(std::size_t)> one = [&](std::size_t i) {
    const Sides s = fn(corpus[i]);
    CaseRecord c;
    c.lhs = s.lhs;
    c.rhs = s.rhs;
    c.ratio = safe_ratio(s.lhs, s.rhs);
    c.tag = corpus[i].tag;
    return c;
  };
  return parallel_map(corpus.size(), threads, one);
}

void attach_refined(std::vector<CaseRecord>& cases, const std::vector<FunctionPair>& corpus, unsigned threads,
                    const SidesFn& fn) {
  const auto refined = evaluate(corpus, threads, fn);
  for (std::size_t i = 0; i < cases.size(); ++i) cases[i].refined_ratio = refined[i].ratio;
}

VerificationReport start(std::string suite, std::string label, std::string anchor,
                         const std::vector<FunctionPair>& corpus, std::vector<CaseRecord> cases) {
  VerificationReport r;
  r.suite = std::move(suite);
  r.label = std::move(label);
  r.anchor = std::move(anchor);
  r.cases = std::move(cases);
  r.summarize();
  if (!r.cases.empty()) {
    r.argmax_f = corpus[r.argmax].f;
    r.argmax_g = corpus[r.argmax].g;
  }
  return r;
}

double max_refined(const VerificationReport& r) {
  double m = 0.0;
  for (const auto& c : r.cases)
    if (c.refined_ratio) m = std::max(m, *c.refined_ratio);
  return m;
}

bool violates(const VerificationReport& r, double C, double tol) {
  const double bound = C * (1.0 + tol);
  for (const auto& c : r.cases) {
    if (!(c.ratio > bound) && !std::isnan(c.ratio)) continue;
    if (c.refined_ratio && *c.refined_ratio <= bound) continue;
    return true;
  }
  return false;
}

void finish_exact(VerificationReport& r, const SuiteOptions& o, double default_tol) {
  r.claimed_constant = o.claimed_constant.value_or(1.0);
  r.tolerance = o.tolerance >= 0.0 ? o.tolerance : default_tol;
  r.verdict = violates(r, *r.claimed_constant, r.tolerance) ? Verdict::Violated : Verdict::ConstantExactOK;
}

void finish_robust(VerificationReport& r, const SuiteOptions& o, double drift_limit, bool conditional) {
  r.tolerance = o.tolerance >= 0.0 ? o.tolerance : 0.0;
  r.claimed_constant = o.claimed_constant;
  bool stable = true;
  if (o.refine && r.max_ratio > 0.0) {
    r.refinement_drift = std::abs(max_refined(r) - r.max_ratio) / r.max_ratio;
    stable = *r.refinement_drift <= drift_limit;
  } else if (o.refine) {
    r.refinement_drift = 0.0;
  }
  r.diagnostics["drift_limit"] = drift_limit;
  if (o.claimed_constant && violates(r, *o.claimed_constant, r.tolerance)) {
    r.verdict = Verdict::Violated;
    return;
  }
  if (!std::isfinite(r.max_ratio)) {
    r.verdict = Verdict::Conditional;
    r.notes.push_back("non-finite ratio in corpus");
    return;
  }
  if (!stable) r.notes.push_back("refinement drift above " + format_double(drift_limit));
  r.verdict = (conditional || !stable) ? Verdict::Conditional : Verdict::Bounded;
}

StepFunction conv_step(const StepFunction& f, const StepFunction& g, int resample) {
  return convolve_continuous(f, g).to_step(resample);
}

InterpParams refined_params(InterpParams p) {
  p.h *= 0.5;
  p.T *= 2.0;
  return p;
}

nlohmann::ordered_json params_json(const InterpParams& p) {
  nlohmann::ordered_json j;
  j["theta"] = p.theta;
  j["b"] = p.weight.label();
  j["E"] = p.outer_label();
  j["T"] = p.T;
  j["h"] = p.h;
  return j;
}

}  // namespace rispace::suite
