#include "rispace/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <algorithm>

#include "rispace/error.hpp"
#include "rispace/serialize.hpp"

namespace rispace {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Bounded: return "Bounded";
    case Verdict::ConstantExactOK: return "ConstantExactOK";
    case Verdict::Violated: return "Violated";
    case Verdict::Conditional: return "Conditional";
  }
  return "?";
}

double safe_ratio(double lhs, double rhs) {
  if (lhs == 0.0) return 0.0;
  return lhs / rhs;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

namespace {

nlohmann::ordered_json number(double x) {
  if (std::isfinite(x)) return x;
  return format_double(x);
}

}  // namespace

void VerificationReport::summarize() {
  n_cases = cases.size();
  max_ratio = 0.0;
  mean_ratio = 0.0;
  argmax = 0;
  if (cases.empty()) return;
  double sum = 0.0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const double r = cases[i].ratio;
    sum += r;
    if (r > max_ratio || std::isnan(r)) {
      max_ratio = r;
      argmax = i;
    }
  }
  mean_ratio = sum / static_cast<double>(cases.size());
}

nlohmann::ordered_json VerificationReport::to_json() const {
  nlohmann::ordered_json j;
  j["suite"] = suite;
  j["label"] = label;
  j["anchor"] = anchor;
  j["verdict"] = std::string(to_string(verdict));
  j["n_cases"] = n_cases;
  j["max_ratio"] = number(max_ratio);
  j["mean_ratio"] = number(mean_ratio);
  j["refinement_drift"] = refinement_drift ? number(*refinement_drift) : nlohmann::ordered_json();
  j["claimed_constant"] = claimed_constant ? number(*claimed_constant) : nlohmann::ordered_json();
  j["tolerance"] = tolerance;
  nlohmann::ordered_json arg;
  arg["index"] = argmax;
  arg["tag"] = cases.empty() ? std::string() : cases[argmax].tag;
  arg["f"] = argmax_f ? rispace::to_json(*argmax_f) : nlohmann::ordered_json();
  arg["g"] = argmax_g ? rispace::to_json(*argmax_g) : nlohmann::ordered_json();
  j["argmax"] = arg;
  j["parameters"] = parameters;
  j["diagnostics"] = diagnostics;
  j["notes"] = notes;
  return j;
}

std::string VerificationReport::to_csv() const {
  const bool refined = std::any_of(cases.begin(), cases.end(), [](const CaseRecord& c) { return c.refined_ratio.has_value(); });
  std::string out = refined ? "index,tag,lhs,rhs,ratio,refined_ratio\n" : "index,tag,lhs,rhs,ratio\n";
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& c = cases[i];
    out += std::to_string(i) + "," + c.tag + "," + format_double(c.lhs) + "," + format_double(c.rhs) + "," +
           format_double(c.ratio);
    if (refined) out += "," + (c.refined_ratio ? format_double(*c.refined_ratio) : std::string());
    out += "\n";
  }
  return out;
}

void write_file_atomic(const std::string& path, std::string_view content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw Error(ErrorCode::InvalidArgument, "cannot open " + tmp.string() + " for writing");
    os.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!os) throw Error(ErrorCode::InvalidArgument, "write to " + tmp.string() + " failed");
  }
  fs::rename(tmp, target);
}

}  // namespace rispace
