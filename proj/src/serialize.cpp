#include "rispace/serialize.hpp"

#include "rispace/error.hpp"

namespace rispace {

nlohmann::ordered_json to_json(const StepFunction& f) {
  nlohmann::ordered_json j;
  j["domain"] = std::string(to_string(f.domain()));
  j["breakpoints"] = std::vector<double>(f.breakpoints().begin(), f.breakpoints().end());
  std::vector<double> re, im;
  for (const auto& c : f.values()) {
    re.push_back(c.real());
    im.push_back(c.imag());
  }
  j["re"] = re;
  j["im"] = im;
  return j;
}

StepFunction step_function_from_json(const nlohmann::json& j) {
  try {
    const Domain d = domain_from_string(j.at("domain").get<std::string>());
    auto x = j.at("breakpoints").get<std::vector<double>>();
    const auto re = j.at("re").get<std::vector<double>>();
    std::vector<double> im(re.size(), 0.0);
    if (j.contains("im")) im = j.at("im").get<std::vector<double>>();
    if (im.size() != re.size())
      throw Error(ErrorCode::InvalidArgument, "re/im arrays differ in length");
    std::vector<Complex> v(re.size());
    for (std::size_t i = 0; i < re.size(); ++i) v[i] = {re[i], im[i]};
    return StepFunction(d, std::move(x), std::move(v));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("malformed step function record: ") + e.what());
  }
}

std::string dump_step_function(const StepFunction& f) { return to_json(f).dump(); }

StepFunction parse_step_function(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("invalid JSON: ") + e.what());
  }
  return step_function_from_json(j);
}

}  // namespace rispace
