#pragma once

#include <string>

#include <json.hpp>

#include "rispace/core.hpp"

namespace rispace {

/// {"domain": "Torus", "breakpoints": [...], "re": [...], "im": [...]}.
/// Doubles are written with round-trip precision, so parse(dump(f)) == f.
nlohmann::ordered_json to_json(const StepFunction& f);
StepFunction step_function_from_json(const nlohmann::json& j);

std::string dump_step_function(const StepFunction& f);
StepFunction parse_step_function(const std::string& text);

}  // namespace rispace
