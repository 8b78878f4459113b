#pragma once

/**
 * @file grammar.hpp
 * @brief Text forms of spaces, couples, interpolation parameters, Young
 * functions and step functions, and the key = value configuration format.
 *
 * All parse failures raise ConfigError with a "line L, column C" prefix; the
 * line is the configuration line the text came from (1 for command-line text).
 * The grammar is written out in README.md.
 */

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "rispace/core.hpp"
#include "rispace/interp.hpp"
#include "rispace/spaces.hpp"
#include "rispace/young_function.hpp"

namespace rispace {

/// Where a piece of text starts, for diagnostics.
struct TextOrigin {
  std::size_t line = 1;
  std::size_t column = 1;
};

/// Arithmetic over numbers, inf, + - * / ^ and parentheses, with named variables.
double parse_number(std::string_view text, const std::map<std::string, double>& vars = {}, TextOrigin at = {});

/// lebesgue(p) | L1 | L2 | Linf | Lp | lorentz(p, q) | lz(p, q, alpha) |
/// karamata(p=.., b="..", E=space) | orlicz(lux|amemiya, "young") | llogl | lexp | grand(p)
SpaceSpec parse_space(std::string_view text, const std::map<std::string, double>& vars = {}, TextOrigin at = {});

/// couple(space, space)
CoupleSpec parse_couple(std::string_view text, const std::map<std::string, double>& vars = {}, TextOrigin at = {});

/// params(theta=.., b="..", E=space, T=.., h=..); missing keys keep `base`.
InterpParams parse_params(std::string_view text, const InterpParams& base = {},
                          const std::map<std::string, double>& vars = {}, TextOrigin at = {});

/// "t^p", "c*t^p", "t^p/c", "t^p*l^a", "tlogt", "exp-1".
YoungFunction parse_young(std::string_view text, TextOrigin at = {});

/// JSON ({"domain":..., "breakpoints":..., "re":..., "im":...}), "@path" to a JSON
/// file, "indicator(a, b)" or "steps([x0, .., xn], [v1, .., vn])" on `domain`.
StepFunction parse_function(std::string_view text, Domain domain = Domain::RealLine, TextOrigin at = {});

struct Setting {
  std::string value;
  TextOrigin origin;
};

/// Parsed key = value lines. '#' starts a comment outside double quotes;
/// a value may be wrapped in double quotes, which are removed.
class ConfigFile {
public:
  static ConfigFile parse(std::string_view text);
  static ConfigFile load(const std::string& path);

  void set(const std::string& key, std::string value, TextOrigin origin = {});
  bool has(const std::string& key) const { return settings_.count(key) != 0; }
  const Setting& at(const std::string& key) const;
  const std::map<std::string, Setting>& settings() const { return settings_; }

private:
  std::map<std::string, Setting> settings_;
};

}  // namespace rispace
