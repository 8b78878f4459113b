#include "rispace/grammar.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include "rispace/error.hpp"
#include "rispace/serialize.hpp"
#include "rispace/varying.hpp"

namespace rispace {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void fail(TextOrigin at, const std::string& msg) {
  throw Error(ErrorCode::ConfigError,
              "line " + std::to_string(at.line) + ", column " + std::to_string(at.column) + ": " + msg);
}

class Parser {
public:
  Parser(std::string_view text, const std::map<std::string, double>& vars, TextOrigin at)
      : s_(text), vars_(vars), at_(at) {}

  TextOrigin here() const { return origin_of(pos_); }

  TextOrigin origin_of(std::size_t pos) const {
    TextOrigin o = at_;
    for (std::size_t i = 0; i < pos && i < s_.size(); ++i) {
      if (s_[i] == '\n') {
        ++o.line;
        o.column = 1;
      } else {
        ++o.column;
      }
    }
    return o;
  }

  [[noreturn]] void error(const std::string& msg) const { fail(here(), msg); }

  void ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool done() {
    ws();
    return pos_ >= s_.size();
  }
  char peek() {
    ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= s_.size()) error(std::string("expected '") + c + "' but the text ended");
      error(std::string("expected '") + c + "' but found '" + s_[pos_] + "'");
    }
  }
  void finish() {
    if (!done()) error("unexpected trailing text '" + std::string(s_.substr(pos_)) + "'");
  }

  bool at_ident() {
    const char c = peek();
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  std::string ident() {
    ws();
    const std::size_t b = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    if (b == pos_) error("expected a name");
    return std::string(s_.substr(b, pos_ - b));
  }

  std::string quoted() {
    ws();
    if (pos_ >= s_.size() || s_[pos_] != '"') error("expected a double-quoted string");
    const std::size_t b = ++pos_;
    while (pos_ < s_.size() && s_[pos_] != '"') ++pos_;
    if (pos_ >= s_.size()) fail(origin_of(b - 1), "unterminated string");
    const std::string out(s_.substr(b, pos_ - b));
    ++pos_;
    return out;
  }
  TextOrigin string_origin() {
    ws();
    return origin_of(pos_ + 1);
  }

  // expr := term {(+|-) term}
  double expr() {
    double v = term();
    while (true) {
      if (accept('+')) v += term();
      else if (accept('-')) v -= term();
      else return v;
    }
  }
  double term() {
    double v = unary();
    while (true) {
      if (accept('*')) {
        v *= unary();
      } else if (peek() == '/') {
        ++pos_;
        const auto at = here();
        const double d = unary();
        if (d == 0.0) fail(at, "division by zero");
        v /= d;
      } else {
        return v;
      }
    }
  }
  double unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    const double base = atom();
    if (accept('^')) return std::pow(base, unary());
    return base;
  }
  double atom() {
    if (accept('(')) {
      const double v = expr();
      expect(')');
      return v;
    }
    if (at_ident()) {
      const auto at = here();
      const std::string name = ident();
      if (name == "inf" || name == "infinity") return kInfinity;
      const auto it = vars_.find(name);
      if (it == vars_.end()) fail(at, "unknown name '" + name + "' in a number");
      return it->second;
    }
    ws();
    const char* b = s_.data() + pos_;
    double v = 0.0;
    const auto r = std::from_chars(b, s_.data() + s_.size(), v);
    if (r.ec != std::errc() || r.ptr == b) error("expected a number");
    pos_ += static_cast<std::size_t>(r.ptr - b);
    return v;
  }

  SpaceSpec space() {
    const auto at = here();
    const std::string name = ident();
    auto one_arg = [&] {
      expect('(');
      const double v = expr();
      expect(')');
      return v;
    };
    try {
      if (name == "lebesgue") return SpaceSpec::lebesgue(one_arg());
      if (name == "Linf") return SpaceSpec::linf();
      if (name.size() > 1 && name[0] == 'L' && name.find_first_not_of("0123456789", 1) == std::string::npos)
        return SpaceSpec::lebesgue(std::stod(name.substr(1)));
      if (name == "lorentz") {
        expect('(');
        const double p = expr();
        expect(',');
        const double q = expr();
        expect(')');
        return SpaceSpec::lorentz(p, q);
      }
      if (name == "lz") {
        expect('(');
        const double p = expr();
        expect(',');
        const double q = expr();
        expect(',');
        const double a = expr();
        expect(')');
        return SpaceSpec::lorentz_zygmund(p, q, a);
      }
      if (name == "karamata") return karamata();
      if (name == "orlicz") {
        expect('(');
        const auto kind_at = here();
        const std::string kind = ident();
        if (kind != "lux" && kind != "amemiya") fail(kind_at, "orlicz gauge must be lux or amemiya");
        expect(',');
        const auto yat = string_origin();
        const YoungFunction phi = parse_young(quoted(), yat);
        expect(')');
        return kind == "lux" ? SpaceSpec::orlicz_lux(phi) : SpaceSpec::orlicz_amemiya(phi);
      }
      if (name == "llogl") return SpaceSpec::llogl();
      if (name == "lexp") return SpaceSpec::lexp();
      if (name == "grand") return SpaceSpec::grand(one_arg());
    } catch (const Error& e) {
      if (e.code() == ErrorCode::ConfigError) throw;
      fail(at, e.what());
    }
    fail(at, "unknown space '" + name +
                 "' (lebesgue, Lp, Linf, lorentz, lz, karamata, orlicz, llogl, lexp, grand)");
  }

  SpaceSpec karamata() {
    expect('(');
    double p = 0.0;
    ParamFunction b = ParamFunction::power(0.0);
    std::optional<SpaceSpec> E;
    LogWindow window;
    bool have_p = false;
    int positional = 0;
    do {
      const auto at = here();
      std::string key;
      const std::size_t save = pos_;
      if (at_ident()) {
        key = ident();
        if (!accept('=')) {
          pos_ = save;
          key.clear();
        }
      }
      if (key.empty()) {
        static const char* order[] = {"p", "b", "E"};
        if (positional > 2) fail(at, "karamata takes p, b, E");
        key = order[positional++];
      }
      if (key == "p") {
        p = expr();
        have_p = true;
      } else if (key == "b") {
        const auto sat = string_origin();
        b = param_function(quoted(), sat);
      } else if (key == "E") {
        E = space();
      } else if (key == "tmin") {
        window.t_min = expr();
      } else if (key == "tmax") {
        window.t_max = expr();
      } else {
        fail(at, "unknown karamata argument '" + key + "' (p, b, E, tmin, tmax)");
      }
    } while (accept(','));
    expect(')');
    if (!have_p || !E) error("karamata needs p and E");
    return SpaceSpec::karamata(p, b, *E, window);
  }

  static ParamFunction param_function(const std::string& text, TextOrigin at) {
    try {
      return parse_param_function(text);
    } catch (const Error& e) {
      fail(at, e.what());
    }
  }

  CoupleSpec couple() {
    if (at_ident()) {
      const auto at = here();
      if (ident() != "couple") fail(at, "expected couple(X0, X1)");
    }
    expect('(');
    CoupleSpec c;
    c.x0 = space();
    expect(',');
    c.x1 = space();
    expect(')');
    return c;
  }

  InterpParams params(InterpParams p) {
    if (at_ident()) {
      const auto at = here();
      if (ident() != "params") fail(at, "expected params(...)");
    }
    expect('(');
    if (accept(')')) return p;
    do {
      const auto at = here();
      const std::string key = ident();
      expect('=');
      if (key == "theta") {
        p.theta = expr();
      } else if (key == "b") {
        const auto sat = string_origin();
        p.weight = param_function(quoted(), sat);
      } else if (key == "E") {
        p.outer = space();
      } else if (key == "T") {
        p.T = expr();
      } else if (key == "h") {
        p.h = expr();
      } else {
        fail(at, "unknown parameter '" + key + "' (theta, b, E, T, h)");
      }
    } while (accept(','));
    expect(')');
    return p;
  }

  std::vector<double> list() {
    expect('[');
    std::vector<double> v;
    if (accept(']')) return v;
    do v.push_back(expr());
    while (accept(','));
    expect(']');
    return v;
  }

private:
  std::string_view s_;
  const std::map<std::string, double>& vars_;
  TextOrigin at_;
  std::size_t pos_ = 0;
};

}  // namespace

double parse_number(std::string_view text, const std::map<std::string, double>& vars, TextOrigin at) {
  Parser p(text, vars, at);
  const double v = p.expr();
  p.finish();
  return v;
}

SpaceSpec parse_space(std::string_view text, const std::map<std::string, double>& vars, TextOrigin at) {
  Parser p(text, vars, at);
  auto s = p.space();
  p.finish();
  return s;
}

CoupleSpec parse_couple(std::string_view text, const std::map<std::string, double>& vars, TextOrigin at) {
  Parser p(text, vars, at);
  auto c = p.couple();
  p.finish();
  return c;
}

InterpParams parse_params(std::string_view text, const InterpParams& base, const std::map<std::string, double>& vars,
                          TextOrigin at) {
  Parser p(text, vars, at);
  auto out = p.params(base);
  p.finish();
  return out;
}

YoungFunction parse_young(std::string_view text, TextOrigin at) {
  const std::string_view t = trim(text);
  if (t == "tlogt" || t == "t*log(e+t)") return YoungFunction::tlogt();
  if (t == "exp-1" || t == "e^t-1") return YoungFunction::exp_minus_one();
  static const std::map<std::string, double> none;
  Parser p(t, none, at);
  double coeff = 1.0, power = 1.0, alpha = 0.0;
  bool have_t = false;
  auto factor = [&] {
    if (p.at_ident()) {
      const auto fat = p.here();
      const std::string name = p.ident();
      const double e = p.accept('^') ? p.unary() : 1.0;
      if (name == "t") {
        power = e;
        have_t = true;
      } else if (name == "l") {
        alpha = e;
      } else {
        fail(fat, "unknown factor '" + name + "' in a Young function (t, l)");
      }
    } else {
      coeff *= p.unary();
    }
  };
  factor();
  while (true) {
    if (p.accept('*')) {
      factor();
    } else if (p.accept('/')) {
      coeff /= p.unary();
    } else {
      break;
    }
  }
  p.finish();
  if (!have_t) fail(at, "a Young function needs a power of t");
  try {
    if (alpha != 0.0) {
      if (coeff != 1.0) fail(at, "t^p*l^a takes no coefficient");
      return YoungFunction::power_log(power, alpha);
    }
    return YoungFunction::power(power, coeff);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ConfigError) throw;
    fail(at, e.what());
  }
}

StepFunction parse_function(std::string_view text, Domain domain, TextOrigin at) {
  const std::string_view t = trim(text);
  try {
    if (!t.empty() && t.front() == '{') return parse_step_function(std::string(t));
    if (!t.empty() && t.front() == '@') {
      std::ifstream in{std::string(t.substr(1))};
      if (!in) fail(at, "cannot read '" + std::string(t.substr(1)) + "'");
      std::stringstream ss;
      ss << in.rdbuf();
      return parse_step_function(ss.str());
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ConfigError) throw;
    fail(at, e.what());
  }
  static const std::map<std::string, double> vars{{"pi", 3.14159265358979323846}};
  Parser p(t, vars, at);
  const auto nat = p.here();
  const std::string name = p.ident();
  p.expect('(');
  try {
    if (name == "indicator") {
      const double a = p.expr();
      p.expect(',');
      const double b = p.expr();
      p.expect(')');
      p.finish();
      return StepFunction::indicator(domain, a, b);
    }
    if (name == "steps") {
      auto x = p.list();
      p.expect(',');
      auto v = p.list();
      p.expect(')');
      p.finish();
      return StepFunction::from_real(domain, std::move(x), std::move(v));
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ConfigError) throw;
    fail(nat, e.what());
  }
  fail(nat, "unknown function form '" + name + "' (JSON, @file, indicator, steps)");
}

ConfigFile ConfigFile::parse(std::string_view text) {
  ConfigFile cfg;
  std::size_t line_no = 0, start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    const std::size_t line_start = start;
    start = end + 1;
    ++line_no;
    // strip a comment outside quotes
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') quoted = !quoted;
      if (line[i] == '#' && !quoted) {
        line = line.substr(0, i);
        break;
      }
    }
    if (trim(line).empty()) continue;
    auto column_of = [&](std::string_view part) {
      return static_cast<std::size_t>(part.data() - text.data()) - line_start + 1;
    };
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) fail({line_no, column_of(trim(line))}, "expected key = value");
    const std::string_view key = trim(line.substr(0, eq));
    if (key.empty()) fail({line_no, column_of(line)}, "missing key before '='");
    for (char c : key)
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.'))
        fail({line_no, column_of(key)}, "invalid key '" + std::string(key) + "'");
    std::string_view value = trim(line.substr(eq + 1));
    if (value.empty()) fail({line_no, eq + 2}, "missing value for '" + std::string(key) + "'");
    TextOrigin origin{line_no, column_of(value)};
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"' &&
        value.find('"', 1) == value.size() - 1) {
      value = value.substr(1, value.size() - 2);
      ++origin.column;
    }
    if (cfg.has(std::string(key))) fail({line_no, column_of(key)}, "duplicate key '" + std::string(key) + "'");
    cfg.set(std::string(key), std::string(value), origin);
  }
  return cfg;
}

ConfigFile ConfigFile::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigError, "cannot read configuration file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

void ConfigFile::set(const std::string& key, std::string value, TextOrigin origin) {
  settings_[key] = Setting{std::move(value), origin};
}

const Setting& ConfigFile::at(const std::string& key) const {
  const auto it = settings_.find(key);
  if (it == settings_.end()) throw Error(ErrorCode::ConfigError, "missing setting '" + key + "'");
  return it->second;
}

}  // namespace rispace
