#include "rispace/varying.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <string>

#include "rispace/error.hpp"

namespace rispace {

namespace {

std::string shortest(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

double loglog_interp(const std::vector<double>& lx, const std::vector<double>& ly, double t,
                     bool extrapolate_slope) {
  const double x = std::log(t);
  if (lx.size() == 1) return std::exp(ly.front());
  std::size_t k;
  if (x <= lx.front()) {
    if (!extrapolate_slope) return std::exp(ly.front());
    k = 0;
  } else if (x >= lx.back()) {
    if (!extrapolate_slope) return std::exp(ly.back());
    k = lx.size() - 2;
  } else {
    k = static_cast<std::size_t>(std::upper_bound(lx.begin(), lx.end(), x) - lx.begin()) - 1;
  }
  const double u = (x - lx[k]) / (lx[k + 1] - lx[k]);
  return std::exp(ly[k] + (ly[k + 1] - ly[k]) * u);
}

void load_table(std::vector<double> t, std::vector<double> v, std::vector<double>& lx,
                std::vector<double>& ly) {
  if (t.empty() || t.size() != v.size())
    throw Error(ErrorCode::InvalidArgument, "table needs matching nonempty t/value lists");
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!(t[i] > 0.0) || !(v[i] > 0.0) || !std::isfinite(t[i]) || !std::isfinite(v[i]))
      throw Error(ErrorCode::InvalidArgument, "table entries must be finite and positive");
    if (i > 0 && !(t[i] > t[i - 1]))
      throw Error(ErrorCode::InvalidArgument, "table abscissae must increase");
  }
  lx.resize(t.size());
  ly.resize(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    lx[i] = std::log(t[i]);
    ly[i] = std::log(v[i]);
  }
}

}  // namespace

double ell(int i, double t) {
  if (i < 1) throw Error(ErrorCode::InvalidArgument, "ell index must be >= 1");
  if (!(t > 0.0)) throw Error(ErrorCode::InvalidArgument, "ell needs t > 0");
  double v = t;
  for (int k = 0; k < i; ++k) v = 1.0 + std::abs(std::log(v));
  return v;
}

// ---------------------------------------------------------------------------

SlowlyVarying SlowlyVarying::constant(double c) {
  if (!(c > 0.0) || !std::isfinite(c))
    throw Error(ErrorCode::InvalidArgument, "slowly varying constant must be positive");
  SlowlyVarying b;
  b.constant_ = c;
  return b;
}

SlowlyVarying SlowlyVarying::iterated_log(std::vector<double> alpha) {
  for (double a : alpha)
    if (!std::isfinite(a)) throw Error(ErrorCode::InvalidArgument, "non-finite exponent");
  while (!alpha.empty() && alpha.back() == 0.0) alpha.pop_back();
  SlowlyVarying b;
  if (alpha.empty()) return b;
  b.kind_ = Kind::IteratedLogPower;
  b.alpha_ = std::move(alpha);
  return b;
}

SlowlyVarying SlowlyVarying::table(std::vector<double> t, std::vector<double> values) {
  SlowlyVarying b;
  b.kind_ = Kind::Table;
  load_table(std::move(t), std::move(values), b.log_t_, b.log_v_);
  return b;
}

double SlowlyVarying::operator()(double t) const {
  if (!(t > 0.0)) throw Error(ErrorCode::InvalidArgument, "slowly varying function needs t > 0");
  switch (kind_) {
    case Kind::Constant: return constant_;
    case Kind::IteratedLogPower: {
      double v = constant_;
      double l = t;
      for (double a : alpha_) {
        l = 1.0 + std::abs(std::log(l));
        if (a != 0.0) v *= std::pow(l, a);
      }
      return v;
    }
    case Kind::Table: return loglog_interp(log_t_, log_v_, t, false);
  }
  return 1.0;
}

bool SlowlyVarying::is_one() const { return kind_ == Kind::Constant && constant_ == 1.0; }

std::string SlowlyVarying::label() const {
  switch (kind_) {
    case Kind::Constant: return shortest(constant_);
    case Kind::IteratedLogPower: {
      std::string s;
      if (constant_ != 1.0) s = shortest(constant_);
      for (std::size_t i = 0; i < alpha_.size(); ++i) {
        if (alpha_[i] == 0.0) continue;
        if (!s.empty()) s += " * ";
        s += "l" + std::to_string(i + 1);
        if (alpha_[i] != 1.0) s += "^" + shortest(alpha_[i]);
      }
      return s;
    }
    case Kind::Table: return "table";
  }
  return "?";
}

// ---------------------------------------------------------------------------

ParamFunction ParamFunction::power(double p, double coeff) {
  if (!std::isfinite(p) || !(coeff > 0.0) || !std::isfinite(coeff))
    throw Error(ErrorCode::InvalidArgument, "power parameter function needs finite p and coeff > 0");
  ParamFunction f;
  f.kind_ = Kind::Power;
  f.p_ = p;
  f.coeff_ = coeff;
  return f;
}

ParamFunction ParamFunction::power_times(double p, SlowlyVarying b) {
  if (!std::isfinite(p)) throw Error(ErrorCode::InvalidArgument, "non-finite exponent");
  ParamFunction f;
  if (b.kind() == SlowlyVarying::Kind::Constant) {
    f = power(p, b(1.0));
    return f;
  }
  f.kind_ = Kind::PowerTimesSlowlyVarying;
  f.p_ = p;
  f.b_ = std::move(b);
  return f;
}

ParamFunction ParamFunction::table(std::vector<double> t, std::vector<double> values,
                                   std::string label) {
  ParamFunction f;
  f.kind_ = Kind::Table;
  load_table(std::move(t), std::move(values), f.log_t_, f.log_v_);
  f.label_ = std::move(label);
  return f;
}

ParamFunction ParamFunction::custom(std::function<double(double)> fn, std::string label) {
  if (!fn) throw Error(ErrorCode::InvalidArgument, "empty callable");
  ParamFunction f;
  f.kind_ = Kind::Custom;
  f.fn_ = std::move(fn);
  f.label_ = std::move(label);
  return f;
}

double ParamFunction::operator()(double t) const {
  if (!(t > 0.0)) throw Error(ErrorCode::InvalidArgument, "parameter function needs t > 0");
  switch (kind_) {
    case Kind::Power: return p_ == 0.0 ? coeff_ : coeff_ * std::pow(t, p_);
    case Kind::PowerTimesSlowlyVarying: return (p_ == 0.0 ? 1.0 : std::pow(t, p_)) * b_(t);
    case Kind::Table: return loglog_interp(log_t_, log_v_, t, true);
    case Kind::Custom: return fn_(t);
  }
  return 1.0;
}

bool ParamFunction::is_one() const { return kind_ == Kind::Power && p_ == 0.0 && coeff_ == 1.0; }

std::string ParamFunction::label() const {
  switch (kind_) {
    case Kind::Power: {
      if (p_ == 0.0) return shortest(coeff_);
      std::string s = coeff_ == 1.0 ? "" : shortest(coeff_) + " * ";
      return s + (p_ == 1.0 ? "t" : "t^" + shortest(p_));
    }
    case Kind::PowerTimesSlowlyVarying: {
      const std::string b = b_.label();
      if (p_ == 0.0) return b;
      return (p_ == 1.0 ? std::string("t") : "t^" + shortest(p_)) + " * " + b;
    }
    case Kind::Table:
    case Kind::Custom: return label_;
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Grammar: product := factor ('*' factor)* ; factor := number | 't' [exp] | 'l' int [exp]
// exp := '^' (signed | '(' signed ['/' number] ')')

namespace {

class FactorParser {
public:
  explicit FactorParser(std::string_view s) : s_(s) {}

  struct Product {
    double coeff = 1.0;
    double power = 0.0;
    std::vector<double> alpha;
  };

  Product parse() {
    Product out;
    skip();
    if (pos_ >= s_.size()) fail("empty expression");
    factor(out);
    skip();
    while (pos_ < s_.size()) {
      if (s_[pos_] != '*') fail("expected '*'");
      ++pos_;
      skip();
      factor(out);
      skip();
    }
    return out;
  }

private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::ConfigError, "in \"" + std::string(s_) + "\" at column " +
                                            std::to_string(pos_ + 1) + ": " + what);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  double number() {
    skip();
    double v = 0.0;
    const char* begin = s_.data() + pos_;
    const char* end = s_.data() + s_.size();
    if (begin < end && *begin == '+') ++begin;
    auto res = std::from_chars(begin, end, v);
    if (res.ec != std::errc()) fail("expected a number");
    pos_ = static_cast<std::size_t>(res.ptr - s_.data());
    return v;
  }

  double exponent() {
    skip();
    if (pos_ >= s_.size() || s_[pos_] != '^') return 1.0;
    ++pos_;
    skip();
    if (pos_ < s_.size() && s_[pos_] == '(') {
      ++pos_;
      double v = number();
      skip();
      if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        const double d = number();
        if (d == 0.0) fail("division by zero");
        v /= d;
        skip();
      }
      if (pos_ >= s_.size() || s_[pos_] != ')') fail("expected ')'");
      ++pos_;
      return v;
    }
    return number();
  }

  void factor(Product& out) {
    skip();
    if (pos_ >= s_.size()) fail("expected a factor");
    const char c = s_[pos_];
    if (c == 't') {
      ++pos_;
      out.power += exponent();
    } else if (c == 'l') {
      ++pos_;
      int index = 0;
      const auto res = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), index);
      if (res.ec != std::errc() || index < 1) fail("expected ladder index after 'l'");
      pos_ = static_cast<std::size_t>(res.ptr - s_.data());
      const double a = exponent();
      if (out.alpha.size() < static_cast<std::size_t>(index)) out.alpha.resize(index, 0.0);
      out.alpha[index - 1] += a;
    } else {
      const double v = number();
      if (!(v > 0.0)) fail("coefficients must be positive");
      out.coeff *= v;
    }
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

ParamFunction parse_param_function(std::string_view text) {
  const auto prod = FactorParser(text).parse();
  const auto b = SlowlyVarying::iterated_log(prod.alpha);
  if (b.kind() == SlowlyVarying::Kind::Constant) return ParamFunction::power(prod.power, prod.coeff);
  if (prod.coeff != 1.0) {
    const double c = prod.coeff;
    const double p = prod.power;
    const std::string label = std::string(text);
    return ParamFunction::custom([c, p, b](double t) { return c * std::pow(t, p) * b(t); }, label);
  }
  return ParamFunction::power_times(prod.power, b);
}

SlowlyVarying parse_slowly_varying(std::string_view text) {
  const auto prod = FactorParser(text).parse();
  if (prod.power != 0.0)
    throw Error(ErrorCode::ConfigError, "slowly varying expression \"" + std::string(text) +
                                            "\" may not contain a power of t");
  if (prod.alpha.empty()) return SlowlyVarying::constant(prod.coeff);
  if (prod.coeff != 1.0)
    throw Error(ErrorCode::ConfigError,
                "slowly varying expression \"" + std::string(text) + "\" mixes a coefficient and logs");
  return SlowlyVarying::iterated_log(prod.alpha);
}

// ---------------------------------------------------------------------------
// Dilation analysis

double dilation_function(const ParamFunction& phi, double t, DilationGrid grid) {
  if (!(t > 0.0) || !std::isfinite(t)) throw Error(ErrorCode::InvalidArgument, "dilation needs t > 0");
  if (t == 1.0) return 1.0;
  double best = 0.0;
  auto probe = [&](double s) {
    const double num = phi(t * s);
    const double den = phi(s);
    if (!std::isfinite(num) || !std::isfinite(den) || !(num > 0.0) || !(den > 0.0))
      throw Error(ErrorCode::GridOverflow,
                  "parameter function " + phi.label() + " is not finite and positive on the dilation grid");
    best = std::max(best, num / den);
  };
  for (int k = grid.min_exp; k <= grid.max_exp; ++k) {
    const double s = std::ldexp(1.0, k);
    probe(s);
    probe(s / t);
  }
  return best;
}

DilationIndices dilation_indices(const ParamFunction& phi) {
  DilationIndices out;
  auto quotient = [&](int e) {
    const double t = std::ldexp(1.0, e);
    return std::log(dilation_function(phi, t)) / std::log(t);
  };
  out.lower_samples[0] = quotient(-30);
  out.lower_samples[1] = quotient(-40);
  out.upper_samples[0] = quotient(30);
  out.upper_samples[1] = quotient(40);

  const double x1 = 30.0 * std::log(2.0);
  const double x2 = 40.0 * std::log(2.0);
  const double w1 = std::log(x1) / x1;
  const double w2 = std::log(x2) / x2;
  auto extrapolate = [&](double r1, double r2) {
    const double c = (r1 - r2) / (w1 - w2);
    return r2 - c * w2;
  };
  out.lower = extrapolate(out.lower_samples[0], out.lower_samples[1]);
  out.upper = extrapolate(out.upper_samples[0], out.upper_samples[1]);
  out.error_bar = std::max(std::abs(out.lower_samples[0] - out.lower_samples[1]),
                           std::abs(out.upper_samples[0] - out.upper_samples[1]));
  if (out.error_bar > 0.1)
    throw Error(ErrorCode::NotConverged, "dilation index samples of " + phi.label() +
                                             " differ by " + shortest(out.error_bar));
  return out;
}

ParamFunction m_phi(const ParamFunction& phi,
                    const std::function<ParamFunction(const ParamFunction&)>& override_hook) {
  if (override_hook) return override_hook(phi);
  if (phi.kind() == ParamFunction::Kind::Power) return ParamFunction::power(phi.exponent());
  std::vector<double> t, v;
  constexpr int kPerOctave = 4;
  for (int k = -60 * kPerOctave; k <= 60 * kPerOctave; ++k) {
    const double tk = std::exp2(static_cast<double>(k) / kPerOctave);
    t.push_back(tk);
    v.push_back(dilation_function(phi, tk));
  }
  return ParamFunction::table(std::move(t), std::move(v), "s[" + phi.label() + "]");
}

ParamFunction b_theta(const ParamFunction& b, double theta) {
  if (!std::isfinite(theta)) throw Error(ErrorCode::InvalidArgument, "non-finite theta");
  return ParamFunction::custom(
      [b, theta](double t) {
        const double l = ell(1, t);
        return std::pow(l, -theta) * b(t * l);
      },
      "l^-" + shortest(theta) + " * (" + b.label() + ")(t l)");
}

}  // namespace rispace
