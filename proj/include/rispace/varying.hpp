#pragma once

/**
 * @file varying.hpp
 * @brief Slowly varying functions, the iterated logarithm ladder and dilation
 * analysis of positive parameter functions on (0, inf).
 */

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace rispace {

/// l_1(t) = 1 + |log t|, l_i = l_1(l_{i-1}(t)).
double ell(int i, double t);
inline double ell(double t) { return ell(1, t); }

/// b(t) = c * prod_i l_i(t)^alpha_i, or a positive log-log interpolated table.
class SlowlyVarying {
public:
  enum class Kind { Constant, IteratedLogPower, Table };

  SlowlyVarying() = default;
  static SlowlyVarying constant(double c = 1.0);
  /// alpha[i] is the exponent of l_{i+1}.
  static SlowlyVarying iterated_log(std::vector<double> alpha);
  /// Samples (t_k, b_k) with t_k increasing and b_k > 0; constant beyond the ends.
  static SlowlyVarying table(std::vector<double> t, std::vector<double> values);

  double operator()(double t) const;
  Kind kind() const { return kind_; }
  const std::vector<double>& alpha() const { return alpha_; }
  bool is_one() const;
  std::string label() const;

private:
  Kind kind_ = Kind::Constant;
  double constant_ = 1.0;
  std::vector<double> alpha_;
  std::vector<double> log_t_;
  std::vector<double> log_v_;
};

/// A positive function on (0, inf): t^p, t^p b(t), a log-log table, or an
/// arbitrary callable carrying a label for reports.
class ParamFunction {
public:
  enum class Kind { Power, PowerTimesSlowlyVarying, Table, Custom };

  ParamFunction() = default;
  static ParamFunction power(double p, double coeff = 1.0);
  static ParamFunction power_times(double p, SlowlyVarying b);
  static ParamFunction slowly_varying(SlowlyVarying b) { return power_times(0.0, std::move(b)); }
  /// Log-log interpolation through (t_k, v_k), extended by the end slopes.
  static ParamFunction table(std::vector<double> t, std::vector<double> values, std::string label = "table");
  static ParamFunction custom(std::function<double(double)> f, std::string label);

  double operator()(double t) const;
  Kind kind() const { return kind_; }
  double exponent() const { return p_; }
  const SlowlyVarying& slowly_varying_part() const { return b_; }
  bool is_one() const;
  std::string label() const;

private:
  Kind kind_ = Kind::Power;
  double p_ = 0.0;
  double coeff_ = 1.0;
  SlowlyVarying b_;
  std::vector<double> log_t_;
  std::vector<double> log_v_;
  std::function<double(double)> fn_;
  std::string label_;
};

/// Parses products such as "l1^0.5 * l2^-1", "t^2 * l1", "2*t^(1/2)" or "1".
/// Errors are ConfigError with the offending column.
ParamFunction parse_param_function(std::string_view text);
/// As above but rejects power factors t^p.
SlowlyVarying parse_slowly_varying(std::string_view text);

struct DilationGrid {
  int min_exp = -40;
  int max_exp = 40;
};

/// s_phi(t) = sup_s phi(ts)/phi(s), sup over s = 2^k and s = 2^k/t for
/// k in [min_exp, max_exp]. GridOverflow if phi is not finite and positive there.
double dilation_function(const ParamFunction& phi, double t, DilationGrid grid = {});

struct DilationIndices {
  double lower = 0.0;  ///< pi_phi
  double upper = 0.0;  ///< rho_phi
  /// Raw quotients log s_phi(t)/log t at t = 2^-30, 2^-40 and at 2^30, 2^40.
  double lower_samples[2] = {0.0, 0.0};
  double upper_samples[2] = {0.0, 0.0};
  /// Largest gap between the two raw samples on either side.
  double error_bar = 0.0;
};

/// Two-scale estimate of the dilation indices. Each side fits
/// log s_phi(t)/log t = index + c log|log t| / |log t| through its two samples,
/// which removes the leading logarithmic bias of slowly varying factors.
/// NotConverged if the raw samples on one side differ by more than 0.1.
DilationIndices dilation_indices(const ParamFunction& phi);

/// The submultiplicative majorant t -> s_phi(t), tabulated on [2^-60, 2^60].
/// Powers and constants are returned unchanged. `override_hook`, when set,
/// replaces the default construction.
ParamFunction m_phi(const ParamFunction& phi,
                    const std::function<ParamFunction(const ParamFunction&)>& override_hook = {});

/// B_theta(t) = l(t)^-theta * b(t l(t)).
ParamFunction b_theta(const ParamFunction& b, double theta);

}  // namespace rispace
