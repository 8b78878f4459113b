#pragma once

/**
 * @file young_function.hpp
 * @brief Young functions (convex, increasing, vanishing at 0) and their calculus:
 * inverses, Legendre conjugates, and the tables built from inverse formulas.
 */

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "rispace/varying.hpp"

namespace rispace {

class YoungFunction {
public:
  enum class Family { Power, PowerLog, ExpMinusOne, TLogT, Table };

  YoungFunction() = default;  // phi(t) = t

  /// coeff * t^p, p >= 1.
  static YoungFunction power(double p, double coeff = 1.0);
  /// t^p (1 + log(1 + t))^alpha, which behaves like t^p l(t)^alpha for large t.
  static YoungFunction power_log(double p, double alpha);
  static YoungFunction exp_minus_one();
  /// t log(e + t).
  static YoungFunction tlogt();
  /// Log-log interpolation through (t_k, phi_k), both strictly increasing and
  /// positive. phi vanishes on [0, zero_below]; between zero_below and t_0 it is
  /// linear; above `cap` (if finite) it is +inf; otherwise the end slopes extend.
  static YoungFunction table(std::vector<double> t, std::vector<double> phi, double zero_below = 0.0,
                             double cap = std::numeric_limits<double>::infinity(),
                             std::string label = "table");

  double operator()(double t) const;
  /// phi^{-1}(s) = sup{t >= 0 : phi(t) <= s}; exact for tables.
  double inverse(double s) const;

  Family family() const { return family_; }
  double p() const { return p_; }
  double coeff() const { return coeff_; }
  double alpha() const { return alpha_; }
  std::string label() const;

  std::size_t knot_count() const { return lt_.size(); }
  double zero_below() const { return zero_below_; }
  double cap() const { return cap_; }

private:
  Family family_ = Family::Power;
  double p_ = 1.0;
  double coeff_ = 1.0;
  double alpha_ = 0.0;
  std::vector<double> lt_;  // log t_k
  std::vector<double> lv_;  // log phi_k
  double zero_below_ = 0.0;
  double cap_ = std::numeric_limits<double>::infinity();
  std::string label_;
};

/// psi(s) = sup_{t >= 0} (s t - phi(t)), tabulated at 100 points per decade on
/// [1e-15, 1e15]. Where the supremum escapes to infinity the table is capped.
YoungFunction complementary_young(const YoungFunction& phi);

struct YoungPair {
  YoungFunction phi;
  YoungFunction psi;
};

/// phi^{-1} = (phi0^{-1})^{1-theta} and psi^{-1}(t) = t (psi0^{-1}(t)/t)^theta with
/// psi0 the complement of phi0. NonMonotoneInverse if a table cannot be inverted.
YoungPair young_from_theta(const YoungFunction& phi0, double theta);

/// Which couple the parameter function rho acts on.
enum class RhoCouple {
  /// (L^phi0, L^inf): phi^{-1}(s) = phi0^{-1}(s) rho(1/phi0^{-1}(s)).
  WithLinfty,
  /// (L^1, L^phi0): phi^{-1}(s) = s rho(phi0^{-1}(s)/s).
  WithL1,
};

struct RhoHypotheses {
  /// rho nondecreasing and rho(t)/t nonincreasing on the dyadic grid.
  bool pseudo_concave = false;
  /// s_rho(t)/max(1, t) small and still decreasing at both ends of the grid.
  bool little_o = false;
  bool verified() const { return pseudo_concave && little_o; }
};

RhoHypotheses check_rho_hypotheses(const ParamFunction& rho);

/// Orlicz space produced from (phi0, rho) by the inverse formula of `couple`.
YoungFunction orlicz_from_rho(const YoungFunction& phi0, const ParamFunction& rho,
                              RhoCouple couple = RhoCouple::WithL1);

/// Builds a table from samples of an inverse function u -> phi^{-1}(u) on the
/// default grid (200 points per decade over [1e-15, 1e15]).
YoungFunction young_from_inverse(const std::function<double(double)>& inverse, const std::string& label);

}  // namespace rispace
