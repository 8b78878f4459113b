#pragma once

/**
 * @file core.hpp
 * @brief Exact calculus of finitely supported step functions.
 *
 * A StepFunction is a finite list of cells [x_i, x_{i+1}) with one (possibly
 * complex) value per cell and zero elsewhere. Rearrangement, distribution
 * functions and integrals of step functions are exact; convolution of two step
 * functions is carried exactly as a PiecewiseLinear.
 *
 * Measure conventions:
 *   RealLine, HalfLine  Lebesgue measure
 *   Torus               Lebesgue measure on [0, 2pi), total mass 2pi
 *   Integers            counting measure; breakpoints are integers and the cell
 *                       [n, m) holds the m - n points n, ..., m - 1
 */

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace rispace {

using Complex = std::complex<double>;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

enum class Domain { RealLine, HalfLine, Torus, Integers };

std::string_view to_string(Domain d);
Domain domain_from_string(std::string_view name);

class StepFunction {
public:
  /// The zero function on the real line.
  StepFunction() = default;
  explicit StepFunction(Domain d) : domain_(d) {}
  StepFunction(Domain d, std::vector<double> breakpoints, std::vector<Complex> values);

  static StepFunction from_real(Domain d, std::vector<double> breakpoints,
                                std::vector<double> values);
  static StepFunction indicator(Domain d, double a, double b, Complex c = 1.0);

  Domain domain() const { return domain_; }
  std::span<const double> breakpoints() const { return x_; }
  std::span<const Complex> values() const { return v_; }
  std::size_t cell_count() const { return v_.size(); }
  double cell_measure(std::size_t i) const { return x_[i + 1] - x_[i]; }
  bool is_zero() const { return v_.empty(); }
  bool is_real() const;

  /// Point evaluation; Torus arguments are reduced mod 2pi.
  Complex operator()(double x) const;

  double support_measure() const;
  double sup_abs() const;

  StepFunction scaled(Complex c) const;
  /// Pointwise |f| as a real step function.
  StepFunction abs() const;
  /// x -> f(x - h). Torus shifts wrap around; Integers require integral h.
  StepFunction translated(double h) const;

  friend StepFunction operator+(const StepFunction& a, const StepFunction& b);
  friend StepFunction operator-(const StepFunction& a, const StepFunction& b);
  /// Pointwise product.
  friend StepFunction operator*(const StepFunction& a, const StepFunction& b);

private:
  void canonicalize();

  Domain domain_ = Domain::RealLine;
  std::vector<double> x_;
  std::vector<Complex> v_;
};

/// Continuous-or-not piecewise affine function: cell i runs over
/// [x_i, x_{i+1}) and interpolates linearly from left_i to right_i.
class PiecewiseLinear {
public:
  PiecewiseLinear() = default;
  explicit PiecewiseLinear(Domain d) : domain_(d) {}
  PiecewiseLinear(Domain d, std::vector<double> breakpoints, std::vector<Complex> left,
                  std::vector<Complex> right);
  /// Continuous interpolant through (knots[i], values[i]).
  static PiecewiseLinear continuous(Domain d, std::vector<double> knots,
                                    std::vector<Complex> values);
  static PiecewiseLinear from_step(const StepFunction& f);

  Domain domain() const { return domain_; }
  std::span<const double> breakpoints() const { return x_; }
  std::span<const Complex> left_values() const { return left_; }
  std::span<const Complex> right_values() const { return right_; }
  std::size_t cell_count() const { return left_.size(); }
  bool is_zero() const;

  Complex operator()(double x) const;
  double sup_abs() const;
  /// \int |h|^p, exact for real data; complex cells use 32-point Gauss panels.
  double lp_integral(double p) const;
  /// \int h over the domain.
  Complex integral() const;

  PiecewiseLinear scaled(Complex c) const;
  friend PiecewiseLinear operator+(const PiecewiseLinear& a, const PiecewiseLinear& b);

  /// Cell averages on each cell split into `refine` equal parts.
  StepFunction to_step(int refine = 2) const;

private:
  Domain domain_ = Domain::RealLine;
  std::vector<double> x_;
  std::vector<Complex> left_;
  std::vector<Complex> right_;
};

using ConvolutionResult = std::variant<PiecewiseLinear, StepFunction>;

double integrate(const StepFunction& f);
Complex integrate_complex(const StepFunction& f);
/// \int |f|^p; p = infinity is not accepted here (use sup_abs).
double lp_integral(const StepFunction& f, double p);
double lp_norm(const StepFunction& f, double p);
double lp_norm(const PiecewiseLinear& h, double p);

/// mu{x : |f(x)| > lambda}.
double distribution_function(const StepFunction& f, double lambda);

/// f* on the half line: nonincreasing, right-continuous, equimeasurable with |f|.
StepFunction decreasing_rearrangement(const StepFunction& f);

/// f**(t) = (1/t) \int_0^t f*(s) ds, carried exactly.
class MaximalFunction {
public:
  explicit MaximalFunction(const StepFunction& f);

  double operator()(double t) const;
  /// \int_0^t f*.
  double primitive(double t) const;
  /// \int_a^b f**(t) dt in closed form.
  double integral(double a, double b) const;
  /// \int_a^b f**(t)^p dt by Gauss panels on each cell of f*.
  double integral_pow(double a, double b, double p) const;
  /// Cell averages of f** on a logarithmic grid spanning [t_min, t_max].
  StepFunction to_step(double t_min, double t_max, int cells_per_octave = 8) const;

  std::span<const double> nodes() const { return s_; }
  const StepFunction& rearrangement() const { return fstar_; }

private:
  StepFunction fstar_;
  std::vector<double> s_;   // breakpoints of f*, starting at 0
  std::vector<double> c_;   // values of f*
  std::vector<double> F_;   // primitive at s_
};

/// f * g. PiecewiseLinear on RealLine/Torus, StepFunction on Integers.
ConvolutionResult convolve(const StepFunction& f, const StepFunction& g);
/// RealLine/Torus only.
PiecewiseLinear convolve_continuous(const StepFunction& f, const StepFunction& g);

}  // namespace rispace
