#pragma once

/**
 * @file interp.hpp
 * @brief Peetre K- and J-functionals and the (theta, b, E) real interpolation
 * norms built from them.
 *
 * K(t, f) is computed over the truncation family: for a level c >= 0 the
 * function splits into its excess (|f| - c)_+ and its clamp min(|f|, c) (both
 * carrying the phase of f), and either part may go to X0. The result is an
 * upper bound for K that is exact for (L1, Linf), (L1, L1), (L1, L^q) and
 * (L^q, Linf).
 */

#include <memory>
#include <string>
#include <vector>

#include "rispace/core.hpp"
#include "rispace/spaces.hpp"
#include "rispace/varying.hpp"

namespace rispace {

struct CoupleSpec {
  SpaceSpec x0;
  SpaceSpec x1;
  std::string label() const { return "couple(" + x0.label() + ", " + x1.label() + ")"; }
};

struct NestedFunctor;

struct InterpParams {
  double theta = 0.5;
  ParamFunction weight = ParamFunction::power(0.0);
  /// Outer space on the line; ignored when `nested` is set.
  SpaceSpec outer = SpaceSpec::lebesgue(2.0);
  /// When set, the outer space is itself a K-method space F(Y0, Y1) on the line.
  std::shared_ptr<const NestedFunctor> nested;
  double T = 40.0;
  double h = 1e-3;

  std::string outer_label() const;
  std::string label() const;
};

struct NestedFunctor {
  CoupleSpec couple;
  InterpParams params;
};

/// Which part of the truncation goes to X0.
enum class SplitOrder {
  ExcessToX0,  ///< f0 = excess, f1 = clamp
  ClampToX0,   ///< f0 = clamp, f1 = excess
};

/// sign(f) (|f| - c)_+ and sign(f) min(|f|, c), on the cells of f.
StepFunction excess_part(const StepFunction& f, double c);
StepFunction clamp_part(const StepFunction& f, double c);

struct Decomposition {
  double level = 0.0;
  SplitOrder order = SplitOrder::ExcessToX0;
  double value = 0.0;  ///< ||f0||_X0 + t ||f1||_X1
};

/// Truncation-family K-functional of one function, prepared for many t.
class KFunctional {
public:
  KFunctional(const CoupleSpec& couple, const StepFunction& f);

  /// Lower envelope of the sampled truncation lines.
  double operator()(double t) const;
  /// Envelope value refined by a golden search over the level in the winning cell.
  double refined(double t) const;
  Decomposition best(double t) const;
  /// Best sampled level at t among the decompositions of the given order.
  Decomposition best(double t, SplitOrder order) const;
  /// True when the truncation family is known to attain K for this couple.
  bool exact() const { return exact_; }

  double norm_x0() const { return n0_; }
  double norm_x1() const { return n1_; }

  /// Norms of the excess and clamp of f at level c (in X0 or X1).
  double excess_norm(int space, double c) const;
  double clamp_norm(int space, double c) const;

private:
  struct Line {
    double a;  // ||f0||_X0
    double b;  // ||f1||_X1
    double c;
    SplitOrder order;
  };
  void build_envelope();
  std::size_t locate(double t) const;

  class PartNorms;

  CoupleSpec couple_;
  std::shared_ptr<const PartNorms> parts_[2];
  std::vector<double> values_;    // distinct values of f*, decreasing
  std::vector<double> measures_;  // measure of each level set
  std::vector<Line> lines_;
  std::vector<Line> hull_;
  std::vector<double> cuts_;      // hull_[i] is optimal on [cuts_[i-1], cuts_[i]]
  double n0_ = 0.0;
  double n1_ = 0.0;
  bool exact_ = false;
  bool linear_ = false;
};

double k_functional(const CoupleSpec& couple, double t, const StepFunction& f);
double j_functional(const CoupleSpec& couple, double t, const StepFunction& f);

/// Grid search over decompositions f = f0 + f1 with f1 chosen per cell from
/// {0} u {|f| values} u `levels` uniform levels (same phase as f, |f1| <= |f|).
/// Only for functions with at most 8 cells.
double k_functional_grid_search(const CoupleSpec& couple, double t, const StepFunction& f, int levels = 4);

enum class Condition { InteriorOK, Theta0OK, Theta1OK, Trivial };
std::string_view to_string(Condition c);

Condition check_conditions(const InterpParams& params);

struct KMethodResult {
  double value = 0.0;
  /// Share of the two outermost grid cells in the outer norm.
  double boundary_fraction = 0.0;
  /// Nodes t_k = -T + k h and the profile e^{-theta t} b(e^t) K(e^t, f).
  std::vector<double> nodes;
  std::vector<double> profile;
};

/// ||e^{-theta t} b(e^t) K(e^t, f)||_E on the uniform grid [-T, T] with step h,
/// each node carrying a midpoint cell of width h. TrivialSpace if
/// check_conditions says Trivial, TruncationDominant if the boundary cells
/// exceed 1% of the norm; `override_checks` skips both.
KMethodResult k_method(const CoupleSpec& couple, const InterpParams& params, const StepFunction& f,
                       bool override_checks = false);
double k_method_norm(const CoupleSpec& couple, const InterpParams& params, const StepFunction& f,
                     bool override_checks = false);
/// Same, from a prepared K-functional.
KMethodResult k_method(const KFunctional& K, const InterpParams& params, bool override_checks = false);

/// Norm of a step function on the line in the outer space of `params`.
double outer_norm(const InterpParams& params, const StepFunction& g);

/// sup_k profile(t_k) / norm, with 0/0 = 0.
double pointwise_bound_ratio(const CoupleSpec& couple, const InterpParams& params, const StepFunction& f);

/// f = sum_i u_i with u_i attached to the node t_i = i H.
struct Representation {
  double H = 0.0;
  int first_index = 0;
  std::vector<StepFunction> pieces;
  double residual = 0.0;
  SplitOrder order = SplitOrder::ExcessToX0;

  double node(std::size_t i) const { return (first_index + static_cast<int>(i)) * H; }
};

/// Layer decomposition of f between the optimal truncation levels at
/// consecutive half-node scales e^{t_i +- H/2}; the outermost pieces absorb the
/// remainders so the pieces sum to f. RepresentationFailed if the residual
/// exceeds 1e-8 in X0 + X1.
Representation build_representation(const CoupleSpec& couple, const StepFunction& f, double T,
                                    double H = 0.6931471805599453);

struct JMethodResult {
  double value = 0.0;
  Representation representation;
};

/// Upper bound for ||f||^J: the representation above read as the continuum
/// u(e^t) = u_i / H on [t_i - H/2, t_i + H/2), with the weighted J profile
/// taken at its larger endpoint value on every grid cell of width h.
JMethodResult j_method_upper(const CoupleSpec& couple, const InterpParams& params, const StepFunction& f,
                             double H = 0.6931471805599453);
double j_method_norm_upper(const CoupleSpec& couple, const InterpParams& params, const StepFunction& f,
                           double H = 0.6931471805599453);

/// Weighted J profile of a representation, as a step function on the line.
StepFunction j_profile(const CoupleSpec& couple, const InterpParams& params, const Representation& rep);

}  // namespace rispace
