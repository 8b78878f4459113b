#pragma once

/**
 * @file spaces.hpp
 * @brief Norms of rearrangement-invariant spaces evaluated on step functions.
 *
 * Every norm here depends on f only through f*, which is exact for step
 * functions. The torus spaces (L log L, L_exp, grand Lebesgue) accept functions
 * on the torus, or rearrangements on the half line supported in [0, 2pi].
 */

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>

#include "rispace/core.hpp"
#include "rispace/varying.hpp"
#include "rispace/young_function.hpp"

namespace rispace {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Truncation window for integrals against dt/t on (0, inf).
struct LogWindow {
  double t_min = 0x1p-40;
  double t_max = 0x1p40;
};

class SpaceSpec {
public:
  enum class Family {
    Lebesgue,
    Lorentz,
    LorentzZygmund,
    LorentzKaramata,
    OrliczLux,
    OrliczAmemiya,
    LlogL,
    Lexp,
    GrandLebesgue,
  };

  SpaceSpec() = default;

  /// p in [1, inf]; pass kInfinity for L^inf.
  static SpaceSpec lebesgue(double p);
  static SpaceSpec linf() { return lebesgue(kInfinity); }
  /// || t^{1/p} f*(t) ||_{L^q(dt/t)}; q may be infinite.
  static SpaceSpec lorentz(double p, double q);
  /// || t^{1/p} l(t)^alpha f*(t) ||_{L^q(dt/t)}.
  static SpaceSpec lorentz_zygmund(double p, double q, double alpha);
  /// || t^{1/p} b(t) f*(t) ||_{E~}, E~ being E under the measure dt/t; p may be infinite.
  static SpaceSpec karamata(double p, ParamFunction b, SpaceSpec outer, LogWindow window = {});
  static SpaceSpec orlicz_lux(YoungFunction phi);
  static SpaceSpec orlicz_amemiya(YoungFunction phi);
  static SpaceSpec llogl();
  static SpaceSpec lexp();
  static SpaceSpec grand(double p);

  Family family() const { return family_; }
  double p() const { return p_; }
  double q() const { return q_; }
  double alpha() const { return alpha_; }
  const ParamFunction& weight() const { return b_; }
  const SpaceSpec& outer() const { return *outer_; }
  const YoungFunction& young() const { return phi_; }
  const LogWindow& window() const { return window_; }

  bool is_lebesgue(double p) const { return family_ == Family::Lebesgue && p_ == p; }
  bool is_linf() const { return is_lebesgue(kInfinity); }
  bool torus_only() const;
  std::string label() const;

private:
  Family family_ = Family::Lebesgue;
  double p_ = 1.0;
  double q_ = 1.0;
  double alpha_ = 0.0;
  ParamFunction b_;
  std::shared_ptr<const SpaceSpec> outer_;
  YoungFunction phi_;
  LogWindow window_;
};

double norm(const SpaceSpec& space, const StepFunction& f);
/// Lebesgue norms are exact, Orlicz modulars use Gauss quadrature on each
/// affine cell; every other family is evaluated on to_step(refine).
double norm(const SpaceSpec& space, const PiecewiseLinear& h, int refine = 2);

/// Norm of a nonnegative nonincreasing step function on the half line, taken as
/// its own rearrangement (no sorting).
double norm_of_rearrangement(const SpaceSpec& space, const StepFunction& fstar);

double modular(const YoungFunction& phi, const StepFunction& f, double lambda);
double luxemburg_norm(const YoungFunction& phi, const StepFunction& f);
double luxemburg_norm(const YoungFunction& phi, const PiecewiseLinear& h);
double amemiya_norm(const YoungFunction& phi, const StepFunction& f);
double amemiya_norm(const YoungFunction& phi, const PiecewiseLinear& h);

double lorentz_norm(double p, double q, const StepFunction& f);
double karamata_norm(double p, const ParamFunction& b, const SpaceSpec& outer, const StepFunction& f,
                     LogWindow window = {});
/// TrivialSpace unless ||b||_{E~(0,1)} stays finite under window doubling (p = inf only).
void check_karamata_admissible(const SpaceSpec& space);

/// \int_0^{2pi} f**.
double llogl_norm(const StepFunction& f);
/// sup_{0 < t <= 2pi} f*(t) / (1 + log(2pi/t)).
double lexp_norm(const StepFunction& f);
/// sup_{0 < t < 2pi} l(t)^{-1/p} (\int_t^{2pi} f**^p)^{1/p}, scanned on the
/// breakpoints of f* plus 1024 logarithmic points.
double grand_lebesgue_norm(double p, const StepFunction& f);

/// E' when it has a closed form: L^p -> L^{p'}, L log L <-> L_exp (equivalent norms).
std::optional<SpaceSpec> associate_space(const SpaceSpec& space);

struct AssociateEstimate {
  double value = 0.0;
  /// True when `value` is the exact associate norm.
  bool exact = false;
  /// True when the closed form is only an equivalent norm.
  bool equivalence_only = false;
  /// The nonincreasing f (on g*'s cells) achieving the lower bound.
  StepFunction extremal{Domain::HalfLine};
};

struct AssociateOptions {
  int restarts = 64;
  int iterations = 150;
  std::uint64_t seed = 7;
  /// Force the ascent even when a closed form exists.
  bool force_search = false;
};

/// sup{ \int f* g* : ||f||_E <= 1 }. Closed forms when available; otherwise a
/// projected-gradient lower bound over nonincreasing f on the cells of g*.
AssociateEstimate associate_norm(const SpaceSpec& space, const StepFunction& g,
                                 const AssociateOptions& options = {});

}  // namespace rispace
