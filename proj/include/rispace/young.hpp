#pragma once

/**
 * @file young.hpp
 * @brief Suites checking Young-type convolution inequalities on corpora of
 * step-function pairs.
 *
 * Constant-exact suites compare every ratio with a declared constant.
 * Constant-robust suites report the largest ratio together with its drift under
 * one grid refinement (h/2, 2T, twice finer resampling of the convolution).
 */

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rispace/corpus.hpp"
#include "rispace/interp.hpp"
#include "rispace/report.hpp"
#include "rispace/spaces.hpp"
#include "rispace/young_function.hpp"

namespace rispace {

struct SuiteOptions {
  unsigned threads = 1;
  /// Replaces the suite's declared constant (e.g. to plant a false claim).
  std::optional<double> claimed_constant;
  /// Relative tolerance on the constant; negative means the suite default.
  double tolerance = -1.0;
  /// Evaluate the refined grid as well.
  bool refine = true;
  /// Cells per convolution segment when a piecewise-linear result is resampled.
  int resample = 2;
  /// Associate-norm ascent for spaces without a closed-form dual.
  AssociateOptions associate{8, 60, 7, false};
};

/// ||f * g||_r <= ||f||_p ||g||_q with constant 1. ExponentMismatch unless
/// 1/p + 1/q = 1 + 1/r within 1e-12.
VerificationReport verify_classical_young(double p, double q, double r, const std::vector<FunctionPair>& corpus,
                                          const SuiteOptions& options = {});

/// ||f * g||_E <= ||f||_E ||g||_1 and ||f * g||_inf <= ||f||_E ||g||_E'.
VerificationReport verify_conv_endpoints(const SpaceSpec& E, const std::vector<FunctionPair>& corpus,
                                         const SuiteOptions& options = {});

/// ||f * g||_{K(E, Linf)} <= ||f||_E ||g||_{K(L1, E')} with the K-method of `params`.
VerificationReport verify_thm21(const SpaceSpec& E, const InterpParams& params,
                                const std::vector<FunctionPair>& corpus, const SuiteOptions& options = {});

/// Orlicz form: phi, psi from young_from_theta(phi0, theta); Luxemburg gauge
/// on the left and on f, Amemiya gauge on g. Constant 1, tolerance 1e-4.
VerificationReport verify_orlicz_young(const YoungFunction& phi0, double theta,
                                       const std::vector<FunctionPair>& corpus, const SuiteOptions& options = {});

/// Parameter-function form: the left space from (L^phi0, Linf), the right space
/// from (L1, L^psi0) with psi0 the complement of phi0. Conditional when the
/// index or rho hypotheses cannot be confirmed on the grid.
VerificationReport verify_gustavsson_peetre(const YoungFunction& phi0, const ParamFunction& rho,
                                            const std::vector<FunctionPair>& corpus,
                                            const SuiteOptions& options = {});

/// Torus: K-method (theta, 1, Linf) over (L log L, Linf) on the left, over
/// (L1, L_exp) for g on the right, times ||f||_{L log L}.
VerificationReport verify_torus_zygmund(double theta, const InterpParams& grid,
                                        const std::vector<FunctionPair>& corpus, const SuiteOptions& options = {});

/// Torus: ||f * g||_{L_{1/(1-theta), B, F}} against ||f||_{L log L} ||g||_{L_{q, B, E}},
/// B(t) = l(t)^-theta b(t l(t)).
VerificationReport verify_karamata_young(double theta, const ParamFunction& b, double q, const SpaceSpec& E,
                                         const SpaceSpec& F, const std::vector<FunctionPair>& corpus,
                                         const SuiteOptions& options = {});

/// The computable Karamata parts of the theta = 0 and theta = 1 endpoint
/// estimates; verdict always Conditional.
VerificationReport verify_karamata_theta0(const ParamFunction& b, const SpaceSpec& F,
                                          const std::vector<FunctionPair>& corpus, const SuiteOptions& options = {});
VerificationReport verify_karamata_theta1(const ParamFunction& b, const SpaceSpec& F,
                                          const std::vector<FunctionPair>& corpus, const SuiteOptions& options = {});

/// Both sides of an inequality as functions of a pair.
struct InequalityInstance {
  std::string label;
  std::function<std::pair<double, double>(const StepFunction&, const StepFunction&)> sides;
  std::vector<FunctionPair> corpus;
};

InequalityInstance classical_young_instance(double p, double q, double r, std::vector<FunctionPair> corpus);

struct ExtremalResult {
  double best_ratio = 0.0;
  FunctionPair pair;
  std::size_t evaluations = 0;
};

/// Coordinate search over cell values and interior breakpoints of the corpus
/// argmax; `budget` bounds the number of ratio evaluations. The ratio never
/// decreases. InvalidArgument if budget == 0.
ExtremalResult extremal_search(const InequalityInstance& instance, std::size_t budget, std::uint64_t seed = 7);

}  // namespace rispace
