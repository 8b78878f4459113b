#pragma once

/**
 * @file bilinear.hpp
 * @brief Bilinear interpolation checks on concrete operators: convolution on
 * the torus or the line, and pointwise multiplication.
 *
 * The functor F in the target spaces is a K-method on the t-line, applied to
 * couples of spaces there; `BilinearOptions::functor` carries its parameters.
 */

#include <string>
#include <vector>

#include "rispace/corpus.hpp"
#include "rispace/interp.hpp"
#include "rispace/report.hpp"
#include "rispace/young.hpp"

namespace rispace {

struct BilinearOpSpec {
  enum class Kind { Convolution, PointwiseProduct };
  Kind kind = Kind::Convolution;
  Domain domain = Domain::Torus;
  CoupleSpec A;
  CoupleSpec B;
  CoupleSpec C;
  double k0 = 1.0;
  double k1 = 1.0;

  /// max{k0, k1}.
  double norm_bound() const { return std::max(k0, k1); }
  std::string label() const;

  /// T(a, b) as a step function; convolutions are resampled `resample` cells per segment.
  StepFunction apply(const StepFunction& a, const StepFunction& b, int resample = 2) const;
  /// ||T(a, b)||_{C_i}, exact on piecewise-linear convolutions.
  double target_norm(int i, const StepFunction& a, const StepFunction& b) const;
};

/// Convolution on the torus, A = (L1, Linf), B = (L1, L1), C = (L1, Linf), k0 = k1 = 1.
BilinearOpSpec conv_torus_op();
/// Convolution on the line with the same couples.
BilinearOpSpec conv_line_op();
/// Multiplication on the torus, A = (Linf, Linf), B = C = (L1, Linf), k0 = k1 = 1.
BilinearOpSpec product_op();
/// "conv-torus", "conv-line" or "product"; ConfigError otherwise.
BilinearOpSpec bilinear_op_from_name(const std::string& name);

struct EndpointCertificate {
  double ratio0 = 0.0;  ///< max ||T(a,b)||_{C0} / (||a||_{A0} ||b||_{B0})
  double ratio1 = 0.0;
  std::size_t cases = 0;
  bool ok = false;
};

/// Endpoint ratios over `corpus`; ok when ratio_i <= k_i (1 + 1e-6).
EndpointCertificate certify_endpoints(const BilinearOpSpec& op, const std::vector<FunctionPair>& corpus);
/// The structured pairs plus 16 seeded random pairs on the operator's domain.
std::vector<FunctionPair> smoke_corpus(const BilinearOpSpec& op);

struct BilinearOptions {
  SuiteOptions suite;
  /// Parameters of F on the t-line: theta, weight and outer space of the K-method.
  InterpParams functor{0.5, ParamFunction::power(0.0), SpaceSpec::linf(), nullptr, 20.0, 0.02};
  /// Window and step of the outer t-grid.
  double T = 20.0;
  double h = 0.02;
  /// Node spacing of the representations.
  double H = 0.6931471805599453;
  /// Relative slack on max{k0, k1}.
  double slack = 0.10;
};

/// ||T(a,b)||_{C^K(theta, phi, F(E, Linf))} against max{k0,k1} times the J bound of a in
/// A^J(theta, m_phi, E) and the K norm of b in B^K(theta, phi, F(L1, E')).
/// EndpointCertificateFailed if the smoke certificate fails.
VerificationReport verify_thm35(const BilinearOpSpec& op, double theta, const ParamFunction& phi,
                                const SpaceSpec& E, const std::vector<FunctionPair>& corpus,
                                const BilinearOptions& options = {});

/// Output representation w_m = sum_{i+j=m} T(u_i, v_j) of the input
/// representations, read as the continuum w(e^y) = sum_m w_m Lambda((y - mH)/H) / H
/// with the unit hat Lambda.
struct OutputRepresentation {
  double H = 0.0;
  int first_index = 0;
  std::vector<PiecewiseLinear> terms;
  double node(std::size_t m) const { return (first_index + static_cast<int>(m)) * H; }
};

OutputRepresentation combine_representations(const BilinearOpSpec& op, const Representation& u,
                                             const Representation& v);

/// e^{-theta y} phi(e^y) J(e^y, w(e^y); C) sampled on cells of width H / 16.
StepFunction output_j_profile(const BilinearOpSpec& op, double theta, const ParamFunction& phi,
                              const OutputRepresentation& w);

/// Output J bound of the constructive core against max{k0,k1} times the J bounds
/// of a in A^J(theta, phi, E) and of b in B^J(theta, m_phi, F(L1, E')).
VerificationReport verify_thm36(const BilinearOpSpec& op, double theta, const ParamFunction& phi,
                                const SpaceSpec& E, const std::vector<FunctionPair>& corpus,
                                const BilinearOptions& options = {});

struct SingleTermCheck {
  /// Nonzero output terms; one when the inputs are single terms.
  std::size_t nonzero_terms = 0;
  /// max |computed - hand formula| / peak over the output profile nodes.
  double max_error = 0.0;
  /// J(e^y, w) / (k J(e^x, u) J(e^{y-x}, v)) at the peak y = x + (y - x).
  double peak_ratio = 0.0;
};

/// a = u at node i, b = v at node j: the output is the single band
/// T(u, v) Lambda((y - (i+j)H)/H) / H, checked against its closed form.
SingleTermCheck single_term_check(const BilinearOpSpec& op, const StepFunction& u, int i, const StepFunction& v,
                                  int j, double H = 0.6931471805599453);

}  // namespace rispace
