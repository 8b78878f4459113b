#pragma once

/**
 * @file multiplier.hpp
 * @brief Trigonometric polynomials and bilinear Fourier multipliers on the
 * torus [0, 2pi).
 *
 * Coefficients follow c(k) = (1/2pi) \int_0^{2pi} f(x) e^{-ikx} dx and
 * synthesis f(x) = sum_k c(k) e^{ikx}; the torus carries Lebesgue measure of
 * total mass 2pi. Norms of polynomials are taken on the uniform grid of
 * `grid_size` points, which is exact for p = 2 and for every identity that only
 * involves polynomials of lower degree than the grid resolves.
 */

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rispace/core.hpp"
#include "rispace/corpus.hpp"
#include "rispace/report.hpp"

namespace rispace {

class TrigPolynomial {
public:
  TrigPolynomial() = default;
  /// Zero polynomial of degree N.
  explicit TrigPolynomial(int N);
  /// Coefficients for k = -N .. N.
  TrigPolynomial(int N, std::vector<Complex> coeffs);
  static TrigPolynomial character(int k, Complex c = 1.0);

  int degree() const { return N_; }
  /// c(k), zero outside [-N, N].
  Complex coeff(int k) const;
  void set_coeff(int k, Complex c);
  std::span<const Complex> coeffs() const { return c_; }

  Complex operator()(double x) const;
  /// Values at x_j = 2 pi j / M.
  std::vector<Complex> sample(std::size_t M) const;
  /// Inverse of `sample` for M >= 2N + 1.
  static TrigPolynomial from_samples(const std::vector<Complex>& values, int N);
  /// Degree-N truncation or zero padding.
  TrigPolynomial resized(int N) const;

  friend TrigPolynomial operator+(const TrigPolynomial& a, const TrigPolynomial& b);
  TrigPolynomial scaled(Complex s) const;

private:
  int N_ = 0;
  std::vector<Complex> c_{Complex(0.0)};
};

/// Grid used for the norms of polynomials up to this degree.
std::size_t grid_size(int degree);

/// (\int_T |f|^p)^{1/p} on the grid of `grid_size(M_degree)` points; p = inf gives the grid maximum.
double lp_norm(const TrigPolynomial& f, double p, int M_degree);
/// Samples on `grid_size(M_degree)` equal cells as a torus step function.
StepFunction to_step(const TrigPolynomial& f, int M_degree);

/// Closed-form coefficients c(-N .. N) of a step function on the torus.
std::vector<Complex> fourier_coeffs(const StepFunction& f, int N);
std::vector<Complex> fourier_coeffs(const TrigPolynomial& f, int N);

class MultiplierSymbol {
public:
  MultiplierSymbol() = default;
  /// Zero symbol on |k|, |k'| <= N.
  explicit MultiplierSymbol(int N);

  static MultiplierSymbol constant(int N, Complex c);
  /// m(k, k') = 1 / ((1 + |k|) (1 + |k'|)).
  static MultiplierSymbol decaying(int N);
  /// m(k, k') = alpha(k) beta(k'); both vectors have 2N + 1 entries.
  static MultiplierSymbol rank_one(const std::vector<Complex>& alpha, const std::vector<Complex>& beta);
  /// Rows "k,k',re,im"; an optional first line of column names, '#' comments.
  /// ConfigError with the line number on malformed input.
  static MultiplierSymbol from_csv(std::string_view text);
  static MultiplierSymbol load_csv(const std::string& path);

  int degree() const { return N_; }
  Complex operator()(int k, int kp) const;
  void set(int k, int kp, Complex c);
  /// Zero padding to degree N >= degree(); DegreeOverflow otherwise.
  MultiplierSymbol padded(int N) const;
  /// (sum |m|^p)^{1/p}; p = inf gives the largest entry.
  double lp_norm(double p) const;

private:
  int N_ = 0;
  std::vector<Complex> m_{Complex(0.0)};
};

/// A symbol for every degree N; lets suites repeat themselves at 2N.
struct SymbolFamily {
  std::string label;
  std::function<MultiplierSymbol(int)> at;
};

/// "decay", "one", "zero", or "csv:<path>" (zero padded).
SymbolFamily symbol_family(const std::string& name);

/// sum_{k,k'} c_f(k) c_g(k') m(k,k') e^{i(k+k')x}. DegreeOverflow if f or g
/// exceeds the symbol's degree.
TrigPolynomial apply_Pm(const MultiplierSymbol& m, const TrigPolynomial& f, const TrigPolynomial& g);

struct MultiplierEstimate {
  double value = 0.0;
  TrigPolynomial f;
  TrigPolynomial g;
  std::size_t evaluations = 0;
};

/// Lower estimate of sup ||P_m(f,g)||_p3 / (||f||_p1 ||g||_p2): characters at the
/// largest symbol entries, seeded random polynomials, then a coordinate ascent
/// from the best pair. InvalidArgument if budget == 0.
MultiplierEstimate estimate_multiplier_norm(const MultiplierSymbol& m, double p1, double p2, double p3,
                                            std::size_t budget, std::uint64_t seed = 7);

struct TrigPair {
  TrigPolynomial f;
  TrigPolynomial g;
  std::string tag;
};

/// Characters, a constant and seeded random polynomials whose coefficients decay
/// like 1/(1 + |k|); item i is the same function at every degree above its own.
std::vector<TrigPair> trig_corpus(int N, std::size_t size, std::uint64_t seed = 7);

struct MultiplierOptions {
  int N = 32;
  std::size_t size = 64;
  std::uint64_t seed = 7;
  unsigned threads = 1;
  /// Repeat at 2N and report the drift of the constant.
  bool refine = true;
  double drift_limit = 0.10;
  std::optional<double> claimed_constant;
  double tolerance = -1.0;
};

/// Ratios ||P_m(f,g)||_inf / (||m||_p ||f||_p ||g||_p) and
/// ||P_m(f,g)||_p' / (||m||_p ||f||_p ||g||_1); the case ratio is the larger.
/// For p <= 2 both are bounded by (2 pi)^{-2/p}, which is checked; for p > 2 the
/// empirical constant and its stability are reported.
VerificationReport check_blasco_endpoints(const SymbolFamily& m, double p, const MultiplierOptions& options = {});

/// ||P_m(f,g)||_{L_exp} / (||m||_p ||f||_p ||g||_{L^{p)}}) with its drift under
/// N -> 2N, plus the embedding and grand-Lebesgue comparisons as diagnostics.
VerificationReport check_grand_chain(const SymbolFamily& m, double p, const MultiplierOptions& options = {});

}  // namespace rispace
