#include <doctest.h>

#include <cmath>
#include <numbers>

#include "rispace/error.hpp"
#include "rispace/multiplier.hpp"
#include "rispace/spaces.hpp"

using namespace rispace;
using doctest::Approx;

namespace {
const Complex I(0.0, 1.0);

bool close(Complex a, Complex b, double tol = 1e-12) { return std::abs(a - b) <= tol; }

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}
}  // namespace

TEST_CASE("trigonometric polynomials") {
  const auto e3 = TrigPolynomial::character(3, 2.0);
  CHECK(e3.degree() == 3);
  CHECK(close(e3(0.7), 2.0 * std::exp(I * 2.1)));
  auto f = TrigPolynomial(2);
  f.set_coeff(-2, 1.0);
  f.set_coeff(1, I);
  CHECK(close(f(1.3), std::exp(-2.0 * I * 1.3) + I * std::exp(I * 1.3)));
  CHECK(code_of([&] { f.set_coeff(3, 1.0); }) == ErrorCode::DegreeOverflow);
  const auto g = TrigPolynomial::from_samples(f.resized(4).sample(16), 4);
  for (int k = -4; k <= 4; ++k) CHECK(close(g.coeff(k), f.coeff(k), 1e-14));
}

TEST_CASE("norms on the torus carry the measure 2 pi") {
  const auto e = TrigPolynomial::character(5);
  CHECK(lp_norm(e, 2, 5) == Approx(std::sqrt(2 * std::numbers::pi)));
  CHECK(lp_norm(e, 1, 5) == Approx(2 * std::numbers::pi));
  CHECK(lp_norm(e, kInfinity, 5) == Approx(1.0));
}

TEST_CASE("Parseval") {
  TrigPolynomial f(3, {1.0, I, 0.5, -2.0, 0.0, 3.0, -I});
  double s = 0;
  for (int k = -3; k <= 3; ++k) s += std::norm(f.coeff(k));
  CHECK(lp_norm(f, 2, 3) * lp_norm(f, 2, 3) == Approx(2 * std::numbers::pi * s).epsilon(1e-12));
}

TEST_CASE("Fourier coefficients of a half-period indicator") {
  const auto c = fourier_coeffs(StepFunction::indicator(Domain::Torus, 0, std::numbers::pi), 2);
  // c_k = (1/2pi) \int f e^{-ikx}; index k + N.
  CHECK(close(c[2], 0.5));
  CHECK(close(c[3], -I / std::numbers::pi));
  CHECK(close(c[4], 0.0));
}

TEST_CASE("the constant symbol multiplies") {
  const auto m = MultiplierSymbol::constant(4, 1.0);
  const auto f = TrigPolynomial::character(1, 2.0) + TrigPolynomial::character(-3);
  const auto g = TrigPolynomial::character(2, I);
  const auto h = apply_Pm(m, f, g);
  CHECK(h.degree() == 8);
  for (double x : {0.1, 1.7, 4.0}) CHECK(close(h(x), f(x) * g(x)));
}

TEST_CASE("multiplier symbol entries and norms") {
  const auto m = MultiplierSymbol::constant(1, 1.0);
  CHECK(m.lp_norm(2) == Approx(3.0));
  CHECK(m.lp_norm(1) == Approx(9.0));
  const auto d = MultiplierSymbol::decaying(2);
  CHECK(close(d(1, -2), 1.0 / 6.0));
  CHECK(code_of([&] { apply_Pm(m, TrigPolynomial::character(2), TrigPolynomial(0)); }) == ErrorCode::DegreeOverflow);
  CHECK(code_of([&] { d.padded(1); }) == ErrorCode::DegreeOverflow);
  CHECK(close(d.padded(5)(1, -2), 1.0 / 6.0));
  CHECK(close(d.padded(5)(5, 5), 0.0));
}

TEST_CASE("symbols from CSV") {
  const auto m = MultiplierSymbol::from_csv("k,kp,re,im\n# comment\n0,0,1,0\n1,-1,0.5,0.25\n");
  CHECK(close(m(0, 0), 1.0));
  CHECK(close(m(1, -1), Complex(0.5, 0.25)));
  CHECK(close(m(-1, 1), 0.0));
  try {
    MultiplierSymbol::from_csv("0,0,1,0\n1,x,2,0\n");
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ConfigError);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("norm estimate attains the rank-one bound") {
  // P_m(f, g) = (A f)(B g) with diagonal A, B; for (2, 2, 1) Cauchy-Schwarz gives max|alpha| max|beta|.
  const std::vector<Complex> alpha{0.2, 1.5, -0.4}, beta{0.3, 0.1, 2.0};
  const auto m = MultiplierSymbol::rank_one(alpha, beta);
  const auto e = estimate_multiplier_norm(m, 2, 2, 1, 64);
  CHECK(e.value == Approx(3.0).epsilon(1e-9));
  CHECK(code_of([&] { estimate_multiplier_norm(m, 2, 2, 1, 0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("trig corpus is nested across degrees") {
  const auto a = trig_corpus(8, 10), b = trig_corpus(16, 10);
  REQUIRE(a.size() == 10);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].tag == b[i].tag);
    for (int k = -8; k <= 8; ++k) CHECK(close(a[i].f.coeff(k), b[i].f.coeff(k)));
  }
}

TEST_CASE("symbol families") {
  CHECK(symbol_family("one").at(3).lp_norm(1) == Approx(49.0));
  CHECK(code_of([] { symbol_family("nope"); }) == ErrorCode::ConfigError);
}

TEST_CASE("Blasco endpoint suite at p = 2") {
  MultiplierOptions o;
  o.N = 8;
  o.size = 16;
  const auto r = check_blasco_endpoints(symbol_family("decay"), 2, o);
  CHECK(r.verdict == Verdict::ConstantExactOK);
  CHECK(r.max_ratio <= 1.0 / (2 * std::numbers::pi) * (1 + 1e-9));
}
