#include <doctest.h>

#include "rispace/bilinear.hpp"
#include "rispace/error.hpp"

using namespace rispace;
using doctest::Approx;

TEST_CASE("operator factories") {
  CHECK(bilinear_op_from_name("conv-torus").domain == Domain::Torus);
  CHECK(bilinear_op_from_name("conv-line").domain == Domain::RealLine);
  CHECK(bilinear_op_from_name("product").kind == BilinearOpSpec::Kind::PointwiseProduct);
  try {
    bilinear_op_from_name("sum");
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ConfigError);
  }
}

TEST_CASE("endpoint certificates of the built-in operators") {
  for (const auto& op : {conv_torus_op(), conv_line_op(), product_op()}) {
    const auto c = certify_endpoints(op, smoke_corpus(op));
    CHECK(c.ok);
    CHECK(c.ratio0 <= 1 + 1e-6);
    CHECK(c.ratio1 <= 1 + 1e-6);
  }
}

TEST_CASE("a wrong endpoint bound fails the certificate") {
  auto op = conv_torus_op();
  op.k0 = 0.25;
  CHECK_FALSE(certify_endpoints(op, smoke_corpus(op)).ok);
}

TEST_CASE("target norms of the torus convolution are exact") {
  const auto op = conv_torus_op();
  const auto a = StepFunction::indicator(Domain::Torus, 0, 1);
  const auto b = StepFunction::indicator(Domain::Torus, 0, 2);
  // ||a * b||_1 = ||a||_1 ||b||_1 for nonnegative data; the sup is min(|a|, |b|) = 1.
  CHECK(op.target_norm(0, a, b) == Approx(2.0));
  CHECK(op.target_norm(1, a, b) == Approx(1.0));
}

TEST_CASE("combined representation sums to T(a, b)") {
  const auto op = conv_torus_op();
  const auto a = StepFunction::from_real(Domain::Torus, {0, 0.5, 2}, {3, 1});
  const auto b = StepFunction::from_real(Domain::Torus, {1, 1.5, 4}, {2, 0.5});
  const auto u = build_representation(op.A, a, 20);
  const auto v = build_representation(op.B, b, 20);
  const auto w = combine_representations(op, u, v);
  PiecewiseLinear sum(Domain::Torus);
  for (const auto& t : w.terms) sum = sum + t;
  const auto exact = convolve_continuous(a, b);
  for (double x = 0.05; x < kTwoPi; x += 0.37) CHECK(std::abs(sum(x) - exact(x)) < 1e-9);
}

TEST_CASE("single-term representation") {
  const auto op = conv_torus_op();
  const auto u = StepFunction::indicator(Domain::Torus, 0, 1);
  const auto v = StepFunction::indicator(Domain::Torus, 2, 2.5, 2.0);
  const auto s = single_term_check(op, u, 1, v, -2);
  CHECK(s.nonzero_terms == 1);
  CHECK(s.max_error <= 1e-9);
  CHECK(s.peak_ratio > 0);
  CHECK(s.peak_ratio <= op.norm_bound() * (1 + 1e-9));
}
