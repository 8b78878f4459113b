#include <doctest.h>

#include <cmath>

#include "rispace/core.hpp"
#include "rispace/corpus.hpp"
#include "rispace/error.hpp"
#include "rispace/report.hpp"
#include "rispace/serialize.hpp"
#include "rispace/spaces.hpp"

using namespace rispace;
using doctest::Approx;

namespace {
// 2 on [0,1), 1 on [1,3).
StepFunction two_level() { return StepFunction::from_real(Domain::RealLine, {0, 1, 3}, {2, 1}); }
}  // namespace

TEST_CASE("step function basics") {
  const auto f = two_level();
  CHECK(f.cell_count() == 2);
  CHECK(f.support_measure() == Approx(3.0));
  CHECK(f.sup_abs() == Approx(2.0));
  CHECK(integrate(f) == Approx(4.0));
  CHECK(lp_integral(f, 2) == Approx(6.0));
  CHECK(lp_norm(f, 2) == Approx(std::sqrt(6.0)));
  CHECK(std::abs(f(0.5) - Complex(2.0)) < 1e-15);
  CHECK(std::abs(f(5.0)) == 0.0);
}

TEST_CASE("malformed step functions are rejected") {
  CHECK_THROWS_AS(StepFunction::from_real(Domain::RealLine, {0, 1}, {1, 2}), Error);
  CHECK_THROWS_AS(StepFunction::from_real(Domain::RealLine, {1, 0}, {1}), Error);
}

TEST_CASE("distribution function and rearrangement") {
  const auto f = two_level();
  CHECK(distribution_function(f, 1.5) == Approx(1.0));
  CHECK(distribution_function(f, 0.5) == Approx(3.0));
  CHECK(distribution_function(f, 2.0) == Approx(0.0));

  // Values listed out of order: f* must sort them.
  const auto g = StepFunction::from_real(Domain::RealLine, {0, 2, 3, 7}, {1, 5, -3});
  const auto gs = decreasing_rearrangement(g);
  CHECK(std::abs(gs(0.5) - Complex(5.0)) < 1e-14);
  CHECK(std::abs(gs(2.0) - Complex(3.0)) < 1e-14);
  CHECK(std::abs(gs(6.0) - Complex(1.0)) < 1e-14);
  CHECK(std::abs(gs(8.0)) == 0.0);
  CHECK(lp_integral(gs, 3) == Approx(lp_integral(g, 3)).epsilon(1e-13));
}

TEST_CASE("maximal function") {
  const MaximalFunction m(StepFunction::indicator(Domain::RealLine, 0, 2));
  CHECK(m(1.0) == Approx(1.0));
  CHECK(m(4.0) == Approx(0.5));
  CHECK(m.primitive(3.0) == Approx(2.0));
  // \int_2^4 2/t dt = 2 ln 2.
  CHECK(m.integral(2.0, 4.0) == Approx(2.0 * std::log(2.0)));
}

TEST_CASE("convolution of indicators is the tent") {
  const auto chi = StepFunction::indicator(Domain::RealLine, 0, 1);
  const auto h = convolve_continuous(chi, chi);
  CHECK(std::abs(h(0.5) - Complex(0.5)) < 1e-14);
  CHECK(std::abs(h(1.0) - Complex(1.0)) < 1e-14);
  CHECK(std::abs(h(1.5) - Complex(0.5)) < 1e-14);
  CHECK(std::abs(h(2.5)) < 1e-14);
  CHECK(h.integral().real() == Approx(1.0));
  // \int tent^2 = 2/3.
  CHECK(h.lp_integral(2) == Approx(2.0 / 3.0));
}

TEST_CASE("torus convolution wraps around") {
  const auto a = StepFunction::indicator(Domain::Torus, kTwoPi - 1.0, kTwoPi);
  const auto b = StepFunction::indicator(Domain::Torus, 0.0, 2.0);
  const auto h = convolve_continuous(a, b);
  // (a * b)(x) = |[x - 2, x] cap [-1, 0]| mod 2pi.
  CHECK(std::abs(h(0.5) - Complex(1.0)) < 1e-13);
  CHECK(std::abs(h(1.5) - Complex(0.5)) < 1e-13);
  CHECK(h.integral().real() == Approx(2.0));
}

TEST_CASE("torus translation wraps") {
  const auto f = StepFunction::indicator(Domain::Torus, 6.0, kTwoPi);
  // [6, 2pi) + 1 wraps to [7 - 2pi, 1).
  const auto g = f.translated(1.0);
  CHECK(std::abs(g(0.9) - Complex(1.0)) < 1e-14);
  CHECK(std::abs(g(0.5)) < 1e-14);
  CHECK(integrate(g) == Approx(integrate(f)));
}

TEST_CASE("seeded corpora are reproducible") {
  CorpusSpec spec;
  spec.size = 30;
  const auto a = make_corpus(spec);
  const auto b = make_corpus(spec);
  REQUIRE(a.size() == 30);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(dump_step_function(a[i].f) == dump_step_function(b[i].f));
    CHECK(a[i].tag == b[i].tag);
  }
  spec.seed = 8;
  const auto c = make_corpus(spec);
  bool differs = false;
  for (std::size_t i = 0; i < c.size(); ++i) differs |= dump_step_function(a[i].f) != dump_step_function(c[i].f);
  CHECK(differs);
}

TEST_CASE("parallel_map keeps order") {
  const auto v = parallel_map<int>(100, 4, [](std::size_t i) { return static_cast<int>(i * i); });
  for (std::size_t i = 0; i < v.size(); ++i) CHECK(v[i] == static_cast<int>(i * i));
}

TEST_CASE("step function json round trip") {
  const auto f = StepFunction(Domain::Torus, {0.0, 0.1, 3.0}, {Complex(1, 2), Complex(-0.3, 0)});
  const auto g = parse_step_function(dump_step_function(f));
  CHECK(g.domain() == Domain::Torus);
  CHECK(dump_step_function(g) == dump_step_function(f));
}

TEST_CASE("format_double round trips") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(kInfinity) == "inf");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("error codes carry their name") {
  const Error e(ErrorCode::GridOverflow, "too many cells");
  CHECK(e.code() == ErrorCode::GridOverflow);
  CHECK(std::string(e.what()).find("GridOverflow") == 0);
}
