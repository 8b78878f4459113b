#include <doctest.h>

#include <cmath>

#include "rispace/error.hpp"
#include "rispace/varying.hpp"
#include "rispace/young_function.hpp"

using namespace rispace;
using doctest::Approx;

TEST_CASE("iterated logarithm") {
  CHECK(ell(1, std::exp(1.0)) == Approx(2.0));
  CHECK(ell(1, std::exp(-1.0)) == Approx(2.0));
  CHECK(ell(1, 1.0) == Approx(1.0));
  CHECK(ell(2, std::exp(1.0)) == Approx(1.0 + std::log(2.0)));
}

TEST_CASE("parameter functions from text") {
  CHECK(parse_param_function("t^0.5")(4.0) == Approx(2.0));
  CHECK(parse_param_function("1")(123.0) == Approx(1.0));
  CHECK(parse_param_function("l1^-1")(std::exp(2.0)) == Approx(1.0 / 3.0));
  CHECK_THROWS_AS(parse_param_function("t^"), Error);
}

TEST_CASE("dilation function of a power") {
  const auto phi = ParamFunction::power(2.0);
  CHECK(dilation_function(phi, 3.0) == Approx(9.0));
  CHECK(dilation_function(phi, 0.5) == Approx(0.25));
}

TEST_CASE("dilation indices") {
  const auto d = dilation_indices(ParamFunction::power(1.5));
  CHECK(d.lower == Approx(1.5).epsilon(1e-9));
  CHECK(d.upper == Approx(1.5).epsilon(1e-9));
  for (double alpha : {-1.0, 0.5, 2.0}) {
    const auto l = dilation_indices(ParamFunction::slowly_varying(SlowlyVarying::iterated_log({alpha})));
    CHECK(std::abs(l.lower) <= 0.05);
    CHECK(std::abs(l.upper) <= 0.05);
  }
}

TEST_CASE("submultiplicative majorant") {
  const auto p = m_phi(ParamFunction::power(2.0));
  CHECK(p(3.0) == Approx(9.0));
  // s_phi >= phi / phi(1) for phi(1) = 1, up to the tabulation.
  const auto b = ParamFunction::slowly_varying(SlowlyVarying::iterated_log({1.0}));
  const auto mb = m_phi(b);
  for (double t : {0.01, 0.5, 2.0, 100.0}) CHECK(mb(t) >= b(t) * (1 - 1e-3));
}

TEST_CASE("b_theta") {
  const auto bt = b_theta(ParamFunction::power(0.0), 0.5);
  CHECK(bt(std::exp(3.0)) == Approx(0.5));
}

TEST_CASE("Young function families") {
  const auto p3 = YoungFunction::power(3);
  CHECK(p3(2.0) == Approx(8.0));
  CHECK(p3.inverse(8.0) == Approx(2.0));
  CHECK(YoungFunction::exp_minus_one()(1.0) == Approx(std::exp(1.0) - 1.0));
  CHECK(YoungFunction::tlogt()(1.0) == Approx(std::log(std::exp(1.0) + 1.0)));
  CHECK_THROWS_AS(YoungFunction::power(0.5), Error);
}

TEST_CASE("complementary Young function of t^p/p") {
  for (double p : {1.5, 2.0, 3.0}) {
    const double q = p / (p - 1);
    const auto psi = complementary_young(YoungFunction::power(p, 1.0 / p));
    for (double s : {0.1, 1.0, 4.0}) CHECK(psi(s) == Approx(std::pow(s, q) / q).epsilon(1e-6));
  }
}

TEST_CASE("interpolated Young pair for t^2 at theta = 1/2") {
  // phi^{-1}(s) = s^{1/4}; psi0(s) = s^2/4 so psi^{-1}(t) = sqrt(2) t^{3/4}.
  const auto pair = young_from_theta(YoungFunction::power(2), 0.5);
  CHECK(pair.phi(2.0) == Approx(16.0).epsilon(1e-6));
  CHECK(pair.psi.inverse(1.0) == Approx(std::sqrt(2.0)).epsilon(1e-6));
  CHECK(pair.psi.inverse(16.0) == Approx(std::sqrt(2.0) * 8.0).epsilon(1e-6));
}

TEST_CASE("Orlicz function from a parameter function") {
  const auto rho = ParamFunction::power(0.5);
  // (L1, L^{t^2}): phi^{-1}(s) = s^{3/4}.
  CHECK(orlicz_from_rho(YoungFunction::power(2), rho, RhoCouple::WithL1)(8.0) == Approx(16.0).epsilon(1e-6));
  // (L^{t^2}, Linf): phi^{-1}(s) = s^{1/4}.
  CHECK(orlicz_from_rho(YoungFunction::power(2), rho, RhoCouple::WithLinfty)(2.0) == Approx(16.0).epsilon(1e-6));
  const auto h = check_rho_hypotheses(rho);
  CHECK(h.pseudo_concave);
  CHECK_FALSE(check_rho_hypotheses(ParamFunction::power(2.0)).pseudo_concave);
}
