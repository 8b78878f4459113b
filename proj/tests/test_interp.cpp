#include <doctest.h>

#include <cmath>

#include "rispace/corpus.hpp"
#include "rispace/error.hpp"
#include "rispace/interp.hpp"

using namespace rispace;
using doctest::Approx;

namespace {
CoupleSpec l1_linf() { return {SpaceSpec::lebesgue(1), SpaceSpec::linf()}; }

InterpParams params(double theta, ParamFunction b, SpaceSpec outer, double T, double h) {
  InterpParams p;
  p.theta = theta;
  p.weight = std::move(b);
  p.outer = std::move(outer);
  p.T = T;
  p.h = h;
  return p;
}
}  // namespace

TEST_CASE("K-functional of (L1, Linf) is the primitive of f*") {
  const auto chi = StepFunction::indicator(Domain::RealLine, 0, 1);
  CHECK(k_functional(l1_linf(), 0.5, chi) == Approx(0.5));
  CHECK(k_functional(l1_linf(), 3.0, chi) == Approx(1.0));
  const auto f = StepFunction::from_real(Domain::RealLine, {0, 1, 3}, {1, -2});
  CHECK(k_functional(l1_linf(), 1.0, f) == Approx(2.0));
  CHECK(k_functional(l1_linf(), 2.5, f) == Approx(4.5));
  CHECK(KFunctional(l1_linf(), f).exact());
}

TEST_CASE("K-functional of (L1, L2) against a grid search") {
  const CoupleSpec c{SpaceSpec::lebesgue(1), SpaceSpec::lebesgue(2)};
  Rng rng(5);
  for (int i = 0; i < 5; ++i) {
    const auto f = random_step(Domain::RealLine, rng, 4, false);
    for (double t : {0.3, 1.0, 4.0}) {
      const double k = KFunctional(c, f).refined(t);
      // The grid search is an upper bound over a coarser family.
      CHECK(k <= k_functional_grid_search(c, t, f) * (1 + 1e-9));
    }
  }
}

TEST_CASE("K is concave and bounded by the endpoint norms") {
  const auto f = StepFunction::from_real(Domain::RealLine, {0, 0.5, 2, 2.5}, {3, 1, 0.5});
  const KFunctional K(l1_linf(), f);
  double prev = 0;
  for (double t = 0.05; t < 10; t *= 1.5) {
    const double k = K(t);
    CHECK(k >= prev - 1e-12);
    CHECK(k <= std::min(K.norm_x0(), t * K.norm_x1()) + 1e-12);
    prev = k;
  }
}

TEST_CASE("J-functional") {
  const auto chi = StepFunction::indicator(Domain::RealLine, 0, 1);
  CHECK(j_functional(l1_linf(), 2.0, chi) == Approx(2.0));
  CHECK(j_functional(l1_linf(), 0.5, chi) == Approx(1.0));
}

TEST_CASE("K-method norm of an indicator") {
  // Profile e^{-|t|/2}, whose L2 norm is sqrt 2.
  const auto chi = StepFunction::indicator(Domain::RealLine, 0, 1);
  const auto p = params(0.5, ParamFunction::power(0.0), SpaceSpec::lebesgue(2), 20, 0.01);
  CHECK(k_method_norm(l1_linf(), p, chi) == Approx(std::sqrt(2.0)).epsilon(1e-3));
  // With outer Linf the sup of the profile is 1.
  const auto q = params(0.5, ParamFunction::power(0.0), SpaceSpec::linf(), 20, 0.01);
  CHECK(k_method_norm(l1_linf(), q, chi) == Approx(1.0).epsilon(1e-9));
}

TEST_CASE("parameter conditions") {
  CHECK(check_conditions(params(0.5, ParamFunction::power(0.0), SpaceSpec::lebesgue(2), 20, 0.01)) ==
        Condition::InteriorOK);
  CHECK(check_conditions(params(0.0, ParamFunction::power(0.0), SpaceSpec::lebesgue(2), 20, 0.01)) ==
        Condition::Trivial);
  const auto chi = StepFunction::indicator(Domain::RealLine, 0, 1);
  try {
    k_method_norm(l1_linf(), params(0.0, ParamFunction::power(0.0), SpaceSpec::lebesgue(2), 20, 0.01), chi);
    FAIL("trivial parameters accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TrivialSpace);
  }
}

TEST_CASE("representations sum to f") {
  const auto f = StepFunction::from_real(Domain::RealLine, {0, 0.25, 1, 4}, {4, 2, 0.5});
  const auto rep = build_representation(l1_linf(), f, 20);
  StepFunction sum;
  for (const auto& u : rep.pieces) sum = sum + u;
  CHECK(lp_norm(sum - f, 1) < 1e-9);
  CHECK(rep.residual <= 1e-8);
  const auto p = params(0.5, ParamFunction::power(0.0), SpaceSpec::lebesgue(2), 20, 0.01);
  const double j = j_method_norm_upper(l1_linf(), p, f);
  CHECK(std::isfinite(j));
  CHECK(j > 0);
}
