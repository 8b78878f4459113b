#include <doctest.h>

#include <cmath>

#include "rispace/core.hpp"
#include "rispace/corpus.hpp"
#include "rispace/error.hpp"
#include "rispace/spaces.hpp"

using namespace rispace;
using doctest::Approx;

TEST_CASE("Lebesgue norms") {
  const auto f = StepFunction::from_real(Domain::RealLine, {0, 1, 3}, {2, -1});
  CHECK(norm(SpaceSpec::lebesgue(1), f) == Approx(4.0));
  CHECK(norm(SpaceSpec::lebesgue(2), f) == Approx(std::sqrt(6.0)));
  CHECK(norm(SpaceSpec::linf(), f) == Approx(2.0));
  CHECK_THROWS_AS(SpaceSpec::lebesgue(0.5), Error);
}

TEST_CASE("Lorentz norms of an indicator") {
  const auto chi4 = StepFunction::indicator(Domain::RealLine, 0, 4);
  // ||t^{1/p} 1_{[0,a)}||_{L^q(dt/t)} = (p/q)^{1/q} a^{1/p}.
  CHECK(norm(SpaceSpec::lorentz(2, 1), chi4) == Approx(4.0));
  CHECK(norm(SpaceSpec::lorentz(2, kInfinity), chi4) == Approx(2.0));
  CHECK(norm(SpaceSpec::lorentz(3, 3), chi4) == Approx(norm(SpaceSpec::lebesgue(3), chi4)));
  CHECK(norm(SpaceSpec::lorentz_zygmund(2, 1, 0.0), chi4) == Approx(4.0));
}

TEST_CASE("Lorentz equals Lebesgue for q = p on random functions") {
  Rng rng(3);
  for (int i = 0; i < 20; ++i) {
    const auto f = random_step(Domain::RealLine, rng, 8, false);
    CHECK(norm(SpaceSpec::lorentz(2.5, 2.5), f) == Approx(lp_norm(f, 2.5)).epsilon(1e-10));
  }
}

TEST_CASE("Lorentz-Karamata with b = 1 and E = L^p is L^p") {
  const auto f = StepFunction::from_real(Domain::RealLine, {0, 0.5, 2}, {3, 1});
  const auto K = SpaceSpec::karamata(2, ParamFunction::power(0.0), SpaceSpec::lebesgue(2));
  CHECK(norm(K, f) == Approx(lp_norm(f, 2)).epsilon(1e-6));
}

TEST_CASE("Orlicz norms") {
  const auto f = StepFunction::from_real(Domain::RealLine, {0, 1, 2.5}, {1.5, 0.25});
  const auto t2 = YoungFunction::power(2);
  CHECK(luxemburg_norm(t2, f) == Approx(lp_norm(f, 2)).epsilon(1e-9));
  CHECK(norm(SpaceSpec::orlicz_lux(t2), f) == Approx(lp_norm(f, 2)).epsilon(1e-9));
  const double a = amemiya_norm(t2, f), l = luxemburg_norm(t2, f);
  CHECK(a >= l * (1 - 1e-9));
  CHECK(a <= 2 * l * (1 + 1e-9));
  // For t^2 the infimum over k sits at k = 1/||f||_2.
  CHECK(a == Approx(2 * lp_norm(f, 2)).epsilon(1e-6));

  const auto chi = StepFunction::indicator(Domain::RealLine, 0, 1);
  const auto tent = convolve_continuous(chi, chi);
  CHECK(luxemburg_norm(t2, tent) == Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-8));
}

TEST_CASE("torus spaces") {
  const auto one = StepFunction::indicator(Domain::Torus, 0, kTwoPi);
  CHECK(lexp_norm(one) == Approx(1.0));
  const auto chi = StepFunction::indicator(Domain::Torus, 0, 1);
  // \int_0^1 1 + \int_1^{2pi} 1/t.
  CHECK(llogl_norm(chi) == Approx(1.0 + std::log(kTwoPi)));
  CHECK(SpaceSpec::lexp().torus_only());
  CHECK_THROWS_AS(norm(SpaceSpec::lexp(), StepFunction::indicator(Domain::RealLine, 0, 1)), Error);
}

TEST_CASE("grand Lebesgue norm is homogeneous and below L^p up to the Hardy constant") {
  const auto f = StepFunction::from_real(Domain::Torus, {0, 0.3, 2, 5}, {4, 1, 0.5});
  const double n = grand_lebesgue_norm(2, f);
  CHECK(n > 0);
  CHECK(grand_lebesgue_norm(2, f.scaled(3.0)) == Approx(3 * n));
  CHECK(n <= 2 * lp_norm(f, 2) * (1 + 1e-9));
}

TEST_CASE("associate spaces") {
  const auto a = associate_space(SpaceSpec::lebesgue(3));
  REQUIRE(a.has_value());
  CHECK(a->is_lebesgue(1.5));
  CHECK(associate_space(SpaceSpec::lebesgue(1))->is_linf());
  CHECK(associate_space(SpaceSpec::llogl())->family() == SpaceSpec::Family::Lexp);
}

TEST_CASE("norms depend only on the rearrangement") {
  Rng rng(9);
  const std::vector<SpaceSpec> spaces{SpaceSpec::lebesgue(1.5), SpaceSpec::lorentz(2, 1),
                                      SpaceSpec::orlicz_lux(YoungFunction::tlogt())};
  for (int i = 0; i < 10; ++i) {
    const auto f = random_step(Domain::RealLine, rng, 6, false);
    const auto g = f.translated(2.75);
    for (const auto& E : spaces) CHECK(norm(E, g) == Approx(norm(E, f)).epsilon(1e-10));
  }
}
