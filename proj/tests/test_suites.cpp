#include <doctest.h>

#include "rispace/corpus.hpp"
#include "rispace/error.hpp"
#include "rispace/young.hpp"

using namespace rispace;
using doctest::Approx;

namespace {
std::vector<FunctionPair> corpus(Domain d, std::size_t n) {
  CorpusSpec s;
  s.domain = d;
  s.size = n;
  return make_corpus(s);
}
}  // namespace

TEST_CASE("classical Young holds with constant 1") {
  for (Domain d : {Domain::RealLine, Domain::Torus}) {
    const auto r = verify_classical_young(2, 1, 2, corpus(d, 30));
    CHECK(r.verdict == Verdict::ConstantExactOK);
    CHECK(r.max_ratio <= 1 + 1e-6);
    CHECK(r.n_cases == 30);
  }
}

TEST_CASE("indicator pair is extremal for (2, 2, inf)") {
  std::vector<FunctionPair> one{{StepFunction::indicator(Domain::RealLine, 0, 1),
                                 StepFunction::indicator(Domain::RealLine, 0, 1), "chi"}};
  const auto r = verify_classical_young(2, 2, kInfinity, one);
  CHECK(r.max_ratio == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("inconsistent exponents are refused") {
  try {
    verify_classical_young(1.5, 3, 3, corpus(Domain::RealLine, 4));
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ExponentMismatch);
  }
}

TEST_CASE("a planted constant below the truth is violated") {
  SuiteOptions o;
  o.claimed_constant = 0.5;
  const auto r = verify_classical_young(1.5, 1.5, 3, corpus(Domain::RealLine, 20), o);
  CHECK(r.verdict == Verdict::Violated);
  CHECK(r.max_ratio > 0.5);
  CHECK(r.argmax_f.has_value());
  CHECK(r.argmax_g.has_value());
}

TEST_CASE("reports do not depend on the thread count") {
  SuiteOptions a, b;
  a.threads = 1;
  b.threads = 3;
  const auto c = corpus(Domain::RealLine, 12);
  CHECK(verify_classical_young(2, 1, 2, c, a).to_json().dump() == verify_classical_young(2, 1, 2, c, b).to_json().dump());
}

TEST_CASE("Orlicz Young suite for t^2") {
  const auto r = verify_orlicz_young(YoungFunction::power(2), 0.5, corpus(Domain::RealLine, 20));
  CHECK(r.verdict == Verdict::ConstantExactOK);
  CHECK(r.max_ratio <= 1 + 1e-4);
  CHECK(r.diagnostics["power_consistency_max_deviation"].get<double>() <= 1e-5);
}

TEST_CASE("report json carries the required fields") {
  const auto r = verify_classical_young(2, 1, 2, corpus(Domain::RealLine, 5));
  const auto j = r.to_json();
  for (const char* key : {"suite", "verdict", "parameters", "max_ratio", "tolerance", "argmax"}) CHECK(j.contains(key));
  CHECK(r.to_csv().rfind("index,tag,lhs,rhs,ratio", 0) == 0);
}
