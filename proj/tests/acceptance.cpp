// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "rispace/bilinear.hpp"
#include "rispace/cli.hpp"
#include "rispace/corpus.hpp"
#include "rispace/error.hpp"
#include "rispace/interp.hpp"
#include "rispace/multiplier.hpp"
#include "rispace/spaces.hpp"
#include "rispace/varying.hpp"
#include "rispace/young.hpp"
#include "rispace/young_function.hpp"

using namespace rispace;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double x) { return format_double(x); }

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

std::vector<StepFunction> seeded_functions(Domain d, std::size_t n, int max_cells, std::uint64_t seed) {
  std::vector<StepFunction> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rng rng(item_seed(seed, i));
    out.push_back(random_step(d, rng, max_cells, false));
  }
  return out;
}

std::vector<FunctionPair> corpus(Domain d, std::size_t n, std::uint64_t seed = 7) {
  CorpusSpec s;
  s.domain = d;
  s.size = n;
  s.seed = seed;
  return make_corpus(s);
}

InterpParams params(double theta, ParamFunction b, SpaceSpec outer, double T, double h) {
  InterpParams p;
  p.theta = theta;
  p.weight = std::move(b);
  p.outer = std::move(outer);
  p.T = T;
  p.h = h;
  return p;
}

CoupleSpec l1_linf() { return {SpaceSpec::lebesgue(1), SpaceSpec::linf()}; }

Outcome exactness_core() {
  const auto fs = seeded_functions(Domain::RealLine, 1000, 12, 101);
  const auto gs = seeded_functions(Domain::RealLine, 1000, 12, 202);
  double worst = 0;
  std::size_t hl_violations = 0;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const auto fstar = decreasing_rearrangement(fs[i]);
    for (double p : {1.0, 2.0, 3.0}) {
      const double a = lp_integral(fs[i], p), b = lp_integral(fstar, p);
      worst = std::max(worst, std::abs(a - b) / a);
    }
    const double lhs = integrate((fs[i] * gs[i]).abs());
    const double rhs = integrate(fstar * decreasing_rearrangement(gs[i]));
    if (lhs > rhs * (1 + 1e-12)) ++hl_violations;
  }
  return {worst <= 1e-12 && hl_violations == 0,
          "max relative error " + fmt(worst) + ", Hardy-Littlewood violations " + std::to_string(hl_violations)};
}

Outcome classical_young() {
  struct Triple {
    double p, q, r;
  };
  double worst = 0;
  std::size_t cases = 0;
  for (const Triple t : {Triple{1, 1, 1}, Triple{2, 2, kInfinity}, Triple{1.5, 1.5, 3}}) {
    for (Domain d : {Domain::RealLine, Domain::Torus}) {
      const auto r = verify_classical_young(t.p, t.q, t.r, corpus(d, 500));
      worst = std::max(worst, r.max_ratio);
      cases += r.n_cases;
    }
  }
  const auto chi = StepFunction::indicator(Domain::RealLine, 0, 1);
  const auto ext = verify_classical_young(2, 2, kInfinity, {{chi, chi, "indicator"}});
  bool mismatch = false;
  try {
    verify_classical_young(1.5, 3, 3, corpus(Domain::RealLine, 2));
  } catch (const Error& e) {
    mismatch = e.code() == ErrorCode::ExponentMismatch;
  }
  return {worst <= 1 + 1e-6 && std::abs(ext.max_ratio - 1) <= 1e-9 && mismatch,
          "max ratio " + fmt(worst) + " over " + std::to_string(cases) +
              " cases with triples (1,1,1), (2,2,inf), (3/2,3/2,3); indicator ratio " + fmt(ext.max_ratio) +
              "; (3/2,3,3) fails 1/p+1/q=1+1/r and raises ExponentMismatch: " + (mismatch ? "yes" : "no")};
}

Outcome k_functional_anchor() {
  const auto fs = seeded_functions(Domain::RealLine, 200, 12, 303);
  double worst = 0;
  for (const auto& f : fs) {
    const KFunctional K(l1_linf(), f);
    const MaximalFunction m(f);
    for (int k = 0; k < 20; ++k) {
      const double t = std::pow(10.0, -2.0 + 4.0 * k / 19.0);
      worst = std::max(worst, rel(K(t), m.primitive(t)));
    }
  }
  const auto small = seeded_functions(Domain::RealLine, 30, 8, 404);
  double oracle = 0;
  for (const auto& f : small) {
    for (double t : {0.1, 0.7, 2.0, 9.0}) {
      oracle = std::max(oracle, rel(k_functional_grid_search(l1_linf(), t, f), KFunctional(l1_linf(), f)(t)));
    }
  }
  return {worst <= 1e-9 && oracle <= 1e-6,
          "truncation vs primitive of f* " + fmt(worst) + ", grid-search oracle gap " + fmt(oracle)};
}

Outcome k_method_closed_form() {
  const auto chi = StepFunction::indicator(Domain::RealLine, 0, 1);
  const auto p = params(0.5, ParamFunction::power(0.0), SpaceSpec::lebesgue(2), 40, 1e-3);
  auto q = p;
  q.h /= 2;
  const double a = k_method_norm(l1_linf(), p, chi), b = k_method_norm(l1_linf(), q, chi);
  return {std::abs(a - std::sqrt(2.0)) <= 1e-4 && std::abs(a - b) <= 1e-5,
          "value " + fmt(a) + ", halved step " + fmt(b)};
}

Outcome triviality() {
  const auto chi = StepFunction::indicator(Domain::RealLine, 0, 1);
  auto p = params(0.0, ParamFunction::power(0.0), SpaceSpec::lebesgue(2), 5, 0.01);
  const bool trivial = check_conditions(p) == Condition::Trivial;
  double min_growth = kInfinity;
  double prev = k_method_norm(l1_linf(), p, chi, true);
  for (int i = 0; i < 4; ++i) {
    p.T *= 2;
    const double v = k_method_norm(l1_linf(), p, chi, true);
    min_growth = std::min(min_growth, v / prev);
    prev = v;
  }
  auto w = params(0.0, parse_param_function("l1^-1"), SpaceSpec::linf(), 5, 0.01);
  const bool theta0 = check_conditions(w) == Condition::Theta0OK;
  const double first = k_method_norm(l1_linf(), w, chi);
  double drift = 0;
  for (int i = 0; i < 4; ++i) {
    w.T *= 2;
    drift = std::max(drift, std::abs(k_method_norm(l1_linf(), w, chi) - first));
  }
  return {trivial && min_growth >= 1.3 && theta0 && drift <= 1e-6,
          "b = 1: smallest growth per doubling " + fmt(min_growth) + ", b = 1/l: window drift " + fmt(drift)};
}

Outcome generalized_young() {
  const auto p = params(0.5, ParamFunction::power(0.0), SpaceSpec::lebesgue(2), 20, 0.01);
  const auto r = verify_thm21(SpaceSpec::lebesgue(2), p, corpus(Domain::RealLine, 200));
  const double drift = r.refinement_drift.value_or(kInfinity);
  return {std::isfinite(r.max_ratio) && drift <= 0.05 && r.verdict != Verdict::Violated,
          "max ratio " + fmt(r.max_ratio) + ", drift " + fmt(drift) + ", verdict " + std::string(to_string(r.verdict))};
}

Outcome orlicz_young() {
  double worst = 0, consistency = 0;
  bool ok = true;
  for (const auto& phi0 : {YoungFunction::power(2), YoungFunction::tlogt()}) {
    for (double theta : {0.25, 0.5}) {
      const auto r = verify_orlicz_young(phi0, theta, corpus(Domain::RealLine, 200));
      worst = std::max(worst, r.max_ratio);
      ok = ok && r.verdict != Verdict::Violated;
      if (r.diagnostics.contains("power_consistency_max_deviation"))
        consistency = std::max(consistency, r.diagnostics["power_consistency_max_deviation"].get<double>());
    }
  }
  return {ok && worst <= 1 + 1e-4 && consistency <= 1e-5,
          "max ratio " + fmt(worst) + ", power-family deviation from the Lebesgue case " + fmt(consistency)};
}

Outcome orlicz_calculus() {
  const auto fs = seeded_functions(Domain::RealLine, 100, 10, 505);
  double lux = 0;
  double bracket_lo = kInfinity, bracket_hi = 0;
  const std::vector<YoungFunction> family{YoungFunction::power(2), YoungFunction::power(3), YoungFunction::tlogt(),
                                          YoungFunction::power_log(2, 1), YoungFunction::exp_minus_one()};
  for (const auto& f : fs) {
    for (double p : {1.5, 2.0, 3.0}) lux = std::max(lux, rel(luxemburg_norm(YoungFunction::power(p), f), lp_norm(f, p)));
    for (const auto& phi : family) {
      const double q = amemiya_norm(phi, f) / luxemburg_norm(phi, f);
      bracket_lo = std::min(bracket_lo, q);
      bracket_hi = std::max(bracket_hi, q);
    }
  }
  double comp = 0;
  for (double p : {1.5, 2.0, 3.0, 4.0}) {
    const double q = p / (p - 1);
    const auto psi = complementary_young(YoungFunction::power(p, 1 / p));
    for (double s = 1e-2; s <= 1e2; s *= 1.3) comp = std::max(comp, std::abs(psi(s) / (std::pow(s, q) / q) - 1));
  }
  const bool bracket = bracket_lo >= 1 - 1e-9 && bracket_hi <= 2 + 1e-9;
  return {lux <= 1e-9 && comp <= 1e-6 && bracket,
          "Luxemburg vs Lebesgue " + fmt(lux) + ", complement error " + fmt(comp) + ", Amemiya/Luxemburg in [" +
              fmt(bracket_lo) + ", " + fmt(bracket_hi) + "]"};
}

Outcome dilation() {
  double power_err = 0;
  for (double p : {0.5, 1.0, 2.0, 3.0}) {
    const auto d = dilation_indices(ParamFunction::power(p));
    power_err = std::max({power_err, std::abs(d.lower - p), std::abs(d.upper - p)});
  }
  double log_err = 0;
  for (double a : {-1.0, 0.5, 2.0}) {
    const auto d = dilation_indices(ParamFunction::slowly_varying(SlowlyVarying::iterated_log({a})));
    log_err = std::max({log_err, std::abs(d.lower), std::abs(d.upper)});
  }
  return {power_err <= 1e-9 && log_err <= 0.05, "powers " + fmt(power_err) + ", logarithms " + fmt(log_err)};
}

Outcome bilinear_interpolation() {
  const auto op = conv_torus_op();
  const auto c = corpus(Domain::Torus, 100);
  const auto jk = verify_thm35(op, 0.5, ParamFunction::power(0.0), SpaceSpec::lebesgue(2), c);
  const auto jj = verify_thm36(op, 0.5, ParamFunction::power(0.0), SpaceSpec::lebesgue(2), c);
  const auto s = single_term_check(op, StepFunction::indicator(Domain::Torus, 0, 1), 1,
                                   StepFunction::indicator(Domain::Torus, 2, 3.5, 0.5), -2);
  const bool ok = jk.verdict == Verdict::ConstantExactOK && jj.verdict == Verdict::ConstantExactOK &&
                  s.nonzero_terms == 1 && s.max_error <= 1e-9;
  return {ok, "J x K -> K max " + fmt(jk.max_ratio) + " (" + std::string(to_string(jk.verdict)) + "), J x J -> J max " +
                  fmt(jj.max_ratio) + " (" + std::string(to_string(jj.verdict)) + "), single term error " +
                  fmt(s.max_error)};
}

Outcome multiplier_identities() {
  const auto one = MultiplierSymbol::constant(64, 1.0);
  double product = 0, parseval = 0;
  for (const auto& pair : trig_corpus(64, 12, 17)) {
    const auto h = apply_Pm(one, pair.f, pair.g);
    const std::size_t M = grid_size(128);
    const auto hs = h.sample(M), fs = pair.f.resized(128).sample(M), gs = pair.g.resized(128).sample(M);
    double scale = 0;
    for (std::size_t i = 0; i < M; ++i) scale = std::max(scale, std::abs(fs[i] * gs[i]));
    for (std::size_t i = 0; i < M; ++i) product = std::max(product, std::abs(hs[i] - fs[i] * gs[i]) / std::max(1.0, scale));
    double s = 0;
    for (int k = -64; k <= 64; ++k) s += std::norm(pair.f.coeff(k));
    const double n2 = lp_norm(pair.f, 2, 64);
    parseval = std::max(parseval, std::abs(n2 * n2 - 2 * std::numbers::pi * s) / std::max(1.0, n2 * n2));
  }
  MultiplierOptions o;
  o.N = 32;
  const auto blasco = check_blasco_endpoints(symbol_family("decay"), 2, o);
  const auto chain = check_grand_chain(symbol_family("decay"), 2, o);
  const double d1 = blasco.refinement_drift.value_or(kInfinity), d2 = chain.refinement_drift.value_or(kInfinity);
  const bool ok = product <= 1e-10 && parseval <= 1e-10 && d1 <= 0.10 && d2 <= 0.10 &&
                  blasco.verdict != Verdict::Violated && chain.verdict != Verdict::Violated;
  return {ok, "product identity " + fmt(product) + ", Parseval " + fmt(parseval) + ", Blasco constant " +
                  fmt(blasco.max_ratio) + " drift " + fmt(d1) + ", grand chain constant " + fmt(chain.max_ratio) +
                  " drift " + fmt(d2)};
}

Outcome falsification() {
  RunConfig rc;
  rc.settings = ConfigFile::parse("suite = classical-young\np = 3/2\nq = 3/2\nr = 3\nclaimed_constant = 0.5\n");
  const auto report = run_suite(rc);
  const bool witness = report.argmax_f.has_value() && report.argmax_g.has_value();
  const int code = exit_code(report);
  return {report.verdict == Verdict::Violated && witness && code == 2,
          "verdict " + std::string(to_string(report.verdict)) + ", witness " + report.cases[report.argmax].tag +
              " with ratio " + fmt(report.max_ratio) + ", exit code " + std::to_string(code)};
}

Outcome determinism() {
  const std::vector<std::string> configs{
      "suite = classical-young\nsize = 60\n",
      "suite = cor22\nphi0 = tlogt\nsize = 30\n",
      "suite = thm21\nsize = 12\n",
      "suite = thm35\nsize = 8\n",
      "suite = blasco-endpoints\nN = 8\nsize = 16\n",
  };
  std::size_t same = 0;
  for (const auto& text : configs) {
    std::string dumps[2];
    unsigned threads[2] = {1, 4};
    for (int k = 0; k < 2; ++k) {
      RunConfig rc;
      rc.settings = ConfigFile::parse(text + "threads = " + std::to_string(threads[k]) + "\n");
      dumps[k] = run_suite(rc).to_json().dump(2);
    }
    same += dumps[0] == dumps[1];
  }
  return {same == configs.size(),
          std::to_string(same) + " of " + std::to_string(configs.size()) + " suites byte-identical at 1 and 4 threads"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"rearrangement exactness and Hardy-Littlewood", exactness_core},
      {"classical Young with constant 1", classical_young},
      {"K-functional of (L1, Linf)", k_functional_anchor},
      {"K-method closed form for an indicator", k_method_closed_form},
      {"trivial and endpoint parameters", triviality},
      {"generalized Young inequality", generalized_young},
      {"Orlicz Young inequality", orlicz_young},
      {"Orlicz calculus", orlicz_calculus},
      {"dilation indices", dilation},
      {"bilinear interpolation on the torus", bilinear_interpolation},
      {"bilinear multiplier identities and stability", multiplier_identities},
      {"planted false constant", falsification},
      {"determinism across thread counts", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %2zu %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
    failures += !o.pass;
  }
  return failures == 0 ? 0 : 1;
}
