#include "rispace/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "rispace/error.hpp"

namespace rispace {

std::uint64_t item_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

StepFunction random_step(Domain d, Rng& rng, int max_cells, bool nonnegative, bool complex_values) {
  if (max_cells < 1) throw Error(ErrorCode::InvalidArgument, "max_cells must be positive");
  const int n = rng.integer(1, max_cells);
  std::vector<double> x;
  if (d == Domain::Torus) {
    for (int i = 0; i <= n; ++i) x.push_back(rng.uniform(0.0, kTwoPi));
    std::sort(x.begin(), x.end());
    x.erase(std::unique(x.begin(), x.end()), x.end());
    if (x.size() < 2) x = {0.0, kTwoPi};
  } else {
    x.push_back(d == Domain::HalfLine ? rng.uniform(0.0, 1.0) : rng.uniform(-3.0, 1.0));
    for (int i = 0; i < n; ++i) x.push_back(x.back() + rng.uniform(0.1, 1.5));
  }
  std::vector<Complex> v(x.size() - 1);
  for (auto& z : v) {
    const double lo = nonnegative ? 0.0 : -2.0;
    double re = rng.uniform(lo, 2.0);
    // roughly one cell in eight is zero
    if (rng.uniform() < 0.125) re = 0.0;
    z = complex_values ? Complex(re, rng.uniform(-1.0, 1.0)) : Complex(re);
  }
  if (std::all_of(v.begin(), v.end(), [](Complex z) { return z == 0.0; })) v.front() = 1.0;
  return StepFunction(d, std::move(x), std::move(v));
}

std::vector<FunctionPair> structured_pairs(Domain d) {
  auto step = [d](std::vector<double> x, std::vector<double> v) {
    return StepFunction::from_real(d, std::move(x), std::move(v));
  };
  const auto chi = [d](double a, double b) { return StepFunction::indicator(d, a, b); };
  std::vector<FunctionPair> out;
  out.push_back({chi(0, 1), chi(0, 1), "indicator-pair"});
  out.push_back({chi(0, 1), chi(0, 2), "indicators-1-2"});
  out.push_back({chi(0, 0.5), chi(0, 3), "indicators-half-3"});
  out.push_back({chi(0, 1).scaled(1.01), chi(0, 0.99), "near-extremal"});
  out.push_back({step({0, 1, 2, 3}, {3, 2, 1}), chi(0, 1), "staircase-indicator"});
  out.push_back({step({0, 1, 2, 3}, {1, 2, 3}), step({0, 1, 2, 3}, {3, 2, 1}), "staircase-pair"});
  {
    std::vector<double> x, v;
    double a = 0.0;
    for (int k = 0; k < 5; ++k) {
      const double w = std::ldexp(1.0, -k);
      x.push_back(a);
      x.push_back(a + w);
      v.push_back(std::ldexp(1.0, k));
      v.push_back(0.0);
      a += w + 0.25;
    }
    x.push_back(a);
    v.back() = 0.0;
    out.push_back({step(x, v), chi(0, 1), "lacunary-spikes"});
  }
  out.push_back({step({0, 1, 2}, {1, -1}), chi(0, 1), "signed"});
  out.push_back({StepFunction(d, {0.0, 1.0, 2.5}, {Complex(1, 1), Complex(0, -2)}), chi(0.5, 1.5),
                 "complex"});
  out.push_back({StepFunction(d), chi(0, 1), "zero-f"});
  out.push_back({chi(0, 1), StepFunction(d), "zero-g"});
  return out;
}

std::vector<FunctionPair> make_corpus(const CorpusSpec& spec) {
  if (spec.kind != "default" && spec.kind != "structured" && spec.kind != "random")
    throw Error(ErrorCode::ConfigError, "unknown corpus kind '" + spec.kind + "'");
  std::vector<FunctionPair> out;
  if (spec.kind != "random") {
    for (auto& p : structured_pairs(spec.domain)) {
      if (out.size() >= spec.size) break;
      if (spec.nonnegative && (p.tag == "signed" || p.tag == "complex")) continue;
      out.push_back(std::move(p));
    }
  }
  if (spec.kind == "structured") return out;
  for (std::size_t i = 0; out.size() < spec.size; ++i) {
    Rng rng(item_seed(spec.seed, i));
    StepFunction f = random_step(spec.domain, rng, spec.max_cells, spec.nonnegative, spec.complex_values);
    StepFunction g = random_step(spec.domain, rng, spec.max_cells, spec.nonnegative, spec.complex_values);
    out.push_back({std::move(f), std::move(g), "random-" + std::to_string(i)});
  }
  return out;
}

}  // namespace rispace
