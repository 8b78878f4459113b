#pragma once

/**
 * @file corpus.hpp
 * @brief Seeded test corpora of step-function pairs and a deterministic
 * parallel map over them.
 */

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "rispace/core.hpp"

namespace rispace {

/// Uniform variates built from raw mt19937_64 output, so sequences do not
/// depend on the standard library's distribution implementations.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  /// Uniform integer in [lo, hi].
  int integer(int lo, int hi) {
    return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  std::uint64_t raw() { return engine_(); }

private:
  std::mt19937_64 engine_;
};

/// Seed of the i-th item derived from a base seed (splitmix64 finaliser).
std::uint64_t item_seed(std::uint64_t seed, std::uint64_t index);

struct FunctionPair {
  StepFunction f;
  StepFunction g;
  std::string tag;
};

struct CorpusSpec {
  Domain domain = Domain::RealLine;
  /// "default" (structured shapes, then random), "structured" or "random".
  std::string kind = "default";
  std::size_t size = 200;
  std::uint64_t seed = 7;
  int max_cells = 10;
  bool nonnegative = false;
  bool complex_values = false;
};

/// Random step function on the real line (support inside [-3, 6]) or the torus.
StepFunction random_step(Domain d, Rng& rng, int max_cells, bool nonnegative, bool complex_values = false);

/// Indicators, staircases, lacunary spikes, near-extremal Young pairs and a
/// zero pair, laid out inside [0, 2pi] so they serve on the torus as well.
std::vector<FunctionPair> structured_pairs(Domain d);

std::vector<FunctionPair> make_corpus(const CorpusSpec& spec);

/// Runs fn(i) for i < n on up to `threads` workers; results are stored by index.
template <class T>
std::vector<T> parallel_map(std::size_t n, unsigned threads, const std::function<T(std::size_t)>& fn);

/// Number of workers from a requested count (0 = hardware concurrency).
unsigned resolve_threads(unsigned requested);

}  // namespace rispace

#include "rispace/detail/parallel_impl.hpp"
