#include <algorithm>
#include <cmath>
#include <random>

#include "rispace/error.hpp"
#include "rispace/numeric.hpp"
#include "rispace/spaces.hpp"

namespace rispace {

namespace {

/// Weighted least-squares projection onto nonincreasing, nonnegative vectors
/// (pool-adjacent-violators).
std::vector<double> project_nonincreasing(const std::vector<double>& y, const std::vector<double>& w) {
  struct Block {
    double sum_wy;
    double sum_w;
    std::size_t count;
    double mean() const { return sum_wy / sum_w; }
  };
  std::vector<Block> blocks;
  for (std::size_t i = 0; i < y.size(); ++i) {
    blocks.push_back({w[i] * y[i], w[i], 1});
    while (blocks.size() > 1 && blocks[blocks.size() - 2].mean() < blocks.back().mean()) {
      auto last = blocks.back();
      blocks.pop_back();
      blocks.back().sum_wy += last.sum_wy;
      blocks.back().sum_w += last.sum_w;
      blocks.back().count += last.count;
    }
  }
  std::vector<double> out;
  out.reserve(y.size());
  for (const auto& b : blocks) out.insert(out.end(), b.count, std::max(0.0, b.mean()));
  return out;
}

class DualObjective {
public:
  DualObjective(const SpaceSpec& space, const StepFunction& gstar) : space_(space) {
    const auto s = gstar.breakpoints();
    for (std::size_t i = 0; i < gstar.cell_count(); ++i) {
      x_.push_back(s[i]);
      gamma_.push_back(gstar.values()[i].real());
      m_.push_back(s[i + 1] - s[i]);
    }
    x_.push_back(s.back());
  }

  std::size_t size() const { return gamma_.size(); }
  const std::vector<double>& measures() const { return m_; }
  const std::vector<double>& gamma() const { return gamma_; }

  StepFunction as_step(const std::vector<double>& f) const {
    std::vector<Complex> v(f.begin(), f.end());
    return StepFunction(Domain::HalfLine, x_, std::move(v));
  }

  double operator()(const std::vector<double>& f) const {
    numeric::CompensatedSum pairing;
    for (std::size_t i = 0; i < f.size(); ++i) pairing.add(f[i] * gamma_[i] * m_[i]);
    if (!(pairing.value() > 0.0)) return 0.0;
    const double n = norm_of_rearrangement(space_, as_step(f));
    return n > 0.0 ? pairing.value() / n : 0.0;
  }

private:
  const SpaceSpec& space_;
  std::vector<double> x_;
  std::vector<double> gamma_;
  std::vector<double> m_;
};

struct Ascent {
  std::vector<double> f;
  double value;
};

Ascent ascend(const DualObjective& R, std::vector<double> f, int iterations) {
  double value = R(f);
  double eta = 0.25;
  const std::size_t n = f.size();
  std::vector<double> grad(n);
  for (int it = 0; it < iterations && eta > 1e-10; ++it) {
    const double scale = *std::max_element(f.begin(), f.end());
    if (!(scale > 0.0)) break;
    for (auto& v : f) v /= scale;
    const double delta = 1e-6;
    double gnorm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      auto probe = f;
      probe[i] += delta;
      grad[i] = (R(probe) - value) / delta;
      gnorm += grad[i] * grad[i];
    }
    gnorm = std::sqrt(gnorm);
    if (!(gnorm > 0.0)) break;
    bool improved = false;
    while (eta > 1e-10) {
      std::vector<double> trial(n);
      for (std::size_t i = 0; i < n; ++i) trial[i] = f[i] + eta * grad[i] / gnorm;
      trial = project_nonincreasing(trial, R.measures());
      const double v = R(trial);
      if (v > value) {
        f = std::move(trial);
        value = v;
        eta *= 1.5;
        improved = true;
        break;
      }
      eta *= 0.5;
    }
    if (!improved) break;
  }
  return {std::move(f), value};
}

}  // namespace

AssociateEstimate associate_norm(const SpaceSpec& space, const StepFunction& g,
                                 const AssociateOptions& options) {
  AssociateEstimate out;
  if (!options.force_search) {
    if (auto dual = associate_space(space)) {
      out.exact = space.family() == SpaceSpec::Family::Lebesgue;
      out.equivalence_only = !out.exact;
      out.value = norm(*dual, g);
      return out;
    }
  }
  if (options.restarts < 1 || options.iterations < 1)
    throw Error(ErrorCode::InvalidArgument, "associate search needs restarts and iterations >= 1");
  const StepFunction gstar = decreasing_rearrangement(g);
  if (gstar.is_zero()) return out;

  const DualObjective R(space, gstar);
  const std::size_t n = R.size();
  std::vector<std::vector<double>> starts;
  for (std::size_t k = 0; k < n && starts.size() < static_cast<std::size_t>(options.restarts); ++k) {
    std::vector<double> f(n, 0.0);
    std::fill(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(k + 1), 1.0);
    starts.push_back(std::move(f));
  }
  for (double a : {0.5, 1.0, 2.0}) {
    if (starts.size() >= static_cast<std::size_t>(options.restarts)) break;
    std::vector<double> f(n);
    for (std::size_t i = 0; i < n; ++i) f[i] = std::pow(R.gamma()[i], a);
    starts.push_back(std::move(f));
  }
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  while (starts.size() < static_cast<std::size_t>(options.restarts)) {
    std::vector<double> f(n);
    for (auto& v : f) v = unif(rng);
    std::sort(f.begin(), f.end(), std::greater<>());
    starts.push_back(std::move(f));
  }

  Ascent best{{}, -1.0};
  for (auto& s : starts) {
    auto a = ascend(R, std::move(s), options.iterations);
    if (a.value > best.value) best = std::move(a);
  }
  out.value = std::max(0.0, best.value);
  const double n_best = norm_of_rearrangement(space, R.as_step(best.f));
  out.extremal = n_best > 0.0 ? R.as_step(best.f).scaled(1.0 / n_best) : R.as_step(best.f);
  return out;
}

}  // namespace rispace
