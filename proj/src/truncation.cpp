#include <algorithm>
#include <cmath>

#include "rispace/error.hpp"
#include "rispace/interp.hpp"
#include "rispace/numeric.hpp"

namespace rispace {

StepFunction excess_part(const StepFunction& f, double c) {
  std::vector<double> x(f.breakpoints().begin(), f.breakpoints().end());
  std::vector<Complex> v(f.values().begin(), f.values().end());
  for (auto& z : v) {
    const double a = std::abs(z);
    z = a > c ? z * ((a - c) / a) : Complex(0.0);
  }
  return StepFunction(f.domain(), std::move(x), std::move(v));
}

StepFunction clamp_part(const StepFunction& f, double c) {
  std::vector<double> x(f.breakpoints().begin(), f.breakpoints().end());
  std::vector<Complex> v(f.values().begin(), f.values().end());
  for (auto& z : v) {
    const double a = std::abs(z);
    if (a > c) z *= c / a;
  }
  return StepFunction(f.domain(), std::move(x), std::move(v));
}

/// Norms of the excess (v - c)_+ and clamp min(v, c) of a nonincreasing profile
/// (values v_0 > v_1 > ... with level-set measures m_i) in one space.
class KFunctional::PartNorms {
public:
  PartNorms(const SpaceSpec& space, const std::vector<double>& v, const std::vector<double>& m)
      : space_(space), v_(v), m_(m) {
    const std::size_t n = v.size();
    s_.assign(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) s_[i + 1] = s_[i] + m[i];
    using F = SpaceSpec::Family;
    if (space.family() == F::Lebesgue && space.is_linf()) {
      kind_ = Kind::Sup;
    } else if (space.family() == F::Lebesgue || space.family() == F::LlogL) {
      q_ = space.family() == F::LlogL ? 1.0 : space.p();
      w_ = m;
      if (space.family() == F::LlogL) {
        auto prim = [](double s) { return s > 0.0 ? s * std::log(kTwoPi / s) + s : 0.0; };
        for (std::size_t i = 0; i < n; ++i) w_[i] = prim(s_[i + 1]) - prim(s_[i]);
      }
      const bool integral = q_ == std::floor(q_) && q_ <= 8.0;
      kind_ = integral ? Kind::IntegerPower : Kind::RealPower;
      linear_ = q_ == 1.0;
      W_.assign(n + 1, 0.0);
      for (std::size_t i = 0; i < n; ++i) W_[i + 1] = W_[i] + w_[i];
      suffix_.assign(n + 1, 0.0);
      for (std::size_t i = n; i-- > 0;) suffix_[i] = suffix_[i + 1] + std::pow(v[i], q_) * w_[i];
      if (kind_ == Kind::IntegerPower) build_power_sums();
    } else if (space.family() == F::Lexp) {
      // sup of v_i / (1 + log(2pi / s_{i+1})): the weights increase with i
      kind_ = Kind::Exp;
      w_.resize(n);
      for (std::size_t i = 0; i < n; ++i) w_[i] = 1.0 / (1.0 + std::log(kTwoPi / std::min(s_[i + 1], kTwoPi)));
      suffix_.assign(n + 1, 0.0);
      for (std::size_t i = n; i-- > 0;) suffix_[i] = std::max(suffix_[i + 1], v[i] * w_[i]);
    } else {
      kind_ = Kind::Generic;
      linear_ = false;
    }
    if (kind_ == Kind::Sup) linear_ = true;
  }

  bool linear() const { return linear_; }

  /// Index of the last cell with v_i > c, or -1.
  std::ptrdiff_t segment(double c) const {
    const auto it = std::partition_point(v_.begin(), v_.end(), [c](double x) { return x > c; });
    return static_cast<std::ptrdiff_t>(it - v_.begin()) - 1;
  }

  double excess(double c) const {
    const auto j = segment(c);
    if (j < 0) return 0.0;
    switch (kind_) {
      case Kind::Sup: return v_.front() - c;
      case Kind::IntegerPower: {
        const int q = static_cast<int>(q_);
        const auto& P = sums_[static_cast<std::size_t>(j)];
        const double d = v_[static_cast<std::size_t>(j)] - c;
        double total = 0.0;
        for (int r = 0; r <= q; ++r) total += binom(q, r) * std::pow(d, q - r) * P[static_cast<std::size_t>(r)];
        return finish(total);
      }
      case Kind::RealPower: {
        numeric::CompensatedSum acc;
        for (std::ptrdiff_t i = 0; i <= j; ++i)
          acc.add(std::pow(v_[static_cast<std::size_t>(i)] - c, q_) * w_[static_cast<std::size_t>(i)]);
        return finish(acc.value());
      }
      case Kind::Exp: {
        double m = 0.0;
        for (std::ptrdiff_t i = 0; i <= j; ++i)
          m = std::max(m, (v_[static_cast<std::size_t>(i)] - c) * w_[static_cast<std::size_t>(i)]);
        return m;
      }
      case Kind::Generic: {
        std::vector<double> x(s_.begin(), s_.begin() + j + 2);
        std::vector<Complex> vals(static_cast<std::size_t>(j + 1));
        for (std::ptrdiff_t i = 0; i <= j; ++i) vals[static_cast<std::size_t>(i)] = v_[static_cast<std::size_t>(i)] - c;
        return norm_of_rearrangement(space_, StepFunction(Domain::HalfLine, std::move(x), std::move(vals)));
      }
    }
    return 0.0;
  }

  double clamp(double c) const {
    const auto j = segment(c);
    if (c <= 0.0) return 0.0;
    switch (kind_) {
      case Kind::Sup: return v_.empty() ? 0.0 : std::min(c, v_.front());
      case Kind::IntegerPower:
      case Kind::RealPower: {
        const auto k = static_cast<std::size_t>(j + 1);
        return finish(std::pow(c, q_) * W_[k] + suffix_[k]);
      }
      case Kind::Exp: {
        const auto k = static_cast<std::size_t>(j + 1);
        return std::max(j >= 0 ? c * w_[static_cast<std::size_t>(j)] : 0.0, suffix_[k]);
      }
      case Kind::Generic: {
        std::vector<Complex> vals(v_.size());
        for (std::size_t i = 0; i < v_.size(); ++i) vals[i] = std::min(v_[i], c);
        return norm_of_rearrangement(space_, StepFunction(Domain::HalfLine, s_, std::move(vals)));
      }
    }
    return 0.0;
  }

private:
  enum class Kind { Sup, IntegerPower, RealPower, Exp, Generic };

  static double binom(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
  }

  double finish(double sum) const { return q_ == 1.0 ? sum : std::pow(std::max(sum, 0.0), 1.0 / q_); }

  /// sums_[j][r] = sum_{i <= j} (v_i - v_j)^r w_i, every term nonnegative.
  void build_power_sums() {
    const int q = static_cast<int>(q_);
    sums_.assign(v_.size(), std::vector<double>(static_cast<std::size_t>(q + 1), 0.0));
    std::vector<double> P(static_cast<std::size_t>(q + 1), 0.0);
    for (std::size_t j = 0; j < v_.size(); ++j) {
      if (j > 0) {
        const double delta = v_[j - 1] - v_[j];
        std::vector<double> shifted(P.size(), 0.0);
        for (int r = 0; r <= q; ++r)
          for (int s = 0; s <= r; ++s)
            shifted[static_cast<std::size_t>(r)] += binom(r, s) * std::pow(delta, r - s) * P[static_cast<std::size_t>(s)];
        P = std::move(shifted);
      }
      P[0] += w_[j];
      sums_[j] = P;
    }
  }

  const SpaceSpec& space_;
  const std::vector<double>& v_;
  const std::vector<double>& m_;
  Kind kind_ = Kind::Generic;
  double q_ = 1.0;
  bool linear_ = false;
  std::vector<double> s_;
  std::vector<double> w_;
  std::vector<double> W_;
  std::vector<double> suffix_;
  std::vector<std::vector<double>> sums_;
};

namespace {

bool endpoint_lebesgue(const SpaceSpec& s) {
  return s.family() == SpaceSpec::Family::Lebesgue && (s.p() == 1.0 || s.is_linf());
}

}  // namespace

KFunctional::KFunctional(const CoupleSpec& couple, const StepFunction& f) : couple_(couple) {
  const StepFunction fstar = decreasing_rearrangement(f);
  for (std::size_t i = 0; i < fstar.cell_count(); ++i) {
    values_.push_back(fstar.values()[i].real());
    measures_.push_back(fstar.cell_measure(i));
  }
  exact_ = couple.x0.family() == SpaceSpec::Family::Lebesgue &&
           couple.x1.family() == SpaceSpec::Family::Lebesgue &&
           (endpoint_lebesgue(couple.x0) || endpoint_lebesgue(couple.x1));
  if (values_.empty()) return;
  n0_ = norm_of_rearrangement(couple.x0, fstar);
  n1_ = norm_of_rearrangement(couple.x1, fstar);
  parts_[0] = std::make_shared<PartNorms>(couple_.x0, values_, measures_);
  parts_[1] = std::make_shared<PartNorms>(couple_.x1, values_, measures_);

  linear_ = parts_[0]->linear() && parts_[1]->linear();
  const int interior = linear_ ? 0 : 16;
  std::vector<double> levels(values_);
  levels.push_back(0.0);
  auto add = [&](double c) {
    const double e0 = parts_[0]->excess(c), c0 = parts_[0]->clamp(c);
    const double e1 = parts_[1]->excess(c), c1 = parts_[1]->clamp(c);
    lines_.push_back({e0, c1, c, SplitOrder::ExcessToX0});
    lines_.push_back({c0, e1, c, SplitOrder::ClampToX0});
  };
  for (std::size_t j = 0; j < levels.size(); ++j) {
    add(levels[j]);
    if (j + 1 < levels.size())
      for (int k = 1; k <= interior; ++k)
        add(levels[j] + (levels[j + 1] - levels[j]) * k / (interior + 1));
  }
  build_envelope();
}

void KFunctional::build_envelope() {
  std::vector<Line> sorted(lines_);
  std::sort(sorted.begin(), sorted.end(), [](const Line& p, const Line& q) {
    return p.b != q.b ? p.b > q.b : p.a < q.a;
  });
  // intersection abscissa of two lines with different slopes
  auto cross = [](const Line& p, const Line& q) { return (q.a - p.a) / (p.b - q.b); };
  hull_.clear();
  for (const auto& l : sorted) {
    if (!hull_.empty() && hull_.back().b == l.b) continue;
    while (hull_.size() >= 2 &&
           cross(hull_[hull_.size() - 2], l) <= cross(hull_[hull_.size() - 2], hull_.back()))
      hull_.pop_back();
    hull_.push_back(l);
  }
  cuts_.clear();
  for (std::size_t i = 0; i + 1 < hull_.size(); ++i) cuts_.push_back(cross(hull_[i], hull_[i + 1]));
  // Lines optimal only for t <= 0 are irrelevant.
  std::size_t drop = 0;
  while (drop < cuts_.size() && cuts_[drop] <= 0.0) ++drop;
  hull_.erase(hull_.begin(), hull_.begin() + static_cast<std::ptrdiff_t>(drop));
  cuts_.erase(cuts_.begin(), cuts_.begin() + static_cast<std::ptrdiff_t>(drop));
}

std::size_t KFunctional::locate(double t) const {
  return static_cast<std::size_t>(std::lower_bound(cuts_.begin(), cuts_.end(), t) - cuts_.begin());
}

double KFunctional::operator()(double t) const {
  if (!(t > 0.0)) throw Error(ErrorCode::InvalidArgument, "K-functional needs t > 0");
  if (hull_.empty()) return 0.0;
  const auto& l = hull_[locate(t)];
  return l.a + t * l.b;
}

Decomposition KFunctional::best(double t) const {
  if (hull_.empty()) return {};
  const auto& l = hull_[locate(t)];
  return {l.c, l.order, l.a + t * l.b};
}

Decomposition KFunctional::best(double t, SplitOrder order) const {
  Decomposition out;
  out.order = order;
  out.value = kInfinity;
  for (const auto& l : lines_) {
    if (l.order != order) continue;
    const double v = l.a + t * l.b;
    if (v < out.value) out = {l.c, order, v};
  }
  if (lines_.empty()) out.value = 0.0;
  return out;
}

double KFunctional::excess_norm(int space, double c) const {
  if (values_.empty()) return 0.0;
  return parts_[space == 0 ? 0 : 1]->excess(c);
}

double KFunctional::clamp_norm(int space, double c) const {
  if (values_.empty()) return 0.0;
  return parts_[space == 0 ? 0 : 1]->clamp(c);
}

double KFunctional::refined(double t) const {
  const double env = (*this)(t);
  // piecewise-linear parts: the envelope over the data levels is already exact
  if (hull_.empty() || linear_) return env;
  const auto d = best(t);
  // bracket the level by its neighbouring data values
  double lo = 0.0, hi = values_.front();
  for (double v : values_) {
    if (v > d.level) hi = v;
    if (v < d.level) {
      lo = v;
      break;
    }
  }
  auto objective = [&](double c) {
    if (d.order == SplitOrder::ExcessToX0) return excess_norm(0, c) + t * clamp_norm(1, c);
    return clamp_norm(0, c) + t * excess_norm(1, c);
  };
  const auto m = numeric::golden_section_minimize(objective, lo, hi, 1e-14, 200);
  return std::min(env, m.value);
}

double k_functional(const CoupleSpec& couple, double t, const StepFunction& f) {
  return KFunctional(couple, f).refined(t);
}

double j_functional(const CoupleSpec& couple, double t, const StepFunction& f) {
  if (!(t > 0.0)) throw Error(ErrorCode::InvalidArgument, "J-functional needs t > 0");
  return std::max(norm(couple.x0, f), t * norm(couple.x1, f));
}

double k_functional_grid_search(const CoupleSpec& couple, double t, const StepFunction& f, int levels) {
  if (f.cell_count() > 8) throw Error(ErrorCode::InvalidArgument, "grid search is limited to 8 cells");
  if (f.is_zero()) return 0.0;
  const std::size_t n = f.cell_count();
  std::vector<double> data;
  for (const auto& z : f.values()) data.push_back(std::abs(z));
  const double top = *std::max_element(data.begin(), data.end());
  std::vector<double> grid{0.0};
  grid.insert(grid.end(), data.begin(), data.end());
  for (int k = 1; k < levels; ++k) grid.push_back(top * k / levels);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  std::vector<std::vector<double>> choices(n);
  for (std::size_t i = 0; i < n; ++i)
    for (double g : grid)
      if (g <= data[i]) choices[i].push_back(g);

  const std::vector<double> x(f.breakpoints().begin(), f.breakpoints().end());
  std::vector<std::size_t> idx(n, 0);
  double best = kInfinity;
  while (true) {
    std::vector<Complex> v0(n), v1(n);
    for (std::size_t i = 0; i < n; ++i) {
      const Complex z = f.values()[i];
      const double a = std::abs(z);
      const Complex phase = a > 0.0 ? z / a : Complex(0.0);
      v1[i] = phase * choices[i][idx[i]];
      v0[i] = z - v1[i];
    }
    const double value = norm(couple.x0, StepFunction(f.domain(), x, v0)) +
                         t * norm(couple.x1, StepFunction(f.domain(), x, v1));
    best = std::min(best, value);
    std::size_t k = 0;
    while (k < n && ++idx[k] == choices[k].size()) idx[k++] = 0;
    if (k == n) break;
  }
  return best;
}

}  // namespace rispace
