#include "rispace/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <tuple>

#include "rispace/error.hpp"
#include "rispace/numeric.hpp"

namespace rispace {

std::string_view to_string(Domain d) {
  switch (d) {
    case Domain::RealLine: return "RealLine";
    case Domain::HalfLine: return "HalfLine";
    case Domain::Torus: return "Torus";
    case Domain::Integers: return "Integers";
  }
  return "?";
}

Domain domain_from_string(std::string_view name) {
  if (name == "RealLine" || name == "R") return Domain::RealLine;
  if (name == "HalfLine" || name == "R+") return Domain::HalfLine;
  if (name == "Torus" || name == "T") return Domain::Torus;
  if (name == "Integers" || name == "Z") return Domain::Integers;
  throw Error(ErrorCode::InvalidArgument, "unknown domain '" + std::string(name) + "'");
}

namespace {

double reduce_torus(double x) {
  double r = std::fmod(x, kTwoPi);
  if (r < 0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

struct Piece {
  double a;
  double b;
  Complex v;
};

StepFunction from_pieces(Domain d, std::vector<Piece> pieces) {
  std::sort(pieces.begin(), pieces.end(), [](const Piece& p, const Piece& q) { return p.a < q.a; });
  std::vector<double> x;
  std::vector<Complex> v;
  for (const auto& p : pieces) {
    if (!(p.b > p.a)) continue;
    if (x.empty()) {
      x.push_back(p.a);
    } else if (p.a > x.back()) {
      v.push_back(0.0);
      x.push_back(p.a);
    }
    v.push_back(p.v);
    x.push_back(p.b);
  }
  return StepFunction(d, std::move(x), std::move(v));
}

}  // namespace

StepFunction::StepFunction(Domain d, std::vector<double> breakpoints, std::vector<Complex> values)
    : domain_(d), x_(std::move(breakpoints)), v_(std::move(values)) {
  if (v_.empty()) {
    x_.clear();
    return;
  }
  if (x_.size() != v_.size() + 1)
    throw Error(ErrorCode::InvalidArgument, "step function needs one more breakpoint than values");
  for (std::size_t i = 0; i < x_.size(); ++i) {
    if (!std::isfinite(x_[i])) throw Error(ErrorCode::InvalidArgument, "non-finite breakpoint");
    if (i > 0 && !(x_[i] > x_[i - 1]))
      throw Error(ErrorCode::InvalidArgument, "breakpoints must be strictly increasing");
  }
  for (const auto& c : v_)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw Error(ErrorCode::InvalidArgument, "non-finite step value");
  switch (d) {
    case Domain::Torus:
      if (x_.front() < 0.0 || x_.back() > kTwoPi * (1.0 + 1e-15))
        throw Error(ErrorCode::InvalidArgument, "torus breakpoints must lie in [0, 2pi]");
      x_.back() = std::min(x_.back(), kTwoPi);
      break;
    case Domain::HalfLine:
      if (x_.front() < 0.0) throw Error(ErrorCode::InvalidArgument, "half-line breakpoint < 0");
      break;
    case Domain::Integers:
      for (double x : x_)
        if (x != std::floor(x))
          throw Error(ErrorCode::InvalidArgument, "integer-domain breakpoints must be integers");
      break;
    case Domain::RealLine: break;
  }
  canonicalize();
}

StepFunction StepFunction::from_real(Domain d, std::vector<double> breakpoints,
                                     std::vector<double> values) {
  std::vector<Complex> v(values.begin(), values.end());
  return StepFunction(d, std::move(breakpoints), std::move(v));
}

StepFunction StepFunction::indicator(Domain d, double a, double b, Complex c) {
  return StepFunction(d, {a, b}, {c});
}

void StepFunction::canonicalize() {
  std::vector<double> x;
  std::vector<Complex> v;
  x.reserve(x_.size());
  v.reserve(v_.size());
  for (std::size_t i = 0; i < v_.size(); ++i) {
    if (!v.empty() && v.back() == v_[i]) {
      x.back() = x_[i + 1];
      continue;
    }
    if (v.empty()) x.push_back(x_[i]);
    v.push_back(v_[i]);
    x.push_back(x_[i + 1]);
  }
  std::size_t lo = 0;
  while (lo < v.size() && v[lo] == Complex(0.0)) ++lo;
  std::size_t hi = v.size();
  while (hi > lo && v[hi - 1] == Complex(0.0)) --hi;
  if (lo == hi) {
    x_.clear();
    v_.clear();
    return;
  }
  x_.assign(x.begin() + lo, x.begin() + hi + 1);
  v_.assign(v.begin() + lo, v.begin() + hi);
}

bool StepFunction::is_real() const {
  return std::all_of(v_.begin(), v_.end(), [](const Complex& c) { return c.imag() == 0.0; });
}

Complex StepFunction::operator()(double x) const {
  if (v_.empty()) return 0.0;
  if (domain_ == Domain::Torus) x = reduce_torus(x);
  if (x < x_.front() || x >= x_.back()) return 0.0;
  const auto it = std::upper_bound(x_.begin(), x_.end(), x);
  return v_[static_cast<std::size_t>(it - x_.begin()) - 1];
}

double StepFunction::support_measure() const {
  numeric::CompensatedSum s;
  for (std::size_t i = 0; i < v_.size(); ++i)
    if (v_[i] != Complex(0.0)) s.add(cell_measure(i));
  return s.value();
}

double StepFunction::sup_abs() const {
  double m = 0.0;
  for (const auto& c : v_) m = std::max(m, std::abs(c));
  return m;
}

StepFunction StepFunction::scaled(Complex c) const {
  std::vector<Complex> v(v_);
  for (auto& z : v) z *= c;
  return StepFunction(domain_, x_, std::move(v));
}

StepFunction StepFunction::abs() const {
  std::vector<Complex> v(v_.size());
  for (std::size_t i = 0; i < v_.size(); ++i) v[i] = std::abs(v_[i]);
  return StepFunction(domain_, x_, std::move(v));
}

StepFunction StepFunction::translated(double h) const {
  if (v_.empty() || h == 0.0) return *this;
  switch (domain_) {
    case Domain::Integers:
      if (h != std::floor(h))
        throw Error(ErrorCode::InvalidArgument, "integer shifts only on Integers");
      [[fallthrough]];
    case Domain::RealLine: {
      std::vector<double> x(x_);
      for (auto& t : x) t += h;
      return StepFunction(domain_, std::move(x), v_);
    }
    case Domain::HalfLine: {
      if (x_.front() + h < 0.0)
        throw Error(ErrorCode::InvalidArgument, "shift leaves the half line");
      std::vector<double> x(x_);
      for (auto& t : x) t += h;
      return StepFunction(domain_, std::move(x), v_);
    }
    case Domain::Torus: {
      const double s = reduce_torus(h);
      std::vector<Piece> pieces;
      for (std::size_t i = 0; i < v_.size(); ++i) {
        double a = x_[i] + s;
        double b = x_[i + 1] + s;
        if (a >= kTwoPi) {
          a -= kTwoPi;
          b -= kTwoPi;
        }
        if (b <= kTwoPi) {
          pieces.push_back({a, b, v_[i]});
        } else {
          pieces.push_back({a, kTwoPi, v_[i]});
          pieces.push_back({0.0, b - kTwoPi, v_[i]});
        }
      }
      return from_pieces(domain_, std::move(pieces));
    }
  }
  return *this;
}

namespace {

template <class Op>
StepFunction combine(const StepFunction& a, const StepFunction& b, Op op) {
  if (a.domain() != b.domain())
    throw Error(ErrorCode::DomainMismatch, "step functions live on different domains");
  std::vector<double> grid;
  grid.insert(grid.end(), a.breakpoints().begin(), a.breakpoints().end());
  grid.insert(grid.end(), b.breakpoints().begin(), b.breakpoints().end());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  if (grid.size() < 2) return StepFunction(a.domain());
  std::vector<Complex> v(grid.size() - 1);
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double mid = 0.5 * (grid[i] + grid[i + 1]);
    v[i] = op(a(mid), b(mid));
  }
  return StepFunction(a.domain(), std::move(grid), std::move(v));
}

}  // namespace

StepFunction operator+(const StepFunction& a, const StepFunction& b) {
  return combine(a, b, [](Complex p, Complex q) { return p + q; });
}

StepFunction operator-(const StepFunction& a, const StepFunction& b) {
  return combine(a, b, [](Complex p, Complex q) { return p - q; });
}

StepFunction operator*(const StepFunction& a, const StepFunction& b) {
  return combine(a, b, [](Complex p, Complex q) { return p * q; });
}

// ---------------------------------------------------------------------------
// Integrals and rearrangement

double integrate(const StepFunction& f) { return integrate_complex(f).real(); }

Complex integrate_complex(const StepFunction& f) {
  numeric::CompensatedSum re, im;
  for (std::size_t i = 0; i < f.cell_count(); ++i) {
    const double len = f.cell_measure(i);
    re.add(f.values()[i].real() * len);
    im.add(f.values()[i].imag() * len);
  }
  return {re.value(), im.value()};
}

double lp_integral(const StepFunction& f, double p) {
  if (!(p > 0.0) || !std::isfinite(p))
    throw Error(ErrorCode::InvalidArgument, "lp_integral needs finite p > 0");
  numeric::CompensatedSum s;
  for (std::size_t i = 0; i < f.cell_count(); ++i) {
    const double a = std::abs(f.values()[i]);
    s.add(std::pow(a, p) * f.cell_measure(i));
  }
  return s.value();
}

double lp_norm(const StepFunction& f, double p) {
  if (std::isinf(p)) return f.sup_abs();
  return std::pow(lp_integral(f, p), 1.0 / p);
}

double distribution_function(const StepFunction& f, double lambda) {
  if (lambda < 0.0) throw Error(ErrorCode::InvalidArgument, "distribution function needs lambda >= 0");
  numeric::CompensatedSum s;
  for (std::size_t i = 0; i < f.cell_count(); ++i)
    if (std::abs(f.values()[i]) > lambda) s.add(f.cell_measure(i));
  return s.value();
}

StepFunction decreasing_rearrangement(const StepFunction& f) {
  std::vector<std::pair<double, double>> cells;  // (|value|, measure)
  cells.reserve(f.cell_count());
  for (std::size_t i = 0; i < f.cell_count(); ++i) {
    const double a = std::abs(f.values()[i]);
    if (a > 0.0) cells.emplace_back(a, f.cell_measure(i));
  }
  std::stable_sort(cells.begin(), cells.end(),
                   [](const auto& p, const auto& q) { return p.first > q.first; });
  std::vector<double> x{0.0};
  std::vector<Complex> v;
  numeric::CompensatedSum pos;
  for (std::size_t i = 0; i < cells.size();) {
    const double value = cells[i].first;
    while (i < cells.size() && cells[i].first == value) pos.add(cells[i++].second);
    x.push_back(pos.value());
    v.push_back(value);
  }
  if (v.empty()) return StepFunction(Domain::HalfLine);
  return StepFunction(Domain::HalfLine, std::move(x), std::move(v));
}

// ---------------------------------------------------------------------------
// Maximal function f**

MaximalFunction::MaximalFunction(const StepFunction& f) : fstar_(decreasing_rearrangement(f)) {
  s_.assign(fstar_.breakpoints().begin(), fstar_.breakpoints().end());
  c_.resize(fstar_.cell_count());
  F_.assign(s_.size(), 0.0);
  numeric::CompensatedSum acc;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    c_[i] = fstar_.values()[i].real();
    acc.add(c_[i] * (s_[i + 1] - s_[i]));
    F_[i + 1] = acc.value();
  }
}

double MaximalFunction::primitive(double t) const {
  if (c_.empty() || t <= 0.0) return 0.0;
  if (t >= s_.back()) return F_.back();
  const auto k = static_cast<std::size_t>(std::upper_bound(s_.begin(), s_.end(), t) - s_.begin()) - 1;
  return F_[k] + c_[k] * (t - s_[k]);
}

double MaximalFunction::operator()(double t) const {
  if (c_.empty()) return 0.0;
  if (t <= 0.0) return c_.front();
  if (t <= s_[1]) return c_.front();
  return primitive(t) / t;
}

double MaximalFunction::integral(double a, double b) const {
  if (c_.empty() || !(b > a)) return 0.0;
  a = std::max(a, 0.0);
  numeric::CompensatedSum total;
  // Cells of f*: on [s_k, s_{k+1}] f**(t) = A/t + c with A = F_k - c s_k.
  for (std::size_t k = 0; k < c_.size(); ++k) {
    const double p = std::max(a, s_[k]);
    const double q = std::min(b, s_[k + 1]);
    if (!(q > p)) continue;
    const double A = F_[k] - c_[k] * s_[k];
    total.add(c_[k] * (q - p));
    if (A != 0.0) total.add(A * std::log(q / p));
  }
  if (b > s_.back()) {
    const double p = std::max(a, s_.back());
    total.add(F_.back() * std::log(b / p));
  }
  return total.value();
}

double MaximalFunction::integral_pow(double a, double b, double p) const {
  if (c_.empty() || !(b > a)) return 0.0;
  a = std::max(a, 0.0);
  numeric::CompensatedSum total;
  auto geometric_panels = [&](double lo, double hi, double A, double c) {
    // f** = A/t + c is smooth on [lo, hi] with lo > 0.
    const int panels = std::max(1, static_cast<int>(std::ceil(std::log2(hi / lo))) + 1);
    const double r = std::pow(hi / lo, 1.0 / panels);
    double left = lo;
    for (int i = 0; i < panels; ++i) {
      const double right = (i + 1 == panels) ? hi : left * r;
      total.add(numeric::integrate_gauss(
          [&](double t) { return std::pow(A / t + c, p); }, left, right, 1, 16));
      left = right;
    }
  };
  for (std::size_t k = 0; k < c_.size(); ++k) {
    const double lo = std::max(a, s_[k]);
    const double hi = std::min(b, s_[k + 1]);
    if (!(hi > lo)) continue;
    const double A = F_[k] - c_[k] * s_[k];
    if (A == 0.0 || lo == 0.0) {
      total.add(std::pow(c_[k], p) * (hi - lo));
    } else {
      geometric_panels(lo, hi, A, c_[k]);
    }
  }
  if (b > s_.back()) {
    const double lo = std::max(a, s_.back());
    const double Fp = std::pow(F_.back(), p);
    if (p == 1.0)
      total.add(Fp * std::log(b / lo));
    else
      total.add(Fp * (std::pow(b, 1.0 - p) - std::pow(lo, 1.0 - p)) / (1.0 - p));
  }
  return total.value();
}

StepFunction MaximalFunction::to_step(double t_min, double t_max, int cells_per_octave) const {
  if (!(t_min > 0.0) || !(t_max > t_min) || cells_per_octave < 1)
    throw Error(ErrorCode::InvalidArgument, "bad sampling window for f**");
  const int n = std::max(1, static_cast<int>(std::ceil(std::log2(t_max / t_min) * cells_per_octave)));
  const double r = std::pow(t_max / t_min, 1.0 / n);
  std::vector<double> x{0.0, t_min};
  std::vector<Complex> v{integral(0.0, t_min) / t_min};
  double left = t_min;
  for (int i = 0; i < n; ++i) {
    const double right = (i + 1 == n) ? t_max : left * r;
    v.push_back(integral(left, right) / (right - left));
    x.push_back(right);
    left = right;
  }
  return StepFunction(Domain::HalfLine, std::move(x), std::move(v));
}

// ---------------------------------------------------------------------------
// Piecewise linear

PiecewiseLinear::PiecewiseLinear(Domain d, std::vector<double> breakpoints,
                                 std::vector<Complex> left, std::vector<Complex> right)
    : domain_(d), x_(std::move(breakpoints)), left_(std::move(left)), right_(std::move(right)) {
  if (left_.size() != right_.size())
    throw Error(ErrorCode::InvalidArgument, "left/right value lists differ in length");
  if (left_.empty()) {
    x_.clear();
    return;
  }
  if (x_.size() != left_.size() + 1)
    throw Error(ErrorCode::InvalidArgument, "piecewise linear needs one more breakpoint than cells");
  for (std::size_t i = 1; i < x_.size(); ++i)
    if (!(x_[i] > x_[i - 1]))
      throw Error(ErrorCode::InvalidArgument, "breakpoints must be strictly increasing");
}

PiecewiseLinear PiecewiseLinear::continuous(Domain d, std::vector<double> knots,
                                            std::vector<Complex> values) {
  if (knots.size() != values.size())
    throw Error(ErrorCode::InvalidArgument, "knot/value size mismatch");
  if (knots.size() < 2) return PiecewiseLinear(d);
  std::vector<Complex> left(values.begin(), values.end() - 1);
  std::vector<Complex> right(values.begin() + 1, values.end());
  return PiecewiseLinear(d, std::move(knots), std::move(left), std::move(right));
}

PiecewiseLinear PiecewiseLinear::from_step(const StepFunction& f) {
  std::vector<double> x(f.breakpoints().begin(), f.breakpoints().end());
  std::vector<Complex> v(f.values().begin(), f.values().end());
  return PiecewiseLinear(f.domain(), std::move(x), v, v);
}

bool PiecewiseLinear::is_zero() const {
  for (std::size_t i = 0; i < left_.size(); ++i)
    if (left_[i] != Complex(0.0) || right_[i] != Complex(0.0)) return false;
  return true;
}

Complex PiecewiseLinear::operator()(double x) const {
  if (left_.empty()) return 0.0;
  if (domain_ == Domain::Torus) x = reduce_torus(x);
  if (x < x_.front() || x > x_.back()) return 0.0;
  if (x == x_.back()) return right_.back();
  const auto k = static_cast<std::size_t>(std::upper_bound(x_.begin(), x_.end(), x) - x_.begin()) - 1;
  const double u = (x - x_[k]) / (x_[k + 1] - x_[k]);
  return left_[k] + (right_[k] - left_[k]) * u;
}

double PiecewiseLinear::sup_abs() const {
  double m = 0.0;
  for (std::size_t i = 0; i < left_.size(); ++i)
    m = std::max({m, std::abs(left_[i]), std::abs(right_[i])});
  return m;
}

namespace {

double segment_lp_real(double a, double b, double len, double p) {
  if (a == 0.0 && b == 0.0) return 0.0;
  if ((a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0)) {
    const double ax = std::abs(a), bx = std::abs(b);
    const double r = len * ax / (ax + bx);
    return r * std::pow(ax, p) / (p + 1.0) + (len - r) * std::pow(bx, p) / (p + 1.0);
  }
  const double x = std::abs(a), y = std::abs(b);
  const double hi = std::max(x, y), lo = std::min(x, y);
  if (hi - lo <= 1e-3 * hi) {
    return numeric::integrate_gauss(
        [&](double s) { return std::pow(x + (y - x) * s, p); }, 0.0, 1.0, 1, 16) * len;
  }
  return len * (std::pow(hi, p + 1.0) - std::pow(lo, p + 1.0)) / ((p + 1.0) * (hi - lo));
}

double segment_lp_complex(Complex a, Complex b, double len, double p) {
  return len * numeric::integrate_gauss(
                   [&](double s) { return std::pow(std::abs(a + (b - a) * s), p); }, 0.0, 1.0, 4,
                   32);
}

}  // namespace

double PiecewiseLinear::lp_integral(double p) const {
  if (!(p > 0.0) || !std::isfinite(p))
    throw Error(ErrorCode::InvalidArgument, "lp_integral needs finite p > 0");
  numeric::CompensatedSum s;
  for (std::size_t i = 0; i < left_.size(); ++i) {
    const double len = x_[i + 1] - x_[i];
    const Complex a = left_[i], b = right_[i];
    if (a.imag() == 0.0 && b.imag() == 0.0)
      s.add(segment_lp_real(a.real(), b.real(), len, p));
    else
      s.add(segment_lp_complex(a, b, len, p));
  }
  return s.value();
}

Complex PiecewiseLinear::integral() const {
  numeric::CompensatedSum re, im;
  for (std::size_t i = 0; i < left_.size(); ++i) {
    const double len = x_[i + 1] - x_[i];
    const Complex m = 0.5 * (left_[i] + right_[i]) * len;
    re.add(m.real());
    im.add(m.imag());
  }
  return {re.value(), im.value()};
}

PiecewiseLinear PiecewiseLinear::scaled(Complex c) const {
  PiecewiseLinear out(*this);
  for (auto& z : out.left_) z *= c;
  for (auto& z : out.right_) z *= c;
  return out;
}

PiecewiseLinear operator+(const PiecewiseLinear& a, const PiecewiseLinear& b) {
  if (a.domain() != b.domain())
    throw Error(ErrorCode::DomainMismatch, "piecewise linear functions on different domains");
  if (a.cell_count() == 0) return b;
  if (b.cell_count() == 0) return a;
  std::vector<double> grid;
  grid.insert(grid.end(), a.x_.begin(), a.x_.end());
  grid.insert(grid.end(), b.x_.begin(), b.x_.end());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  // one-sided limits inside a cell [p, q] of the merged grid
  auto limits = [](const PiecewiseLinear& h, double p, double q) -> std::pair<Complex, Complex> {
    if (p < h.x_.front() || q > h.x_.back()) return {0.0, 0.0};
    const double mid = 0.5 * (p + q);
    const auto k =
        static_cast<std::size_t>(std::upper_bound(h.x_.begin(), h.x_.end(), mid) - h.x_.begin()) - 1;
    const double w = h.x_[k + 1] - h.x_[k];
    const Complex slope = (h.right_[k] - h.left_[k]) / w;
    return {h.left_[k] + slope * (p - h.x_[k]), h.left_[k] + slope * (q - h.x_[k])};
  };
  std::vector<Complex> left(grid.size() - 1), right(grid.size() - 1);
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const auto [la, ra] = limits(a, grid[i], grid[i + 1]);
    const auto [lb, rb] = limits(b, grid[i], grid[i + 1]);
    left[i] = la + lb;
    right[i] = ra + rb;
  }
  return PiecewiseLinear(a.domain(), std::move(grid), std::move(left), std::move(right));
}

StepFunction PiecewiseLinear::to_step(int refine) const {
  if (refine < 1) throw Error(ErrorCode::InvalidArgument, "refine must be >= 1");
  if (left_.empty()) return StepFunction(domain_);
  std::vector<double> x{x_.front()};
  std::vector<Complex> v;
  for (std::size_t i = 0; i < left_.size(); ++i) {
    const double w = x_[i + 1] - x_[i];
    for (int j = 0; j < refine; ++j) {
      const double u = (j + 0.5) / refine;
      v.push_back(left_[i] + (right_[i] - left_[i]) * u);
      x.push_back(j + 1 == refine ? x_[i + 1] : x_[i] + w * (j + 1) / refine);
    }
  }
  return StepFunction(domain_, std::move(x), std::move(v));
}

double lp_norm(const PiecewiseLinear& h, double p) {
  if (std::isinf(p)) return h.sup_abs();
  return std::pow(h.lp_integral(p), 1.0 / p);
}

// ---------------------------------------------------------------------------
// Convolution

namespace {

/// Antiderivative F(z) = \int_{-inf}^z f of a step function, exact.
class Antiderivative {
public:
  explicit Antiderivative(const StepFunction& f)
      : x_(f.breakpoints().begin(), f.breakpoints().end()), v_(f.values().begin(), f.values().end()) {
    F_.assign(x_.size(), 0.0);
    numeric::CompensatedSum re, im;
    for (std::size_t i = 0; i < v_.size(); ++i) {
      const double len = x_[i + 1] - x_[i];
      re.add(v_[i].real() * len);
      im.add(v_[i].imag() * len);
      F_[i + 1] = {re.value(), im.value()};
    }
  }

  Complex operator()(double z) const {
    if (v_.empty() || z <= x_.front()) return 0.0;
    if (z >= x_.back()) return F_.back();
    const auto k = static_cast<std::size_t>(std::upper_bound(x_.begin(), x_.end(), z) - x_.begin()) - 1;
    return F_[k] + v_[k] * (z - x_[k]);
  }

private:
  std::vector<double> x_;
  std::vector<Complex> v_;
  std::vector<Complex> F_;
};

/// Linear convolution on the real line evaluated at z.
Complex linear_convolution_at(const Antiderivative& F, const StepFunction& g, double z) {
  Complex acc = 0.0;
  const auto y = g.breakpoints();
  const auto b = g.values();
  for (std::size_t j = 0; j < b.size(); ++j) {
    if (b[j] == Complex(0.0)) continue;
    acc += b[j] * (F(z - y[j]) - F(z - y[j + 1]));
  }
  return acc;
}

StepFunction convolve_integers(const StepFunction& f, const StepFunction& g) {
  if (f.is_zero() || g.is_zero()) return StepFunction(Domain::Integers);
  auto expand = [](const StepFunction& h) {
    const auto x = h.breakpoints();
    const auto lo = static_cast<long long>(x.front());
    std::vector<Complex> out(static_cast<std::size_t>(x.back() - x.front()));
    for (std::size_t i = 0; i < h.cell_count(); ++i)
      for (auto n = static_cast<long long>(x[i]); n < static_cast<long long>(x[i + 1]); ++n)
        out[static_cast<std::size_t>(n - lo)] = h.values()[i];
    return std::make_pair(lo, out);
  };
  const auto [lf, af] = expand(f);
  const auto [lg, ag] = expand(g);
  std::vector<Complex> out(af.size() + ag.size() - 1);
  for (std::size_t i = 0; i < af.size(); ++i)
    for (std::size_t j = 0; j < ag.size(); ++j) out[i + j] += af[i] * ag[j];
  std::vector<double> x(out.size() + 1);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = static_cast<double>(lf + lg) + static_cast<double>(i);
  return StepFunction(Domain::Integers, std::move(x), std::move(out));
}

}  // namespace

PiecewiseLinear convolve_continuous(const StepFunction& f, const StepFunction& g) {
  if (f.domain() != g.domain())
    throw Error(ErrorCode::DomainMismatch, "convolution of functions on different domains");
  const Domain d = f.domain();
  if (d == Domain::HalfLine || d == Domain::Integers)
    throw Error(ErrorCode::UnsupportedDomain,
                std::string("continuous convolution is not defined on ") + std::string(to_string(d)));
  if (f.is_zero() || g.is_zero()) return PiecewiseLinear(d);

  std::vector<double> knots;
  knots.reserve(f.breakpoints().size() * g.breakpoints().size() + 2);
  for (double x : f.breakpoints())
    for (double y : g.breakpoints()) knots.push_back(x + y);
  const Antiderivative F(f);

  if (d == Domain::RealLine) {
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
    std::vector<Complex> values(knots.size());
    for (std::size_t i = 0; i < knots.size(); ++i) values[i] = linear_convolution_at(F, g, knots[i]);
    values.front() = 0.0;
    values.back() = 0.0;
    return PiecewiseLinear::continuous(d, std::move(knots), std::move(values));
  }

  // Torus: fold the linear convolution (supported in [0, 4pi]) back onto [0, 2pi).
  for (auto& z : knots) z = reduce_torus(z);
  knots.push_back(0.0);
  knots.push_back(kTwoPi);
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
  std::vector<Complex> values(knots.size());
  for (std::size_t i = 0; i < knots.size(); ++i)
    values[i] = linear_convolution_at(F, g, knots[i]) + linear_convolution_at(F, g, knots[i] + kTwoPi);
  return PiecewiseLinear::continuous(d, std::move(knots), std::move(values));
}

ConvolutionResult convolve(const StepFunction& f, const StepFunction& g) {
  if (f.domain() != g.domain())
    throw Error(ErrorCode::DomainMismatch, "convolution of functions on different domains");
  if (f.domain() == Domain::Integers) return convolve_integers(f, g);
  return convolve_continuous(f, g);
}

}  // namespace rispace
