#include "rispace/spaces.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "rispace/error.hpp"
#include "rispace/numeric.hpp"

namespace rispace {

namespace {

std::string shortest(double x) {
  if (std::isinf(x)) return "inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void require_exponent(double p, const char* what) {
  if (!(p >= 1.0)) throw Error(ErrorCode::InvalidArgument, std::string(what) + " exponent must be >= 1");
}

bool torus_compatible(const StepFunction& f) {
  if (f.domain() == Domain::Torus) return true;
  if (f.domain() != Domain::HalfLine) return false;
  return f.is_zero() || f.breakpoints().back() <= kTwoPi * (1.0 + 1e-12);
}

}  // namespace

// ---------------------------------------------------------------------------
// SpaceSpec

SpaceSpec SpaceSpec::lebesgue(double p) {
  require_exponent(p, "Lebesgue");
  SpaceSpec s;
  s.family_ = Family::Lebesgue;
  s.p_ = p;
  return s;
}

SpaceSpec SpaceSpec::lorentz(double p, double q) {
  require_exponent(p, "Lorentz");
  if (!(q > 0.0)) throw Error(ErrorCode::InvalidArgument, "Lorentz second index must be positive");
  if (std::isinf(p) && !std::isinf(q))
    throw Error(ErrorCode::TrivialSpace, "L^{inf,q} with q < inf contains only 0");
  SpaceSpec s;
  s.family_ = Family::Lorentz;
  s.p_ = p;
  s.q_ = q;
  return s;
}

SpaceSpec SpaceSpec::lorentz_zygmund(double p, double q, double alpha) {
  require_exponent(p, "Lorentz-Zygmund");
  if (!(q >= 1.0)) throw Error(ErrorCode::InvalidArgument, "Lorentz-Zygmund q must be >= 1");
  SpaceSpec s;
  s.family_ = Family::LorentzZygmund;
  s.p_ = p;
  s.q_ = q;
  s.alpha_ = alpha;
  s.b_ = ParamFunction::slowly_varying(SlowlyVarying::iterated_log({alpha}));
  s.outer_ = std::make_shared<SpaceSpec>(lebesgue(q));
  return s;
}

SpaceSpec SpaceSpec::karamata(double p, ParamFunction b, SpaceSpec outer, LogWindow window) {
  require_exponent(p, "Lorentz-Karamata");
  if (!(window.t_min > 0.0) || !(window.t_max > window.t_min))
    throw Error(ErrorCode::InvalidArgument, "bad Lorentz-Karamata window");
  if (outer.torus_only())
    throw Error(ErrorCode::InvalidArgument, "outer space of a Lorentz-Karamata norm must live on the line");
  SpaceSpec s;
  s.family_ = Family::LorentzKaramata;
  s.p_ = p;
  s.b_ = std::move(b);
  s.outer_ = std::make_shared<SpaceSpec>(std::move(outer));
  s.window_ = window;
  return s;
}

SpaceSpec SpaceSpec::orlicz_lux(YoungFunction phi) {
  SpaceSpec s;
  s.family_ = Family::OrliczLux;
  s.phi_ = std::move(phi);
  return s;
}

SpaceSpec SpaceSpec::orlicz_amemiya(YoungFunction phi) {
  SpaceSpec s;
  s.family_ = Family::OrliczAmemiya;
  s.phi_ = std::move(phi);
  return s;
}

SpaceSpec SpaceSpec::llogl() {
  SpaceSpec s;
  s.family_ = Family::LlogL;
  return s;
}

SpaceSpec SpaceSpec::lexp() {
  SpaceSpec s;
  s.family_ = Family::Lexp;
  return s;
}

SpaceSpec SpaceSpec::grand(double p) {
  if (!(p > 1.0) || std::isinf(p)) throw Error(ErrorCode::InvalidArgument, "grand Lebesgue needs 1 < p < inf");
  SpaceSpec s;
  s.family_ = Family::GrandLebesgue;
  s.p_ = p;
  return s;
}

bool SpaceSpec::torus_only() const {
  return family_ == Family::LlogL || family_ == Family::Lexp || family_ == Family::GrandLebesgue;
}

std::string SpaceSpec::label() const {
  switch (family_) {
    case Family::Lebesgue: return std::isinf(p_) ? "lebesgue(inf)" : "lebesgue(" + shortest(p_) + ")";
    case Family::Lorentz: return "lorentz(" + shortest(p_) + "," + shortest(q_) + ")";
    case Family::LorentzZygmund:
      return "lz(" + shortest(p_) + "," + shortest(q_) + "," + shortest(alpha_) + ")";
    case Family::LorentzKaramata:
      return "karamata(p=" + shortest(p_) + ",b=\"" + b_.label() + "\",E=" + outer_->label() + ")";
    case Family::OrliczLux: return "orlicz(lux,\"" + phi_.label() + "\")";
    case Family::OrliczAmemiya: return "orlicz(amemiya,\"" + phi_.label() + "\")";
    case Family::LlogL: return "llogl";
    case Family::Lexp: return "lexp";
    case Family::GrandLebesgue: return "grand(" + shortest(p_) + ")";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Orlicz

double modular(const YoungFunction& phi, const StepFunction& f, double lambda) {
  numeric::CompensatedSum s;
  for (std::size_t i = 0; i < f.cell_count(); ++i) {
    const double a = std::abs(f.values()[i]);
    if (a == 0.0) continue;
    const double v = phi(a / lambda);
    if (std::isinf(v)) return kInfinity;
    s.add(v * f.cell_measure(i));
  }
  return s.value();
}

namespace {

double modular_pl(const YoungFunction& phi, const PiecewiseLinear& h, double lambda) {
  numeric::CompensatedSum s;
  const auto x = h.breakpoints();
  const auto L = h.left_values();
  const auto R = h.right_values();
  for (std::size_t i = 0; i < h.cell_count(); ++i) {
    const Complex a = L[i], b = R[i];
    if (a == Complex(0.0) && b == Complex(0.0)) continue;
    auto integrand = [&](double u) { return phi(std::abs(a + (b - a) * u) / lambda); };
    const double w = x[i + 1] - x[i];
    double value;
    const bool real = a.imag() == 0.0 && b.imag() == 0.0;
    if (real && a.real() * b.real() < 0.0) {
      const double z = a.real() / (a.real() - b.real());
      value = numeric::integrate_gauss(integrand, 0.0, z, 2, 16) +
              numeric::integrate_gauss(integrand, z, 1.0, 2, 16);
    } else {
      value = numeric::integrate_gauss(integrand, 0.0, 1.0, 2, 16);
    }
    if (std::isinf(value)) return kInfinity;
    s.add(value * w);
  }
  return s.value();
}

/// inf{lambda > 0 : M(lambda) <= 1} for a nonincreasing modular M.
double luxemburg_from_modular(const std::function<double(double)>& M, double scale) {
  if (!(scale > 0.0)) return 0.0;
  double hi = scale;
  int guard = 0;
  while (!(M(hi) <= 1.0)) {
    hi *= 2.0;
    if (++guard > 4000) throw Error(ErrorCode::NotConverged, "Luxemburg bracket did not close");
  }
  double lo = hi;
  guard = 0;
  do {
    lo *= 0.5;
    if (++guard > 4000) return 0.0;
  } while (M(lo) <= 1.0);
  // M(lo) > 1 >= M(hi); bisect in log scale.
  double a = std::log(lo), b = std::log(hi);
  for (int it = 0; it < 200 && (b - a) > 1e-15; ++it) {
    const double m = 0.5 * (a + b);
    if (M(std::exp(m)) <= 1.0)
      b = m;
    else
      a = m;
  }
  return std::exp(b);
}

double amemiya_from_modular(const std::function<double(double)>& M, double scale) {
  if (!(scale > 0.0)) return 0.0;
  auto objective = [&](double u) {
    const double k = std::exp(u) / scale;
    const double m = M(k);
    return std::isinf(m) ? kInfinity : (1.0 + m) / k;
  };
  constexpr double lo = -30.0, hi = 60.0, step = 0.25;
  double best_u = lo, best = objective(lo);
  for (double u = lo + step; u <= hi + 1e-12; u += step) {
    const double v = objective(u);
    if (v < best) {
      best = v;
      best_u = u;
    }
  }
  const auto refined = numeric::golden_section_minimize(objective, best_u - step, best_u + step, 1e-14, 300);
  return std::min(best, refined.value);
}

}  // namespace

double luxemburg_norm(const YoungFunction& phi, const StepFunction& f) {
  return luxemburg_from_modular([&](double l) { return modular(phi, f, l); }, f.sup_abs());
}

double luxemburg_norm(const YoungFunction& phi, const PiecewiseLinear& h) {
  return luxemburg_from_modular([&](double l) { return modular_pl(phi, h, l); }, h.sup_abs());
}

double amemiya_norm(const YoungFunction& phi, const StepFunction& f) {
  return amemiya_from_modular([&](double k) { return modular(phi, f, 1.0 / k); }, f.sup_abs());
}

double amemiya_norm(const YoungFunction& phi, const PiecewiseLinear& h) {
  return amemiya_from_modular([&](double k) { return modular_pl(phi, h, 1.0 / k); }, h.sup_abs());
}

// ---------------------------------------------------------------------------
// Lorentz and Lorentz-Karamata

namespace {

double lorentz_on_rearrangement(double p, double q, const StepFunction& fstar) {
  const auto s = fstar.breakpoints();
  const auto c = fstar.values();
  if (std::isinf(p)) return fstar.sup_abs();
  if (std::isinf(q)) {
    double m = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) m = std::max(m, c[k].real() * std::pow(s[k + 1], 1.0 / p));
    return m;
  }
  numeric::CompensatedSum acc;
  const double r = q / p;
  for (std::size_t k = 0; k < c.size(); ++k)
    acc.add(std::pow(c[k].real(), q) * (p / q) * (std::pow(s[k + 1], r) - std::pow(s[k], r)));
  return std::pow(acc.value(), 1.0 / q);
}

struct LogPiece {
  double x0;
  double x1;
  double value;  // f* on the piece
};

/// Pieces of f*(e^x) inside the window, split at x = 0.
std::vector<LogPiece> log_pieces(const StepFunction& fstar, const LogWindow& w) {
  std::vector<LogPiece> out;
  const auto s = fstar.breakpoints();
  const auto c = fstar.values();
  const double xmin = std::log(w.t_min), xmax = std::log(w.t_max);
  for (std::size_t k = 0; k < c.size(); ++k) {
    const double a = s[k] > 0.0 ? std::max(std::log(s[k]), xmin) : xmin;
    const double b = std::min(std::log(s[k + 1]), xmax);
    if (!(b > a)) continue;
    if (a < 0.0 && b > 0.0) {
      out.push_back({a, 0.0, c[k].real()});
      out.push_back({0.0, b, c[k].real()});
    } else {
      out.push_back({a, b, c[k].real()});
    }
  }
  return out;
}

double karamata_on_rearrangement(double p, const ParamFunction& b, const SpaceSpec& outer,
                                 const StepFunction& fstar, const LogWindow& w) {
  if (fstar.is_zero()) return 0.0;
  const double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
  auto weight = [&](double x) { return std::exp(x * inv_p) * b(std::exp(x)); };
  const auto pieces = log_pieces(fstar, w);

  if (outer.family() == SpaceSpec::Family::Lebesgue && !outer.is_linf()) {
    const double q = outer.p();
    numeric::CompensatedSum acc;
    for (const auto& pc : pieces) {
      const int panels = std::max(1, static_cast<int>(std::ceil(pc.x1 - pc.x0)));
      const double I = numeric::integrate_gauss([&](double x) { return std::pow(weight(x), q); }, pc.x0,
                                                pc.x1, panels, 16);
      acc.add(std::pow(pc.value, q) * I);
    }
    return std::pow(acc.value(), 1.0 / q);
  }
  if (outer.is_linf()) {
    double best = 0.0;
    for (const auto& pc : pieces) {
      const int n = std::max(2, static_cast<int>(std::ceil((pc.x1 - pc.x0) * 32.0)));
      double arg = pc.x0, top = 0.0;
      for (int i = 0; i <= n; ++i) {
        const double x = pc.x0 + (pc.x1 - pc.x0) * i / n;
        const double v = weight(x);
        if (v > top) {
          top = v;
          arg = x;
        }
      }
      const double h = (pc.x1 - pc.x0) / n;
      const auto m = numeric::golden_section_minimize([&](double x) { return -weight(x); },
                                                      std::max(pc.x0, arg - h), std::min(pc.x1, arg + h));
      best = std::max(best, pc.value * std::max(top, -m.value));
    }
    return best;
  }
  // General outer space: sample the profile on cells of width <= 1/16 in x.
  std::vector<double> xs;
  std::vector<Complex> vs;
  for (const auto& pc : pieces) {
    const int n = std::max(1, static_cast<int>(std::ceil((pc.x1 - pc.x0) * 16.0)));
    if (xs.empty() || xs.back() != pc.x0) {
      if (!xs.empty()) vs.push_back(0.0);
      xs.push_back(pc.x0);
    }
    for (int i = 0; i < n; ++i) {
      const double a = pc.x0 + (pc.x1 - pc.x0) * i / n;
      const double c = i + 1 == n ? pc.x1 : pc.x0 + (pc.x1 - pc.x0) * (i + 1) / n;
      vs.push_back(pc.value * weight(0.5 * (a + c)));
      xs.push_back(c);
    }
  }
  return norm(outer, StepFunction(Domain::RealLine, std::move(xs), std::move(vs)));
}

}  // namespace

double lorentz_norm(double p, double q, const StepFunction& f) {
  return lorentz_on_rearrangement(p, q, decreasing_rearrangement(f));
}

void check_karamata_admissible(const SpaceSpec& space) {
  if (space.family() != SpaceSpec::Family::LorentzKaramata || !std::isinf(space.p())) return;
  const auto& b = space.weight();
  const auto& E = space.outer();
  const double T0 = -std::log(space.window().t_min);
  auto tail = [&](double T) {
    if (E.is_linf()) {
      double m = 0.0;
      const int n = static_cast<int>(T * 32.0);
      for (int i = 0; i <= n; ++i) m = std::max(m, b(std::exp(-T * i / n)));
      return m;
    }
    const double q = E.family() == SpaceSpec::Family::Lebesgue ? E.p() : 1.0;
    return numeric::integrate_gauss([&](double x) { return std::pow(b(std::exp(x)), q); }, -T, 0.0,
                                    static_cast<int>(std::ceil(T)), 16);
  };
  const double v1 = tail(T0), v2 = tail(2 * T0), v4 = tail(4 * T0);
  if (!numeric::doubling_converged(v1, v2, v4))
    throw Error(ErrorCode::TrivialSpace, space.label() + ": ||b||_{E~(0,1)} does not stabilise under window doubling");
}

double karamata_norm(double p, const ParamFunction& b, const SpaceSpec& outer, const StepFunction& f,
                     LogWindow window) {
  return karamata_on_rearrangement(p, b, outer, decreasing_rearrangement(f), window);
}

// ---------------------------------------------------------------------------
// Torus spaces

double llogl_norm(const StepFunction& f) {
  if (!torus_compatible(f)) throw Error(ErrorCode::DomainMismatch, "L log L norm needs a torus function");
  return MaximalFunction(f).integral(0.0, kTwoPi);
}

double lexp_norm(const StepFunction& f) {
  if (!torus_compatible(f)) throw Error(ErrorCode::DomainMismatch, "L_exp norm needs a torus function");
  const auto fstar = decreasing_rearrangement(f);
  const auto s = fstar.breakpoints();
  const auto c = fstar.values();
  double best = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    const double t = std::min(s[k + 1], kTwoPi);
    best = std::max(best, c[k].real() / (1.0 + std::log(kTwoPi / t)));
  }
  return best;
}

double grand_lebesgue_norm(double p, const StepFunction& f) {
  if (!torus_compatible(f)) throw Error(ErrorCode::DomainMismatch, "grand Lebesgue norm needs a torus function");
  if (f.is_zero()) return 0.0;
  const MaximalFunction F(f);
  std::vector<double> ts;
  for (double s : F.nodes())
    if (s > 0.0 && s < kTwoPi) ts.push_back(s);
  ts.push_back(1.0);
  const int n = 1024;
  const double lo = kTwoPi * 0x1p-40;
  for (int i = 0; i < n; ++i) ts.push_back(lo * std::pow(kTwoPi / lo, static_cast<double>(i) / n));
  std::sort(ts.begin(), ts.end(), std::greater<>());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  double tail = 0.0, prev = kTwoPi, best = 0.0;
  for (double t : ts) {
    tail += F.integral_pow(t, prev, p);
    prev = t;
    best = std::max(best, std::pow(ell(1, t), -1.0 / p) * std::pow(tail, 1.0 / p));
  }
  return best;
}

// ---------------------------------------------------------------------------
// Dispatch

double norm_of_rearrangement(const SpaceSpec& space, const StepFunction& fstar) {
  using F = SpaceSpec::Family;
  switch (space.family()) {
    case F::Lebesgue: return lp_norm(fstar, space.p());
    case F::Lorentz: return lorentz_on_rearrangement(space.p(), space.q(), fstar);
    case F::LorentzZygmund:
    case F::LorentzKaramata:
      check_karamata_admissible(space);
      return karamata_on_rearrangement(space.p(), space.weight(), space.outer(), fstar, space.window());
    case F::OrliczLux: return luxemburg_norm(space.young(), fstar);
    case F::OrliczAmemiya: return amemiya_norm(space.young(), fstar);
    case F::LlogL: return llogl_norm(fstar);
    case F::Lexp: return lexp_norm(fstar);
    case F::GrandLebesgue: return grand_lebesgue_norm(space.p(), fstar);
  }
  return 0.0;
}

double norm(const SpaceSpec& space, const StepFunction& f) {
  using F = SpaceSpec::Family;
  if (space.torus_only() && !torus_compatible(f))
    throw Error(ErrorCode::DomainMismatch, space.label() + " is defined on the torus, got " +
                                               std::string(to_string(f.domain())));
  switch (space.family()) {
    case F::Lebesgue: return lp_norm(f, space.p());
    case F::OrliczLux: return luxemburg_norm(space.young(), f);
    case F::OrliczAmemiya: return amemiya_norm(space.young(), f);
    case F::LlogL: return llogl_norm(f);
    case F::Lexp: return lexp_norm(f);
    case F::GrandLebesgue: return grand_lebesgue_norm(space.p(), f);
    default: return norm_of_rearrangement(space, decreasing_rearrangement(f));
  }
}

double norm(const SpaceSpec& space, const PiecewiseLinear& h, int refine) {
  using F = SpaceSpec::Family;
  if (space.torus_only() && h.domain() != Domain::Torus)
    throw Error(ErrorCode::DomainMismatch, space.label() + " is defined on the torus");
  switch (space.family()) {
    case F::Lebesgue: return lp_norm(h, space.p());
    case F::OrliczLux: return luxemburg_norm(space.young(), h);
    case F::OrliczAmemiya: return amemiya_norm(space.young(), h);
    default: return norm(space, h.to_step(refine));
  }
}

std::optional<SpaceSpec> associate_space(const SpaceSpec& space) {
  using F = SpaceSpec::Family;
  switch (space.family()) {
    case F::Lebesgue: {
      const double p = space.p();
      if (p == 1.0) return SpaceSpec::linf();
      if (std::isinf(p)) return SpaceSpec::lebesgue(1.0);
      return SpaceSpec::lebesgue(p / (p - 1.0));
    }
    case F::LlogL: return SpaceSpec::lexp();
    case F::Lexp: return SpaceSpec::llogl();
    default: return std::nullopt;
  }
}

}  // namespace rispace
