#include <algorithm>
#include <charconv>
#include <cmath>

#include "rispace/error.hpp"
#include "rispace/interp.hpp"
#include "rispace/numeric.hpp"

namespace rispace {

namespace {

std::string shortest(double x) {
  char buf[32];
  auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

/// Step function on the line with cells [t_k - h/2, t_k + h/2).
StepFunction grid_step(double t0, double h, const std::vector<double>& values) {
  std::vector<double> x(values.size() + 1);
  for (std::size_t k = 0; k <= values.size(); ++k) x[k] = t0 - 0.5 * h + h * static_cast<double>(k);
  std::vector<Complex> v(values.begin(), values.end());
  return StepFunction(Domain::RealLine, std::move(x), std::move(v));
}

/// Norm of b(e^t) over [0, T] (sign = +1) or [-T, 0] (sign = -1), as a power
/// sum for finite Lebesgue outer spaces so that increments are additive.
double half_line_weight(const InterpParams& params, double T, int sign) {
  const double h = 1.0 / 16.0;
  const auto n = static_cast<std::size_t>(std::llround(T / h));
  std::vector<double> x(n + 1);
  std::vector<Complex> v(n);
  for (std::size_t k = 0; k <= n; ++k) x[k] = sign > 0 ? h * static_cast<double>(k) : -T + h * static_cast<double>(k);
  for (std::size_t k = 0; k < n; ++k) v[k] = params.weight(std::exp(0.5 * (x[k] + x[k + 1])));
  const StepFunction g(Domain::RealLine, std::move(x), std::move(v));
  if (!params.nested && params.outer.family() == SpaceSpec::Family::Lebesgue && !params.outer.is_linf())
    return std::pow(norm(params.outer, g), params.outer.p());
  return outer_norm(params, g);
}

}  // namespace

std::string InterpParams::outer_label() const {
  if (nested) return "kmethod(" + nested->couple.label() + ", " + nested->params.label() + ")";
  return outer.label();
}

std::string InterpParams::label() const {
  return "params(theta=" + shortest(theta) + ", b=\"" + weight.label() + "\", E=" + outer_label() +
         ", T=" + shortest(T) + ", h=" + shortest(h) + ")";
}

std::string_view to_string(Condition c) {
  switch (c) {
    case Condition::InteriorOK: return "InteriorOK";
    case Condition::Theta0OK: return "Theta0OK";
    case Condition::Theta1OK: return "Theta1OK";
    case Condition::Trivial: return "Trivial";
  }
  return "?";
}

Condition check_conditions(const InterpParams& params) {
  if (params.theta > 0.0 && params.theta < 1.0) return Condition::InteriorOK;
  if (params.theta != 0.0 && params.theta != 1.0) return Condition::Trivial;
  const int sign = params.theta == 0.0 ? 1 : -1;
  const double T = params.T;
  const double v1 = half_line_weight(params, T, sign);
  const double v2 = half_line_weight(params, 2 * T, sign);
  const double v4 = half_line_weight(params, 4 * T, sign);
  if (!numeric::doubling_converged(v1, v2, v4)) return Condition::Trivial;
  return sign > 0 ? Condition::Theta0OK : Condition::Theta1OK;
}

double outer_norm(const InterpParams& params, const StepFunction& g) {
  if (params.nested) return k_method(params.nested->couple, params.nested->params, g, true).value;
  return norm(params.outer, g);
}

KMethodResult k_method(const KFunctional& K, const InterpParams& params, bool override_checks) {
  if (!(params.T > 0.0) || !(params.h > 0.0))
    throw Error(ErrorCode::InvalidArgument, "window T and step h must be positive");
  if (params.theta < 0.0 || params.theta > 1.0)
    throw Error(ErrorCode::InvalidArgument, "theta must lie in [0, 1]");
  if (!override_checks && check_conditions(params) == Condition::Trivial)
    throw Error(ErrorCode::TrivialSpace, params.label() + " defines the trivial space");

  const long long N = std::llround(2.0 * params.T / params.h);
  if (N < 2 || N > 50'000'000) throw Error(ErrorCode::GridOverflow, "t-grid has " + std::to_string(N) + " cells");
  KMethodResult out;
  out.nodes.resize(static_cast<std::size_t>(N + 1));
  out.profile.resize(out.nodes.size());
  for (long long k = 0; k <= N; ++k) {
    const double t = -params.T + params.h * static_cast<double>(k);
    const double s = std::exp(t);
    const auto i = static_cast<std::size_t>(k);
    out.nodes[i] = t;
    out.profile[i] = std::exp(-params.theta * t) * params.weight(s) * K.refined(s);
  }
  const StepFunction g = grid_step(-params.T, params.h, out.profile);
  out.value = outer_norm(params, g);
  if (out.value == 0.0) return out;

  const double first = out.profile.front(), last = out.profile.back();
  if (!params.nested && params.outer.family() == SpaceSpec::Family::Lebesgue) {
    if (params.outer.is_linf()) {
      // only the part of the sup not attained inside the window
      const double inner = out.profile.size() > 2
                               ? *std::max_element(out.profile.begin() + 1, out.profile.end() - 1)
                               : 0.0;
      out.boundary_fraction = std::max(0.0, out.value - inner) / out.value;
    } else {
      const double q = params.outer.p();
      out.boundary_fraction = (std::pow(first, q) + std::pow(last, q)) * params.h / std::pow(out.value, q);
    }
  } else {
    std::vector<double> ends(out.profile.size(), 0.0);
    ends.front() = first;
    ends.back() = last;
    out.boundary_fraction = outer_norm(params, grid_step(-params.T, params.h, ends)) / out.value;
  }
  if (!override_checks && out.boundary_fraction > 0.01)
    throw Error(ErrorCode::TruncationDominant,
                "boundary cells carry " + shortest(out.boundary_fraction) + " of the norm; enlarge T");
  return out;
}

KMethodResult k_method(const CoupleSpec& couple, const InterpParams& params, const StepFunction& f,
                       bool override_checks) {
  return k_method(KFunctional(couple, f), params, override_checks);
}

double k_method_norm(const CoupleSpec& couple, const InterpParams& params, const StepFunction& f,
                     bool override_checks) {
  return k_method(couple, params, f, override_checks).value;
}

double pointwise_bound_ratio(const CoupleSpec& couple, const InterpParams& params, const StepFunction& f) {
  const auto r = k_method(couple, params, f);
  if (r.value == 0.0) return 0.0;
  return *std::max_element(r.profile.begin(), r.profile.end()) / r.value;
}

Representation build_representation(const CoupleSpec& couple, const StepFunction& f, double T, double H) {
  if (!(T > 0.0) || !(H > 0.0)) throw Error(ErrorCode::InvalidArgument, "T and H must be positive");
  Representation rep;
  rep.H = H;
  const int M = static_cast<int>(std::ceil(T / H));
  rep.first_index = -M;
  if (f.is_zero()) return rep;

  const KFunctional K(couple, f);
  int excess_votes = 0;
  for (int i = -M; i <= M; ++i)
    excess_votes += K.best(std::exp(i * H)).order == SplitOrder::ExcessToX0 ? 1 : -1;
  rep.order = excess_votes >= 0 ? SplitOrder::ExcessToX0 : SplitOrder::ClampToX0;

  // X1 part of the decomposition at scale s; it runs from f (small s) to 0.
  auto x1_part = [&](double s) {
    const double c = K.best(s, rep.order).level;
    return rep.order == SplitOrder::ExcessToX0 ? clamp_part(f, c) : excess_part(f, c);
  };
  StepFunction lower = x1_part(std::exp((-M - 0.5) * H));
  const StepFunction bottom = f - lower;
  for (int i = -M; i <= M; ++i) {
    StepFunction upper = x1_part(std::exp((i + 0.5) * H));
    StepFunction u = lower - upper;
    if (i == -M) u = u + bottom;
    if (i == M) u = u + upper;
    rep.pieces.push_back(std::move(u));
    lower = std::move(upper);
  }

  StepFunction sum(f.domain());
  for (const auto& u : rep.pieces) sum = sum + u;
  const StepFunction r = f - sum;
  const double scale = std::max(std::min(K.norm_x0(), K.norm_x1()), 1e-300);
  rep.residual = std::min(norm(couple.x0, r), norm(couple.x1, r)) / scale;
  if (rep.residual > 1e-8)
    throw Error(ErrorCode::RepresentationFailed, "telescoping residual " + shortest(rep.residual));
  return rep;
}

StepFunction j_profile(const CoupleSpec& couple, const InterpParams& params, const Representation& rep) {
  const std::size_t n = rep.pieces.size();
  if (n == 0) return StepFunction(Domain::RealLine);
  std::vector<double> a(n), b(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = norm(couple.x0, rep.pieces[i]);
    b[i] = norm(couple.x1, rep.pieces[i]);
  }
  const double H = rep.H;
  const double lo = (rep.first_index - 0.5) * H;
  const double hi = (rep.first_index + static_cast<double>(n) - 0.5) * H;
  const auto N = static_cast<long long>(std::ceil((hi - lo) / params.h));
  if (N > 50'000'000) throw Error(ErrorCode::GridOverflow, "J profile grid too fine");
  const double h = (hi - lo) / static_cast<double>(N);

  auto piece_at = [&](double t) {
    const auto i = static_cast<long long>(std::floor((t - lo) / H));
    return static_cast<std::size_t>(std::clamp<long long>(i, 0, static_cast<long long>(n) - 1));
  };
  auto J = [&](double t, std::size_t i) {
    return std::exp(-params.theta * t) * params.weight(std::exp(t)) * std::max(a[i], std::exp(t) * b[i]) / H;
  };
  std::vector<double> x(static_cast<std::size_t>(N) + 1);
  std::vector<Complex> v(static_cast<std::size_t>(N));
  for (long long k = 0; k <= N; ++k) x[static_cast<std::size_t>(k)] = lo + h * static_cast<double>(k);
  for (long long k = 0; k < N; ++k) {
    const double t0 = x[static_cast<std::size_t>(k)], t1 = x[static_cast<std::size_t>(k + 1)];
    // the cell may straddle a node boundary; take every piece it touches
    const std::size_t i0 = piece_at(t0), i1 = piece_at(std::nextafter(t1, t0));
    double m = 0.0;
    for (std::size_t i = i0; i <= i1; ++i) m = std::max({m, J(t0, i), J(t1, i)});
    v[static_cast<std::size_t>(k)] = m;
  }
  return StepFunction(Domain::RealLine, std::move(x), std::move(v));
}

JMethodResult j_method_upper(const CoupleSpec& couple, const InterpParams& params, const StepFunction& f,
                             double H) {
  JMethodResult out;
  out.representation = build_representation(couple, f, params.T, H);
  if (out.representation.pieces.empty()) return out;
  out.value = outer_norm(params, j_profile(couple, params, out.representation));
  return out;
}

double j_method_norm_upper(const CoupleSpec& couple, const InterpParams& params, const StepFunction& f,
                           double H) {
  return j_method_upper(couple, params, f, H).value;
}

}  // namespace rispace
