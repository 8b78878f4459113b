#include "rispace/numeric.hpp"

#include <array>
#include <vector>

#include "rispace/error.hpp"

namespace rispace {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DomainMismatch: return "DomainMismatch";
    case ErrorCode::UnsupportedDomain: return "UnsupportedDomain";
    case ErrorCode::GridOverflow: return "GridOverflow";
    case ErrorCode::NotConverged: return "NotConverged";
    case ErrorCode::TrivialSpace: return "TrivialSpace";
    case ErrorCode::TruncationDominant: return "TruncationDominant";
    case ErrorCode::NonMonotoneInverse: return "NonMonotoneInverse";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::ExponentMismatch: return "ExponentMismatch";
    case ErrorCode::RepresentationFailed: return "RepresentationFailed";
    case ErrorCode::EndpointCertificateFailed: return "EndpointCertificateFailed";
    case ErrorCode::DegreeOverflow: return "DegreeOverflow";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

namespace numeric {

double compensated_sum(std::span<const double> xs) {
  CompensatedSum s;
  for (double x : xs) s.add(x);
  return s.value();
}

Minimum golden_section_minimize(const std::function<double(double)>& f, double a, double b,
                                double x_tol, int max_iter) {
  constexpr double kInvPhi = 0.6180339887498948482;
  Minimum best{a, f(a)};
  const double fb = f(b);
  if (fb < best.value) best = {b, fb};
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < max_iter && (b - a) > x_tol * (1.0 + std::abs(a) + std::abs(b)); ++it) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  if (fc < best.value) best = {c, fc};
  if (fd < best.value) best = {d, fd};
  return best;
}

namespace {

struct RuleStorage {
  std::vector<double> nodes;
  std::vector<double> weights;
};

RuleStorage build_rule(int n) {
  RuleStorage r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    r.nodes[i] = x;
    r.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

const RuleStorage& rule(int order) {
  static const RuleStorage r8 = build_rule(8);
  static const RuleStorage r16 = build_rule(16);
  static const RuleStorage r32 = build_rule(32);
  switch (order) {
    case 8: return r8;
    case 16: return r16;
    case 32: return r32;
    default: throw Error(ErrorCode::InvalidArgument, "unsupported Gauss-Legendre order");
  }
}

}  // namespace

GaussRule gauss_legendre(int order) {
  const auto& r = rule(order);
  return {r.nodes, r.weights};
}

double integrate_gauss(const std::function<double(double)>& f, double a, double b, int panels,
                       int order) {
  if (!(b > a)) return 0.0;
  const auto g = gauss_legendre(order);
  const double w = (b - a) / panels;
  CompensatedSum total;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * w;
    const double mid = lo + 0.5 * w;
    for (std::size_t i = 0; i < g.nodes.size(); ++i)
      total.add(0.5 * w * g.weights[i] * f(mid + 0.5 * w * g.nodes[i]));
  }
  return total.value();
}

double bisect_root(const std::function<double(double)>& f, double lo, double hi, double rel_tol,
                   int max_iter) {
  double flo = f(lo);
  if (flo == 0.0) return lo;
  for (int it = 0; it < max_iter; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (hi - lo <= rel_tol * std::max(std::abs(lo), std::abs(hi))) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

bool doubling_converged(double v1, double v2, double v4) {
  if (!std::isfinite(v4)) return false;
  const double d1 = v2 - v1;
  const double d2 = v4 - v2;
  if (d2 <= 1e-9 * std::max(v4, 1e-300)) return true;
  return d2 <= 0.9 * d1;
}

}  // namespace numeric

}  // namespace rispace
