#include "rispace/young_function.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "rispace/error.hpp"
#include "rispace/numeric.hpp"

namespace rispace {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string shortest(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace

YoungFunction YoungFunction::power(double p, double coeff) {
  if (!(p >= 1.0) || !std::isfinite(p) || !(coeff > 0.0))
    throw Error(ErrorCode::InvalidArgument, "power Young function needs p >= 1 and coeff > 0");
  YoungFunction f;
  f.family_ = Family::Power;
  f.p_ = p;
  f.coeff_ = coeff;
  return f;
}

YoungFunction YoungFunction::power_log(double p, double alpha) {
  if (!(p >= 1.0) || !std::isfinite(p) || !std::isfinite(alpha) || (p == 1.0 && alpha < 0.0))
    throw Error(ErrorCode::InvalidArgument, "power-log Young function needs p > 1, or p = 1 with alpha >= 0");
  YoungFunction f;
  f.family_ = Family::PowerLog;
  f.p_ = p;
  f.alpha_ = alpha;
  return f;
}

YoungFunction YoungFunction::exp_minus_one() {
  YoungFunction f;
  f.family_ = Family::ExpMinusOne;
  return f;
}

YoungFunction YoungFunction::tlogt() {
  YoungFunction f;
  f.family_ = Family::TLogT;
  return f;
}

YoungFunction YoungFunction::table(std::vector<double> t, std::vector<double> phi, double zero_below,
                                   double cap, std::string label) {
  if (t.size() != phi.size()) throw Error(ErrorCode::InvalidArgument, "table t/phi size mismatch");
  if (!(zero_below >= 0.0) || !(cap >= zero_below))
    throw Error(ErrorCode::InvalidArgument, "table needs 0 <= zero_below <= cap");
  YoungFunction f;
  f.family_ = Family::Table;
  f.zero_below_ = zero_below;
  f.cap_ = cap;
  f.label_ = std::move(label);
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!(t[i] > zero_below) || !(phi[i] > 0.0) || !std::isfinite(t[i]) || !std::isfinite(phi[i]))
      throw Error(ErrorCode::InvalidArgument, "table knots must be finite, positive and beyond zero_below");
    if (t[i] > cap) throw Error(ErrorCode::InvalidArgument, "table knot beyond cap");
    if (i > 0 && (!(t[i] > t[i - 1]) || !(phi[i] > phi[i - 1])))
      throw Error(ErrorCode::NonMonotoneInverse, "table knots must increase strictly");
    f.lt_.push_back(std::log(t[i]));
    f.lv_.push_back(std::log(phi[i]));
  }
  return f;
}

double YoungFunction::operator()(double t) const {
  if (!(t > 0.0)) return 0.0;
  switch (family_) {
    case Family::Power: return coeff_ * std::pow(t, p_);
    case Family::PowerLog: return std::pow(t, p_) * std::pow(1.0 + std::log1p(t), alpha_);
    case Family::ExpMinusOne: return std::expm1(t);
    case Family::TLogT: return t * std::log(std::exp(1.0) + t);
    case Family::Table: {
      if (t <= zero_below_) return 0.0;
      if (t > cap_) return kInf;
      if (lt_.empty()) return 0.0;
      const double x = std::log(t);
      const std::size_t n = lt_.size();
      if (x < lt_.front()) {
        const double t0 = std::exp(lt_.front());
        const double v0 = std::exp(lv_.front());
        if (zero_below_ > 0.0) return v0 * (t - zero_below_) / (t0 - zero_below_);
        const double slope = n > 1 ? (lv_[1] - lv_[0]) / (lt_[1] - lt_[0]) : 1.0;
        return std::exp(lv_.front() + slope * (x - lt_.front()));
      }
      std::size_t k;
      if (x >= lt_.back()) {
        if (n == 1) return std::exp(lv_.back() + (x - lt_.back()));
        k = n - 2;
      } else {
        k = static_cast<std::size_t>(std::upper_bound(lt_.begin(), lt_.end(), x) - lt_.begin()) - 1;
      }
      const double u = (x - lt_[k]) / (lt_[k + 1] - lt_[k]);
      return std::exp(lv_[k] + (lv_[k + 1] - lv_[k]) * u);
    }
  }
  return 0.0;
}

double YoungFunction::inverse(double s) const {
  if (!(s > 0.0)) return family_ == Family::Table ? zero_below_ : 0.0;
  if (std::isinf(s)) return family_ == Family::Table ? cap_ : kInf;
  switch (family_) {
    case Family::Power: return std::pow(s / coeff_, 1.0 / p_);
    case Family::ExpMinusOne: return std::log1p(s);
    case Family::PowerLog:
    case Family::TLogT: {
      double hi = 1.0;
      while ((*this)(hi) < s) hi *= 2.0;
      return numeric::bisect_root([&](double t) { return (*this)(t) - s; }, 0.0, hi, 1e-15);
    }
    case Family::Table: {
      if (lt_.empty()) return cap_;
      const double y = std::log(s);
      const std::size_t n = lt_.size();
      double t;
      if (y < lv_.front()) {
        const double t0 = std::exp(lt_.front());
        if (zero_below_ > 0.0) {
          t = zero_below_ + (t0 - zero_below_) * s / std::exp(lv_.front());
        } else {
          const double slope = n > 1 ? (lv_[1] - lv_[0]) / (lt_[1] - lt_[0]) : 1.0;
          t = std::exp(lt_.front() + (y - lv_.front()) / slope);
        }
      } else if (y >= lv_.back()) {
        const double slope = n > 1 ? (lv_[n - 1] - lv_[n - 2]) / (lt_[n - 1] - lt_[n - 2]) : 1.0;
        t = std::exp(lt_.back() + (y - lv_.back()) / slope);
      } else {
        const auto k =
            static_cast<std::size_t>(std::upper_bound(lv_.begin(), lv_.end(), y) - lv_.begin()) - 1;
        const double u = (y - lv_[k]) / (lv_[k + 1] - lv_[k]);
        t = std::exp(lt_[k] + (lt_[k + 1] - lt_[k]) * u);
      }
      return std::min(t, cap_);
    }
  }
  return 0.0;
}

std::string YoungFunction::label() const {
  switch (family_) {
    case Family::Power: {
      const std::string t = p_ == 1.0 ? "t" : "t^" + shortest(p_);
      return coeff_ == 1.0 ? t : shortest(coeff_) + "*" + t;
    }
    case Family::PowerLog:
      return "t^" + shortest(p_) + "*(1+log(1+t))^" + shortest(alpha_);
    case Family::ExpMinusOne: return "exp(t)-1";
    case Family::TLogT: return "t*log(e+t)";
    case Family::Table: return label_;
  }
  return "?";
}

// ---------------------------------------------------------------------------

YoungFunction complementary_young(const YoungFunction& phi) {
  const double x_lo = std::log(1e-300);
  const double x_hi = std::log(1e300);
  std::vector<double> s_knots, v_knots;
  double zero_below = 0.0;
  double cap = kInf;
  double last_finite = 0.0;
  for (int k = -1500; k <= 1500; ++k) {
    const double s = std::pow(10.0, k / 100.0);
    const auto best = numeric::golden_section_minimize(
        [&](double x) {
          const double t = std::exp(x);
          return phi(t) - s * t;
        },
        x_lo, x_hi, 1e-15, 400);
    const double value = -best.value;
    if (!std::isfinite(value) || best.x > x_hi - 1.0) {
      cap = last_finite;
      break;
    }
    last_finite = s;
    if (value <= 0.0) {
      if (s_knots.empty()) zero_below = s;
      continue;
    }
    if (!s_knots.empty() && !(value > v_knots.back())) continue;
    s_knots.push_back(s);
    v_knots.push_back(value);
  }
  return YoungFunction::table(std::move(s_knots), std::move(v_knots), zero_below, cap,
                              "conj(" + phi.label() + ")");
}

YoungFunction young_from_inverse(const std::function<double(double)>& inverse, const std::string& label) {
  std::vector<double> t, u;
  t.reserve(6001);
  u.reserve(6001);
  for (int k = -3000; k <= 3000; ++k) {
    const double uk = std::pow(10.0, k / 200.0);
    const double tk = inverse(uk);
    if (!std::isfinite(tk) || !(tk > 0.0))
      throw Error(ErrorCode::NonMonotoneInverse, label + ": inverse not finite and positive at u = " + shortest(uk));
    if (!t.empty() && !(tk > t.back()))
      throw Error(ErrorCode::NonMonotoneInverse, label + ": inverse not increasing near u = " + shortest(uk));
    t.push_back(tk);
    u.push_back(uk);
  }
  return YoungFunction::table(std::move(t), std::move(u), 0.0, kInf, label);
}

YoungPair young_from_theta(const YoungFunction& phi0, double theta) {
  if (!(theta > 0.0 && theta < 1.0))
    throw Error(ErrorCode::InvalidArgument, "young_from_theta needs 0 < theta < 1");
  const YoungFunction psi0 = complementary_young(phi0);
  const std::string th = shortest(theta);
  YoungPair out;
  out.phi = young_from_inverse([&](double u) { return std::pow(phi0.inverse(u), 1.0 - theta); },
                               "[" + phi0.label() + "]^(" + th + ")");
  out.psi = young_from_inverse([&](double u) { return u * std::pow(psi0.inverse(u) / u, theta); },
                               "[" + psi0.label() + "]_(" + th + ")");
  return out;
}

RhoHypotheses check_rho_hypotheses(const ParamFunction& rho) {
  RhoHypotheses h;
  h.pseudo_concave = true;
  double prev = rho(std::ldexp(1.0, -40));
  double prev_ratio = prev / std::ldexp(1.0, -40);
  for (int k = -39; k <= 40; ++k) {
    const double t = std::ldexp(1.0, k);
    const double v = rho(t);
    if (v < prev * (1.0 - 1e-12) || v / t > prev_ratio * (1.0 + 1e-12)) h.pseudo_concave = false;
    prev = v;
    prev_ratio = v / t;
  }
  auto a = [&](int e) {
    const double t = std::ldexp(1.0, e);
    return dilation_function(rho, t) / std::max(1.0, t);
  };
  const double lo30 = a(-30), lo40 = a(-40), hi30 = a(30), hi40 = a(40);
  h.little_o = lo40 <= 0.1 && lo40 < lo30 && hi40 <= 0.1 && hi40 < hi30;
  return h;
}

YoungFunction orlicz_from_rho(const YoungFunction& phi0, const ParamFunction& rho, RhoCouple couple) {
  const std::string label = "rho[" + rho.label() + "](" + phi0.label() + ")";
  if (couple == RhoCouple::WithLinfty) {
    return young_from_inverse(
        [&](double s) {
          const double a = phi0.inverse(s);
          return a * rho(1.0 / a);
        },
        label);
  }
  return young_from_inverse([&](double s) { return s * rho(phi0.inverse(s) / s); }, label);
}

}  // namespace rispace
