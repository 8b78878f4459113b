#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <utility>

namespace rispace::numeric {

/// Neumaier's variant of Kahan summation.
class CompensatedSum {
public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  CompensatedSum& operator+=(double x) {
    add(x);
    return *this;
  }
  double value() const { return sum_ + comp_; }

private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

double compensated_sum(std::span<const double> xs);

struct Minimum {
  double x;
  double value;
};

/// Golden-section search for a unimodal function on [a, b]. Both endpoints are
/// probed as well, so monotone objectives return the better endpoint.
Minimum golden_section_minimize(const std::function<double(double)>& f, double a, double b,
                                double x_tol = 1e-13, int max_iter = 200);

/// Gauss-Legendre nodes/weights on [-1, 1] for the supported orders (8, 16, 32).
struct GaussRule {
  std::span<const double> nodes;
  std::span<const double> weights;
};
GaussRule gauss_legendre(int order);

/// Integrates f over [a, b] with `panels` equal Gauss-Legendre panels.
double integrate_gauss(const std::function<double(double)>& f, double a, double b, int panels = 1,
                       int order = 16);

/// Bisection for the root of a monotone function on [lo, hi]; f(lo) and f(hi)
/// must have opposite signs (or one of them is zero).
double bisect_root(const std::function<double(double)>& f, double lo, double hi,
                   double rel_tol = 1e-15, int max_iter = 400);

/// Values of a monotone quantity over windows T, 2T, 4T: converged when the
/// last increment is negligible or shrinks by at least 10%.
bool doubling_converged(double v1, double v2, double v4);

}  // namespace rispace::numeric
