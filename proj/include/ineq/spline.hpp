#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "ineq/errors.hpp"
#include "ineq/types.hpp"

namespace ineq {

// Cubic Hermite interpolant with caller-supplied slopes, plus inversion for
// strictly increasing data (bisection bracketing with Newton polish).
class HermiteSpline {
 public:
  HermiteSpline() = default;
  HermiteSpline(std::vector<Real> s, std::vector<Real> y, std::vector<Real> yp)
      : s_(std::move(s)), y_(std::move(y)), yp_(std::move(yp)) {
    if (s_.size() < 2 || s_.size() != y_.size() || s_.size() != yp_.size())
      throw invalid_parameter("HermiteSpline: inconsistent knot data");
  }

  Real s_min() const { return s_.front(); }
  Real s_max() const { return s_.back(); }
  Real y_min() const { return y_.front(); }
  Real y_max() const { return y_.back(); }

  Real operator()(Real s) const {
    const auto [i, t, h] = locate(s);
    const Real t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * y_[i] + (t3 - 2 * t2 + t) * h * yp_[i] +
           (-2 * t3 + 3 * t2) * y_[i + 1] + (t3 - t2) * h * yp_[i + 1];
  }

  Real deriv(Real s) const {
    const auto [i, t, h] = locate(s);
    const Real t2 = t * t;
    return ((6 * t2 - 6 * t) * y_[i] + (3 * t2 - 4 * t + 1) * h * yp_[i] +
            (-6 * t2 + 6 * t) * y_[i + 1] + (3 * t2 - 2 * t) * h * yp_[i + 1]) /
           h;
  }

  // Solve (*this)(s) = target for strictly increasing splines.
  Real inverse(Real target) const {
    if (target < y_.front() - 1e-12 || target > y_.back() + 1e-12)
      throw domain_error("HermiteSpline::inverse: target outside range");
    target = std::clamp(target, y_.front(), y_.back());
    auto it = std::lower_bound(y_.begin(), y_.end(), target);
    std::size_t i = it == y_.begin() ? 0 : (it - y_.begin()) - 1;
    i = std::min(i, s_.size() - 2);
    Real lo = s_[i], hi = s_[i + 1];
    Real x = 0.5 * (lo + hi);
    for (int iter = 0; iter < 100; ++iter) {
      const Real f = (*this)(x)-target;
      if (f > 0)
        hi = x;
      else
        lo = x;
      const Real d = deriv(x);
      Real next = d > 0 ? x - f / d : 0.5 * (lo + hi);
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      if (std::abs(next - x) < 1e-15 * (1.0 + std::abs(x))) return next;
      x = next;
    }
    return x;
  }

 private:
  std::tuple<std::size_t, Real, Real> locate(Real s) const {
    if (s < s_.front() - 1e-12 || s > s_.back() + 1e-12)
      throw domain_error("HermiteSpline: abscissa outside range");
    s = std::clamp(s, s_.front(), s_.back());
    auto it = std::upper_bound(s_.begin(), s_.end(), s);
    std::size_t i = it == s_.begin() ? 0 : (it - s_.begin()) - 1;
    i = std::min(i, s_.size() - 2);
    const Real h = s_[i + 1] - s_[i];
    return {i, (s - s_[i]) / h, h};
  }

  std::vector<Real> s_, y_, yp_;
};

}  // namespace ineq
