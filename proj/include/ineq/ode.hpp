#pragma once

#include <cmath>
#include <vector>

#include "ineq/errors.hpp"
#include "ineq/types.hpp"

namespace ineq {

// Accepted-step record of a scalar initial value problem: abscissae,
// solution values and RHS slopes (the slopes feed Hermite interpolation).
struct OdeTrack {
  std::vector<Real> s;
  std::vector<Real> y;
  std::vector<Real> yp;
};

// Dormand-Prince 5(4) with standard PI-free step control. RHS is any callable
// Real(Real s, Real y). Throws stiffness_error on step underflow.
template <class F>
OdeTrack integrate_rk45(F rhs, Real s0, Real y0, Real s_end, Real tol,
                        Real max_step = 0.0) {
  if (s_end < s0) throw invalid_parameter("integrate_rk45: s_end < s0");
  if (max_step <= 0.0) max_step = (s_end - s0);

  OdeTrack track;
  Real s = s0, y = y0;
  Real k1 = rhs(s, y);
  track.s.push_back(s);
  track.y.push_back(y);
  track.yp.push_back(k1);
  if (s_end == s0) return track;

  Real h = std::min(max_step, (s_end - s0) / 64.0);
  const Real h_min = (s_end - s0) * 1e-14;
  int rejected_in_a_row = 0;

  while (s_end - s > h_min) {
    h = std::min(h, s_end - s);
    const Real k2 = rhs(s + h / 5.0, y + h * (k1 / 5.0));
    const Real k3 = rhs(s + 3.0 * h / 10.0, y + h * (3.0 / 40.0 * k1 + 9.0 / 40.0 * k2));
    const Real k4 = rhs(s + 4.0 * h / 5.0,
                        y + h * (44.0 / 45.0 * k1 - 56.0 / 15.0 * k2 + 32.0 / 9.0 * k3));
    const Real k5 =
        rhs(s + 8.0 * h / 9.0,
            y + h * (19372.0 / 6561.0 * k1 - 25360.0 / 2187.0 * k2 +
                     64448.0 / 6561.0 * k3 - 212.0 / 729.0 * k4));
    const Real k6 = rhs(s + h, y + h * (9017.0 / 3168.0 * k1 - 355.0 / 33.0 * k2 +
                                        46732.0 / 5247.0 * k3 + 49.0 / 176.0 * k4 -
                                        5103.0 / 18656.0 * k5));
    const Real y5 = y + h * (35.0 / 384.0 * k1 + 500.0 / 1113.0 * k3 +
                             125.0 / 192.0 * k4 - 2187.0 / 6784.0 * k5 +
                             11.0 / 84.0 * k6);
    const Real k7 = rhs(s + h, y5);
    const Real y4 = y + h * (5179.0 / 57600.0 * k1 + 7571.0 / 16695.0 * k3 +
                             393.0 / 640.0 * k4 - 92097.0 / 339200.0 * k5 +
                             187.0 / 2100.0 * k6 + k7 / 40.0);
    const Real scale = tol * (1.0 + std::abs(y5));
    const Real err = std::abs(y5 - y4);

    if (err <= scale) {
      s += h;
      y = y5;
      k1 = k7;
      track.s.push_back(s);
      track.y.push_back(y);
      track.yp.push_back(k1);
      rejected_in_a_row = 0;
    } else if (++rejected_in_a_row > 50) {
      throw stiffness_error("integrate_rk45: repeated step rejection");
    }
    const Real factor =
        err > 0.0 ? 0.9 * std::pow(scale / err, 0.2) : 5.0;
    h *= std::min(Real(5.0), std::max(Real(0.2), factor));
    h = std::min(h, max_step);
    if (h < h_min && s_end - s > h_min)
      throw stiffness_error("integrate_rk45: step size underflow");
  }
  // Snap the final knot onto the requested endpoint.
  track.s.back() = s_end;
  return track;
}

}  // namespace ineq
