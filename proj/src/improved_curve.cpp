#include "ineq/improved_curve.hpp"

#include <cmath>

#include "ineq/errors.hpp"
#include "ineq/ode.hpp"

namespace ineq {

ImprovedCurve::ImprovedCurve(InterpolationParams params, FlowExponents exps,
                             HermiteSpline spline, Real s_max)
    : params_(std::move(params)),
      exps_(exps),
      spline_(std::move(spline)),
      s_max_(s_max) {}

Real ImprovedCurve::phi(Real s) const {
  if (s < 0.0 || s > s_max_ * (1.0 + 1e-12))
    throw domain_error("ImprovedCurve::phi: s outside [0, s_max]");
  return spline_(std::min(s, s_max_));
}

Real ImprovedCurve::phi_deriv(Real s) const {
  if (s < 0.0 || s > s_max_ * (1.0 + 1e-12))
    throw domain_error("ImprovedCurve::phi_deriv: s outside [0, s_max]");
  return spline_.deriv(std::min(s, s_max_));
}

Real ImprovedCurve::phi_inverse(Real y) const {
  if (y < 0.0 || y > spline_.y_max() * (1.0 + 1e-12))
    throw domain_error("ImprovedCurve::phi_inverse: value outside range");
  return spline_.inverse(std::min(y, spline_.y_max()));
}

Real ImprovedCurve::psi(Real s) const {
  const Real d = params_.d;
  return s - d * phi_inverse(s / d);
}

ImprovedCurve solve_phi(const InterpolationParams& params,
                        const FlowExponents& exps, Real s_max, Real tol) {
  if (exps.gamma < 0.0)
    throw invalid_parameter("solve_phi: gamma must be nonnegative");
  if (s_max <= 0.0) throw invalid_parameter("solve_phi: s_max must be positive");
  const Real p = params.log_case ? 2.0 : params.p;
  if (p > 2.0 && s_max >= 1.0 / (p - 2.0))
    throw domain_error("solve_phi: s_max beyond the singularity 1/(p-2)");

  const Real c = exps.gamma / (exps.beta * exps.beta);
  const Real delta = exps.delta;
  auto rhs = [&](Real s, Real phi) {
    const Real base = 1.0 - (p - 2.0) * s;
    return 1.0 + c * phi / std::pow(base, delta);
  };

  // Cap the step so the tabulation resolves the curve even when the ODE is
  // easy; psi() inverts the table and benefits from dense knots.
  OdeTrack track = integrate_rk45(rhs, 0.0, 0.0, s_max, tol, s_max / 64.0);
  HermiteSpline spline(std::move(track.s), std::move(track.y),
                       std::move(track.yp));
  return ImprovedCurve(params, exps, std::move(spline), s_max);
}

Real psi(Real s, const ImprovedCurve& curve) { return curve.psi(s); }

}  // namespace ineq
