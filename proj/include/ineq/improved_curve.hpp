#pragma once

#include "ineq/params.hpp"
#include "ineq/spline.hpp"
#include "ineq/types.hpp"

namespace ineq {

// Tabulated solution of
//   phi'(s) = 1 + (gamma/beta^2) phi(s) / (1 - (p-2) s)^delta,  phi(0) = 0,
// on [0, s_max]. phi is strictly increasing with phi(0)=0, phi'(0)=1; for
// gamma > 0 it is strictly convex and phi(s) > s for s > 0.
class ImprovedCurve {
 public:
  ImprovedCurve() = default;
  ImprovedCurve(InterpolationParams params, FlowExponents exps,
                HermiteSpline spline, Real s_max);

  const InterpolationParams& params() const { return params_; }
  const FlowExponents& exponents() const { return exps_; }
  Real s_max() const { return s_max_; }

  Real phi(Real s) const;
  Real phi_deriv(Real s) const;
  Real phi_inverse(Real y) const;  // monotone bracketing + Newton

  // Convexified deficit profile: psi(s) = s - d * phi^{-1}(s/d).
  Real psi(Real s) const;

 private:
  InterpolationParams params_;
  FlowExponents exps_;
  HermiteSpline spline_;
  Real s_max_ = 0.0;
};

// Integrates the phi ODE with local error <= tol. For p > 2 the equation has
// a singular barrier at s = 1/(p-2); s_max must stay below it.
ImprovedCurve solve_phi(const InterpolationParams& params,
                        const FlowExponents& exps, Real s_max,
                        Real tol = 1e-10);

Real psi(Real s, const ImprovedCurve& curve);

}  // namespace ineq
