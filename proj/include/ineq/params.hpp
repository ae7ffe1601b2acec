#pragma once

#include "ineq/types.hpp"

namespace ineq {

// Exponent algebra for the sphere interpolation inequalities. "log_case"
// marks the endpoint p = 2, where the entropy functional is logarithmic.
struct InterpolationParams {
  int d = 3;
  Real p = 2.0;
  bool log_case = false;

  Real two_star = 0.0;   // 2d/(d-2)
  Real two_sharp = 0.0;  // (2d^2+1)/(d-1)^2
  Real A = 0.0;          // d(d-2)/4
  Real sphere_volume = 0.0;
  Real S_d = 0.0;  // A * |S^d|^{2/d}

  bool critical() const;
};

InterpolationParams make_params(int d, Real p);
InterpolationParams make_params_log(int d);

Real sphere_surface_volume(int d);  // |S^d|, the sphere in R^{d+1}

// Diffusion exponents attached to a choice of beta (equivalently m) for the
// flow that drives the improved inequalities.
struct FlowExponents {
  Real beta = 1.0;
  Real m = 1.0;      // m = 1 + (2/p)(1/beta - 1)
  Real kappa = 1.0;  // beta(p-2) + 1
  Real gamma = 0.0;  // admissibility quadratic evaluated at beta
  Real delta = 1.0;  // 1 for p <= 2, else (2-(4-p)beta)/(2 beta (p-2))
  Real m_minus = 0.0;
  Real m_plus = 0.0;
  Real beta_star = 0.0;
};

// Tag types so callers state explicitly which parametrization they pass.
struct Beta {
  Real value;
};
struct DiffusionM {
  Real value;
};

Real gamma_of_beta(const InterpolationParams& params, Real beta);
Real beta_of_m(const InterpolationParams& params, Real m);
Real m_of_beta(const InterpolationParams& params, Real beta);
Real m_minus(const InterpolationParams& params);
Real m_plus(const InterpolationParams& params);

// Default beta: maximizes the improvement coefficient gamma(beta)/beta^2,
// capped so that the exponent delta stays nonnegative. Corresponds to
// m = (dp+2)/((d+2)p) (or m = 2/p when the cap binds).
Real beta_star(const InterpolationParams& params);

FlowExponents flow_exponents(const InterpolationParams& params, Beta beta);
FlowExponents flow_exponents(const InterpolationParams& params, DiffusionM m);

}  // namespace ineq
