#pragma once

#include <array>

#include "ineq/improved_curve.hpp"
#include "ineq/params.hpp"
#include "ineq/ultraspherical.hpp"

namespace ineq {

struct DeficitReport {
  Real i = 0.0;        // Dirichlet energy
  Real e = 0.0;        // entropy functional
  Real deficit = 0.0;  // i - d e
  bool has_improved = false;
  Real improved_deficit = 0.0;  // i - d phi(e), when a curve is supplied
  Real norm_2 = 0.0;
  Real norm_p = 0.0;
};

// e(u) = (|u|_p^2 - |u|_2^2)/(p-2) for p != 2, and the log-entropy
// (1/2) int u^2 ln(u^2/|u|_2^2) dsigma_d at p = 2. Nonnegative, 2-homogeneous.
Real entropy_e(const SphereFunction& u, const InterpolationParams& params);

DeficitReport gns_deficit(const SphereFunction& u,
                          const InterpolationParams& params,
                          const ImprovedCurve* curve = nullptr);

struct ThetaImprovement {
  Real theta = 0.0;
  Real lhs = 0.0;        // |grad u|_2^2
  Real rhs_theta = 0.0;  // improved right-hand side
  Real rhs_gns = 0.0;    // plain right-hand side
};

// Holder-interpolated strengthening, valid for p in (2, 2#).
ThetaImprovement theta_improvement(const SphereFunction& u,
                                   const InterpolationParams& params);

struct RemainderFunctional {
  Real lhs = 0.0;  // deficit of u
  Real rhs = 0.0;  // kappa ( |grad P1 u|^4 / (|grad u|^2 + |u|^2) + |grad (I-P1)u|^2 )
};

// Spherical-harmonics remainder bound; kappa is caller-supplied.
RemainderFunctional remainder_functional(const SphereFunction& u,
                                         const InterpolationParams& params,
                                         Real kappa_param);

struct CutConstants {
  Real gamma_cut = 0.0;
  Real M = 0.0;
  Real M_bar = 0.0;  // >= sqrt(e)
  Real eps0 = 0.0;
  Real eps1 = 0.0;
  Real eps2 = 0.0;
  Real k0 = 0.0;
  Real c_eps12 = 0.0;  // constant coupling eps1, eps2 in the middle piece
};

struct CutFunctionals {
  Real I1 = 0.0, I2 = 0.0, I3 = 0.0;
  SphereFunction r1, r2, r3;
};

// Height decomposition r = r1 + r2 + r3 with
//   r1 = min(r, gamma), r2 = min((r-gamma)+, M-gamma), r3 = (r-M)+,
// and the three spectral-gap functionals evaluated with the supplied
// constants. Requires d >= 6 so that theta = 4/(d-2) lies in (0,1].
CutFunctionals cut_functionals(const SphereFunction& r,
                               const CutConstants& constants,
                               const InterpolationParams& params);

// Local stability quotient of u = 1 + r against the squared H^1 norm of r,
// for r orthogonal to constants and to z.
Real local_stability_ratio(const SphereFunction& r,
                           const InterpolationParams& params);

}  // namespace ineq
