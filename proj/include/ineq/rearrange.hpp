#pragma once

#include <vector>

#include "ineq/disc_sphere.hpp"
#include "ineq/euclidean.hpp"
#include "ineq/gaussian.hpp"

namespace ineq {

// Layer-cake description: measures mu_j = measure{ f > t_j } for decreasing
// levels t_j (Lebesgue for the Euclidean ops, Gaussian for gaussian_U).
struct DistributionProfile {
  Vector levels;
  Vector measures;
};

struct RearrangeOptions {
  Index n_rho_fine = 384;
  Index n_theta_fine = 512;
  Index table_max = 4000;  // thinned quantile-table size
};

// Lebesgue superlevel measures of the conformal image of u at given levels.
DistributionProfile distribution_profile(const DiscFunction& u,
                                         const Vector& levels,
                                         const RearrangeOptions& opts = {});
DistributionProfile distribution_profile(const RadialFunction& f,
                                         const Vector& levels);

// Symmetric decreasing rearrangement. Input is the conformal sphere-side
// representation of a nonnegative Euclidean function; output is a dense
// radial quantile table (monotone nonincreasing).
RadialFunction rearrange_decreasing(const DiscFunction& u,
                                    const RearrangeOptions& opts = {});
RadialFunction rearrange_decreasing(const RadialFunction& f,
                                    const RearrangeOptions& opts = {});

// Dense-table norms evaluated per spline segment (robust at level-merge kinks).
Real radial_lq_norm(const RadialFunction& f, Real q);
Real radial_grad_norm_sq(const RadialFunction& f);

// Pointwise monotone-cubic embedding of a radial profile into the disc class.
DiscFunction disc_from_radial(DiscGridPtr grid, const RadialFunction& f);

struct CompetingRecord {
  int n = 0;
  Real distance = 0.0;   // |f_n - g_*|_{2*}
  Real grad_norm = 0.0;  // |grad f_n|_{L^2}
};

struct CompetingDiagnostics {
  std::vector<CompetingRecord> records;
  bool converged = false;
  DiscFunction final_state;
};

// Carlen-Loss alternation f_{n+1} = R(U f_n) after normalizing |f|_{2*} = 1.
CompetingDiagnostics competing_iterate(const DiscFunction& f0, int n_max,
                                       Real stop_tol,
                                       const RearrangeOptions& opts = {});

// Gaussian monotone rearrangement: superlevel sets become half-lines
// {x_1 < mu} of equal gamma-measure. Exact quantile transport in 1-D.
GaussianFunction gaussian_U(const GaussianFunction& u);

// V f = e^{pi |x|^2 / 2} R( e^{-pi |x|^2 / 2} f ) with R the Euclidean
// symmetric decreasing rearrangement; computed in log space.
GaussianFunction gaussian_V(const GaussianFunction& u);

struct GaussianCompetingRecord {
  int n = 0;
  Real distance = 0.0;  // | u_n - |u_0| |_{L^2(gamma)}
  Real deficit = 0.0;
};

struct GaussianCompetingDiagnostics {
  std::vector<GaussianCompetingRecord> records;
  bool converged = false;
  GaussianFunction final_state;
};

GaussianCompetingDiagnostics gaussian_competing_iterate(
    const GaussianFunction& u0, int n_max, Real stop_tol);

}  // namespace ineq
