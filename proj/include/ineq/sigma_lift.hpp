#pragma once

#include <vector>

#include "ineq/gaussian.hpp"
#include "ineq/types.hpp"

namespace ineq {

// Dimensional lift data: Sigma_d is the sphere of radius rho_d = sqrt(d/(2 pi))
// in R^{d+1}; its uniform measure restricted to finitely many coordinates
// converges to the Gaussian measure as d grows.
struct SphereLiftSpec {
  int d = 10;
  int N = 1;
  Real rho_d = 0.0;
  Real Z_d = 0.0;  // normalization of the flat-measure realization
};

SphereLiftSpec make_lift_spec(int d, int N);

struct MomentPair {
  Real sphere_value = 0.0;
  Real gauss_value = 0.0;
};

// Mixed moment E[prod x_i^{powers[i]}] under the uniform measure on Sigma_d
// (closed form) and under gamma. Zero for odd powers.
MomentPair lift_moments(int d, const std::vector<int>& powers);

// Same sphere moment for a single coordinate via the 1-D marginal quadrature;
// cross-checks the closed form.
Real sigma_moment_quadrature(int d, int power, int n = 128);

// Numerical check of the normalization Z_d: returns the radial quadrature
// value of int dmu_d, which should equal 1.
Real mu_d_normalization(int d, int n = 256);

// Projection of r (a function of the first N coordinates, N = 1 here) onto
// the orthogonal complement of {1, x_1, ..., x_{d+1}} on Sigma_d:
//   R_d = r - int r dmu - 2 pi (d+1)/d sum_n x_n int y_n r dmu.
struct SigmaLiftFunction {
  SphereLiftSpec spec;
  GaussianFunction r;
  Real mean_sigma = 0.0;
  Vector first_moments;

  // Evaluate R_d at a point of Sigma_d with leading coordinates x (length N).
  Real evaluate(const Vector& x) const;
};

SigmaLiftFunction build_R_d(const GaussianFunction& r, int d);

struct OrthogonalityResiduals {
  Real mean = 0.0;
  Vector coordinate;  // int x_j R_d dmu for j = 1..N
};

OrthogonalityResiduals orthogonality_residuals(const SigmaLiftFunction& R);

}  // namespace ineq
