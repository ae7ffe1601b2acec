#pragma once

#include <functional>
#include <memory>

#include "ineq/types.hpp"
#include "ineq/ultraspherical.hpp"

namespace ineq {

struct DiscCoeffs {
  // Coefficients per angular order m: cos components for m = 0..K and sin
  // components for m = 1..K, each against the orthonormal radial stack.
  std::vector<Vector> c;
  std::vector<Vector> s;
};

// Functions on S^d depending on the pair (omega_d, omega_{d+1}) = (y, z),
// represented on the unit disc y^2 + z^2 <= 1 with the marginal probability
// measure  c_mu (1 - rho^2)^{(d-3)/2} rho drho dtheta,  y = rho cos(theta),
// z = rho sin(theta). The basis is the Zernike-Jacobi family
//   rho^m P_j^{((d-3)/2, m)}(2 rho^2 - 1) x {cos, sin}(m theta)
// of total degree m + 2j <= degree_cap, orthonormalized against the measure.
// Rotations in the (y,z) plane act exactly on this discretization; the
// quadrature grid in theta is chosen so the y <-> z swap permutes nodes.
class DiscGrid {
 public:
  DiscGrid(int d, int degree_cap);

  int dimension() const { return d_; }
  int degree_cap() const { return K_; }
  Index n_rho() const { return rho_.size(); }
  Index n_theta() const { return n_theta_; }

  const Vector& rho() const { return rho_; }
  const Vector& theta() const { return theta_; }
  // Quadrature weight of node (i, j); uniform in j.
  Real weight(Index i) const { return wrad_[i] / n_theta_; }
  Real y(Index i, Index j) const { return rho_[i] * cos_theta_[j]; }
  Real z(Index i, Index j) const { return rho_[i] * sin_theta_[j]; }

  DiscCoeffs analyze(const Matrix& values) const;
  Matrix synthesize(const DiscCoeffs& coeffs) const;
  // Nodal (F_rho, F_theta / rho) of a band-limited function.
  void gradient(const DiscCoeffs& coeffs, Matrix& f_rho,
                Matrix& f_theta_over_rho) const;
  Real evaluate(const DiscCoeffs& coeffs, Real rho, Real theta) const;
  // Synthesis on an auxiliary polar grid (used by rearrangement sampling).
  Matrix synthesize_polar(const DiscCoeffs& coeffs, const Vector& rho_f,
                          const Vector& theta_f) const;

  // Node index of theta' = pi/2 - theta_j (the omega_d <-> omega_{d+1} swap).
  Index swapped_theta_index(Index j) const;

 private:
  int d_, K_;
  Index n_theta_;
  Real mu_;
  Vector rho_, wrad_, theta_, cos_theta_, sin_theta_;
  std::vector<Matrix> radial_, radial_deriv_;  // per m, n_rho x J_m
  Matrix cos_m_, sin_m_;                       // (K+1) x n_theta
  std::vector<Vector> scale_;                  // orthonormalization per (m,j)
};

using DiscGridPtr = std::shared_ptr<const DiscGrid>;

struct DiscFunction {
  DiscGridPtr grid;
  Matrix values;  // n_rho x n_theta

  DiscFunction() = default;
  DiscFunction(DiscGridPtr g, Matrix v);
};

DiscGridPtr build_disc_grid(int d, int degree_cap);

// Sample u(y, z) directly on the sphere side.
DiscFunction sample_disc(DiscGridPtr grid,
                         const std::function<Real(Real, Real)>& u_yz);
// Sample the conformal pullback of an axisymmetric Euclidean function
// f(s, t), s = |x'|, t = x_d:  u = (1-z)^{-(d-2)/2} f.
DiscFunction from_euclidean(DiscGridPtr grid,
                            const std::function<Real(Real, Real)>& f_st);
// Embed a z-only profile.
DiscFunction from_axis_profile(DiscGridPtr grid,
                               const std::function<Real(Real)>& u_z);

Real integrate(const DiscFunction& u);
Real l2_inner(const DiscFunction& a, const DiscFunction& b);
Real lq_norm(const DiscFunction& u, Real q);
// |grad u|^2 on S^d: int [ (1-rho^2) F_rho^2 + (F_theta/rho)^2 ] dmu.
Real dirichlet_energy(const DiscFunction& u);
// Gradient inner product by polarization.
Real dirichlet_inner(const DiscFunction& a, const DiscFunction& b);

// The competing-symmetries conformal map: precomposition with the isometry
// exchanging omega_d and omega_{d+1}; an exact node permutation here.
DiscFunction conformal_U(const DiscFunction& u);

}  // namespace ineq
