#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <set>

#include "ineq/quadrature.hpp"
#include "ineq/types.hpp"

namespace ineq {

// Discretization of functions on S^d that depend only on the axis variable
// z in [-1,1], carrying the probability measure
//   dsigma_d(z) = Z_d^{-1} (1-z^2)^{d/2-1} dz.
// Quadrature is Gauss for that weight; the spectral basis consists of the
// eigenfunctions of the operator  L f = (1-z^2) f'' - d z f'  of degree k,
// eigenvalue -k(k+d-1), normalized to unit L^2(dsigma_d) norm.
class UltrasphericalGrid {
 public:
  UltrasphericalGrid(int d, int n);

  int dimension() const { return d_; }
  Index size() const { return n_; }
  int degree_cap() const { return degree_cap_; }
  const Vector& nodes() const { return nodes_; }
  const Vector& weights() const { return weights_; }

  // L-eigenvalue k(k+d-1) (as a positive number).
  Real eigenvalue(int k) const { return Real(k) * (k + d_ - 1); }

  // Orthonormal basis values p_k(z_i): n x (degree_cap+1).
  const Matrix& basis() const { return basis_; }
  // Basis derivatives p_k'(z_i).
  const Matrix& basis_deriv() const { return basis_deriv_; }

  Vector analyze(const Vector& values) const;
  Vector synthesize(const Vector& coeffs) const;

 private:
  int d_;
  Index n_;
  int degree_cap_;
  Vector nodes_, weights_;
  Matrix basis_, basis_deriv_;
};

using GridPtr = std::shared_ptr<const UltrasphericalGrid>;

struct SphereFunction {
  GridPtr grid;
  Vector values;

  SphereFunction() = default;
  SphereFunction(GridPtr g, Vector v);

  // Gegenbauer coefficients, computed on first use. Instances are meant to be
  // confined to one thread; share grids, not functions.
  const Vector& coeffs() const;

 private:
  mutable std::optional<Vector> coeffs_;
};

GridPtr build_grid(int d, int n);

SphereFunction sample(GridPtr grid, const std::function<Real(Real)>& f);
SphereFunction constant_function(GridPtr grid, Real c);
// Unit-norm degree-k basis function.
SphereFunction basis_function(GridPtr grid, int k);

Real integrate(const SphereFunction& f);
// Nodal values of f' by spectral differentiation.
Vector derivative_values(const SphereFunction& f);
// int |f'|^2 (1-z^2) dsigma_d  =  |grad u|^2_{L^2(S^d)} for axisymmetric u.
Real dirichlet_energy(const SphereFunction& f);
// Same quantity through the Parseval identity sum_k k(k+d-1) c_k^2.
Real dirichlet_energy_parseval(const SphereFunction& f);
// L^q(dsigma_d) norm of |f|.
Real lq_norm(const SphereFunction& f, Real q);

SphereFunction apply_L(const SphereFunction& f);
SphereFunction synthesize(GridPtr grid, const Vector& coeffs);
SphereFunction project_degree(const SphereFunction& f, const std::set<int>& k_set);

}  // namespace ineq
