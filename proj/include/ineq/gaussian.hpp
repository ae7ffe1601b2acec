#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "ineq/types.hpp"

namespace ineq {

// Tensor Gauss quadrature for the Gaussian probability measure
// dgamma = e^{-pi |x|^2} dx on R^N (variance 1/(2 pi) per coordinate),
// with the orthonormal Hermite family for that measure attached.
// The degree-k Hermite function satisfies int |h_k'|^2 dgamma = 2 pi k.
class GaussianGrid {
 public:
  GaussianGrid(int N, int n);

  int dim() const { return N_; }
  int points_per_axis() const { return n_; }
  int degree_cap() const { return degree_cap_; }
  Index size() const { return total_; }

  const Vector& nodes1d() const { return nodes_; }
  const Vector& weights1d() const { return weights_; }
  Real node(Index q, int axis) const;
  Real weight(Index q) const;

  const Matrix& hermite() const { return herm_; }

  // Spectral partial derivative along one axis.
  Vector differentiate(const Vector& values, int axis) const;
  // Apply a 1-D node-space matrix along one axis (used by tilting).
  Vector apply_axis_matrix(const Vector& values, const Matrix& op,
                           int axis) const;
  // 1-D analysis/synthesis helpers.
  Vector analyze1d(const Vector& values) const;

 private:
  int N_, n_, degree_cap_;
  Index total_;
  Vector nodes_, weights_;
  Matrix herm_;        // n x (degree_cap+1), orthonormal in L^2(gamma)
  Matrix diff_nodal_;  // nodal derivative matrix (synthesis o D o analysis)
};

using GaussianGridPtr = std::shared_ptr<const GaussianGrid>;

struct GaussianFunction {
  GaussianGridPtr grid;
  Vector values;

  GaussianFunction() = default;
  GaussianFunction(GaussianGridPtr g, Vector v);
};

struct ExpPoint {
  Vector a;
  Real c = 1.0;
};

GaussianGridPtr build_gaussian_grid(int N, int n);

GaussianFunction sample(GaussianGridPtr grid,
                        const std::function<Real(const Vector&)>& f);
GaussianFunction sample1d(GaussianGridPtr grid,
                          const std::function<Real(Real)>& f);
// Orthonormal Hermite basis function of degree k (N = 1 grids).
GaussianFunction hermite_function(GaussianGridPtr grid, int k);

Real integrate(const GaussianFunction& u);
Real l2_norm_sq(const GaussianFunction& u);
Real lq_norm(const GaussianFunction& u, Real q);
Real grad_norm_sq(const GaussianFunction& u);
// int u^2 ln(u^2/|u|^2) dgamma with the 0 ln 0 = 0 convention.
Real log_entropy(const GaussianFunction& u);

// LSI deficit: int |grad u|^2 dgamma - pi * log_entropy(u).
Real lsi_deficit(const GaussianFunction& u);

struct ExpFitResult {
  ExpPoint point;
  Real dist2 = 0.0;
  bool converged = false;
};

// L^2(gamma) projection onto the family c e^{a.x}; the amplitude c is
// eliminated in closed form, the tilt a found by damped Newton with
// multi-start.
ExpFitResult dist_to_exponentials(const GaussianFunction& u);

// Deficit-preserving tilt: e^{-y.a - |a|^2/(2 pi)} u(y + a/pi). Band-limited
// evaluation off the nodes; *support_warning is set when the shift pushes
// evaluation far outside the node range.
GaussianFunction tilt(const GaussianFunction& u, const Vector& a,
                      bool* support_warning = nullptr);
// Tilt followed by division by c e^{|a|^2/(2 pi)}; maps the optimal
// exponential point (a, c) of u to (0, 1).
GaussianFunction translate_normalize(const GaussianFunction& u,
                                     const Vector& a, Real c,
                                     bool* support_warning = nullptr);

Real stability_ratio(const GaussianFunction& u);

struct EntropySplit {
  Real D_u = 0.0, D_plus = 0.0, D_minus = 0.0;
  Real m = 0.0;  // |u_-|^2 after normalization, in [0, 1/2]
  Real identity_residual = 0.0;
};

EntropySplit entropy_split(const GaussianFunction& u);

Real binary_entropy(Real p);  // -(p ln p + (1-p) ln(1-p))
Real combine_constant(Real kappa_pos);

struct HdBound {
  Real value = 0.0;  // h_d(m)
  Real lower = 0.0;  // 2 h_d(1/2) m
  Real ratio_to_final = 0.0;  // 2 h_d(1/2) / (h_d(1/2) + 1)
};

HdBound h_d_bound(int d, Real m);

struct PToOneLimit {
  Real quotient = 0.0;
  Real entropy = 0.0;
  Real gap = 0.0;
};

PToOneLimit p_to_one_limit(const GaussianFunction& h, Real p);

}  // namespace ineq
