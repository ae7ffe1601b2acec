#pragma once

#include <functional>
#include <vector>

#include "ineq/disc_sphere.hpp"
#include "ineq/params.hpp"
#include "ineq/spline.hpp"
#include "ineq/ultraspherical.hpp"

namespace ineq {

// Radial function on R^d. When produced by push_to_plane the radii are the
// images of the sphere grid nodes and the round trip is exact nodewise.
struct RadialFunction {
  int d = 3;
  Vector r;       // strictly increasing, > 0
  Vector values;
  GridPtr sphere_grid;  // non-null when radii mirror a sphere grid
};

// Axially symmetric function on R^d sampled on a tensor Gauss grid in
// (s, t) = (|x'|, x_d), with the cylindrical weight |S^{d-2}| s^{d-2} ds dt.
struct AxiSymFunction {
  int d = 3;
  Vector s, s_weights;
  Vector t, t_weights;
  Matrix values;  // s-major: values(i, j) = f(s_i, t_j)
};

struct ManifoldPoint {
  Real a = 1.0;   // scale, > 0
  Vector b;       // center in R^d (axis component in coordinate d)
  Real c = 1.0;   // amplitude
};

struct ProjectionResult {
  ManifoldPoint point;
  Real dist2 = 0.0;  // |grad f - grad g|^2 at the optimum
  bool converged = false;
  Real grad_norm = 0.0;
};

// Closed forms for the optimizer family g_{a,b,c}(x) = c (a + |x-b|^2)^{-(d-2)/2}.
Real g_manifold_value(int d, Real a, Real b_axis, Real c, Real s, Real t);
Real g_star_value(int d, Real r);
// Normalized standard bubble, |g_*|_{2*} = 1.
RadialFunction g_star(int d, int n = 96);

// Conformal transport between R^d and S^d (axis variable only).
SphereFunction lift_to_sphere(const RadialFunction& f, GridPtr grid = nullptr);
RadialFunction push_to_plane(const SphereFunction& u);
// Exact nodal sampling of the pullback of g_{a, b e_d, c}.
DiscFunction sample_manifold(DiscGridPtr grid, const ManifoldPoint& point);
DiscFunction embed_axis_profile(DiscGridPtr grid, const RadialFunction& f);

AxiSymFunction sample_axisym(int d, Real s_max, Real t_max, int n_s, int n_t,
                             const std::function<Real(Real, Real)>& f);
Real lp_norm(const AxiSymFunction& f, Real q);
DiscFunction to_disc(const AxiSymFunction& f, DiscGridPtr grid);

// Euclidean functionals through the transport identities.
Real grad_norm_sq(const DiscFunction& u);          // |grad f|^2_{L^2(R^d)}
Real lp_norm_euclidean(const DiscFunction& u, Real q);
Real sobolev_deficit(const DiscFunction& u);
Real sobolev_deficit(const RadialFunction& f);

ProjectionResult project_to_manifold(const DiscFunction& f);
ProjectionResult project_to_manifold(const RadialFunction& f,
                                     DiscGridPtr grid);

Real stability_quotient(const DiscFunction& f);

// Empirical (non-certified) upper estimate of the constrained infimum of the
// stability quotient over a family.
Real estimate_I_delta(Real delta, const std::vector<DiscFunction>& family);

// Monotone cubic (Fritsch-Carlson) interpolant helper shared by the
// radial/rearrangement code.
HermiteSpline make_pchip(std::vector<Real> x, std::vector<Real> y);

}  // namespace ineq
