#include "ineq/euclidean.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ineq/errors.hpp"
#include "ineq/quadrature.hpp"

namespace ineq {

namespace {

Real half_dm2(int d) { return 0.5 * (d - 2.0); }

struct TransportConstants {
  Real A, volume, S_d, two_star;
  explicit TransportConstants(int d) {
    A = 0.25 * d * (d - 2.0);
    volume = sphere_surface_volume(d);
    S_d = A * std::pow(volume, 2.0 / d);
    two_star = 2.0 * d / (d - 2.0);
  }
};

}  // namespace

Real g_manifold_value(int d, Real a, Real b_axis, Real c, Real s, Real t) {
  const Real q = a + s * s + (t - b_axis) * (t - b_axis);
  return c * std::pow(q, -half_dm2(d));
}

Real g_star_value(int d, Real r) {
  const Real volume = sphere_surface_volume(d);
  return std::pow(volume, -half_dm2(d) / d) *
         std::pow(2.0 / (1.0 + r * r), half_dm2(d));
}

RadialFunction g_star(int d, int n) {
  GridPtr grid = build_grid(d, n);
  SphereFunction u = constant_function(
      grid, std::pow(sphere_surface_volume(d), -(d - 2.0) / (2.0 * d)));
  return push_to_plane(u);
}

SphereFunction lift_to_sphere(const RadialFunction& f, GridPtr grid) {
  const Real e = half_dm2(f.d);
  if (f.sphere_grid && (!grid || grid == f.sphere_grid)) {
    GridPtr g = f.sphere_grid;
    Vector u(g->size());
    for (Index i = 0; i < g->size(); ++i)
      u[i] = std::pow(1.0 - g->nodes()[i], -e) * f.values[i];
    return SphereFunction(g, std::move(u));
  }
  if (!grid) throw invalid_parameter("lift_to_sphere: grid required");
  // Interpolate the sphere-side profile in the z variable; monotone cubic
  // keeps rearranged (kinked) profiles free of overshoot.
  std::vector<Real> zs(f.r.size()), us(f.r.size());
  for (Index i = 0; i < f.r.size(); ++i) {
    const Real r2 = f.r[i] * f.r[i];
    zs[i] = (r2 - 1.0) / (r2 + 1.0);
    us[i] = std::pow(1.0 - zs[i], -e) * f.values[i];
  }
  HermiteSpline spline = make_pchip(std::move(zs), std::move(us));
  Vector u(grid->size());
  for (Index i = 0; i < grid->size(); ++i) {
    const Real z = grid->nodes()[i];
    if (z < spline.s_min() || z > spline.s_max())
      throw integrability_error("lift_to_sphere: radial grid does not cover z range");
    u[i] = spline(z);
  }
  return SphereFunction(std::move(grid), std::move(u));
}

RadialFunction push_to_plane(const SphereFunction& u) {
  const int d = u.grid->dimension();
  RadialFunction f;
  f.d = d;
  f.sphere_grid = u.grid;
  f.r.resize(u.grid->size());
  f.values.resize(u.grid->size());
  for (Index i = 0; i < u.grid->size(); ++i) {
    const Real z = u.grid->nodes()[i];
    f.r[i] = std::sqrt((1.0 + z) / (1.0 - z));
    f.values[i] = std::pow(1.0 - z, half_dm2(d)) * u.values[i];
  }
  return f;
}

DiscFunction sample_manifold(DiscGridPtr grid, const ManifoldPoint& point) {
  const int d = grid->dimension();
  const Real b = point.b.size() > 0 ? point.b[point.b.size() - 1] : 0.0;
  const Real c0 = 1.0 + point.a + b * b;
  const Real cz = 1.0 - point.a - b * b;
  const Real cy = -2.0 * b;
  const Real e = half_dm2(d);
  Matrix v(grid->n_rho(), grid->n_theta());
  for (Index i = 0; i < grid->n_rho(); ++i)
    for (Index j = 0; j < grid->n_theta(); ++j)
      v(i, j) = point.c *
                std::pow(c0 + cz * grid->z(i, j) + cy * grid->y(i, j), -e);
  return DiscFunction(std::move(grid), std::move(v));
}

DiscFunction embed_axis_profile(DiscGridPtr grid, const RadialFunction& f) {
  SphereFunction u = lift_to_sphere(f, f.sphere_grid
                                           ? f.sphere_grid
                                           : build_grid(f.d, 96));
  // Evaluate the z-profile spectrally at the disc nodes.
  const Vector coeffs = u.coeffs();
  const UltrasphericalGrid& sg = *u.grid;
  const int K = sg.degree_cap();
  // Recurrence evaluation of the orthonormal axis basis at arbitrary z.
  auto eval_profile = [&](Real z) {
    Real pkm1 = 0.0, pk = 1.0, acc = coeffs[0];
    Real bk = 0.0;
    for (int k = 0; k < K; ++k) {
      const Real bk1 = Real(k + 1) * (k + 1 + f.d - 2) /
                       ((2.0 * (k + 1) + f.d - 1) * (2.0 * (k + 1) + f.d - 3));
      const Real pk1 = (z * pk - std::sqrt(bk) * pkm1) / std::sqrt(bk1);
      pkm1 = pk;
      pk = pk1;
      bk = bk1;
      if (k + 1 < coeffs.size()) acc += coeffs[k + 1] * pk;
    }
    return acc;
  };
  return from_axis_profile(std::move(grid), eval_profile);
}

AxiSymFunction sample_axisym(int d, Real s_max, Real t_max, int n_s, int n_t,
                             const std::function<Real(Real, Real)>& f) {
  AxiSymFunction out;
  out.d = d;
  QuadratureRule qs = gauss_legendre(n_s);
  QuadratureRule qt = gauss_legendre(n_t);
  out.s = (0.5 * s_max * (qs.nodes.array() + 1.0)).matrix();
  out.s_weights = 0.5 * s_max * qs.weights;
  out.t = t_max * qt.nodes;
  out.t_weights = t_max * qt.weights;
  out.values.resize(n_s, n_t);
  for (int i = 0; i < n_s; ++i)
    for (int j = 0; j < n_t; ++j) out.values(i, j) = f(out.s[i], out.t[j]);
  return out;
}

Real lp_norm(const AxiSymFunction& f, Real q) {
  const Real shell = sphere_surface_volume(f.d - 2);
  Real acc = 0.0;
  for (Index i = 0; i < f.s.size(); ++i) {
    const Real ws = f.s_weights[i] * std::pow(f.s[i], f.d - 2.0);
    acc += ws * f.t_weights.dot(
                    f.values.row(i).array().abs().pow(q).matrix().transpose());
  }
  return std::pow(shell * acc, 1.0 / q);
}

DiscFunction to_disc(const AxiSymFunction& f, DiscGridPtr grid) {
  // Bilinear interpolation on the (s, t) grid; zero beyond its box. Intended
  // for imported nodal data -- closed-form inputs should be sampled directly.
  auto interp = [&](Real s, Real t) -> Real {
    const Vector& S = f.s;
    const Vector& T = f.t;
    if (s < S[0] || s > S[S.size() - 1] || t < T[0] || t > T[T.size() - 1])
      return 0.0;
    Index i = std::upper_bound(S.data(), S.data() + S.size(), s) - S.data();
    Index j = std::upper_bound(T.data(), T.data() + T.size(), t) - T.data();
    i = std::clamp<Index>(i, 1, S.size() - 1);
    j = std::clamp<Index>(j, 1, T.size() - 1);
    const Real xs = (s - S[i - 1]) / (S[i] - S[i - 1]);
    const Real xt = (t - T[j - 1]) / (T[j] - T[j - 1]);
    return (1 - xs) * (1 - xt) * f.values(i - 1, j - 1) +
           xs * (1 - xt) * f.values(i, j - 1) +
           (1 - xs) * xt * f.values(i - 1, j) + xs * xt * f.values(i, j);
  };
  return from_euclidean(std::move(grid), interp);
}

Real grad_norm_sq(const DiscFunction& u) {
  const TransportConstants tc(u.grid->dimension());
  return tc.volume * (dirichlet_energy(u) + tc.A * l2_inner(u, u));
}

Real lp_norm_euclidean(const DiscFunction& u, Real q) {
  const int d = u.grid->dimension();
  const TransportConstants tc(d);
  // |f|_q^q = |S^d| int |u|^q (1-z)^{(d-2)q/2 - d} dmu; at q = 2* the weight
  // cancels. Other exponents carry the conformal factor explicitly.
  const Real expo = half_dm2(d) * q - d;
  Real acc = 0.0;
  for (Index i = 0; i < u.grid->n_rho(); ++i)
    for (Index j = 0; j < u.grid->n_theta(); ++j)
      acc += u.grid->weight(i) *
             std::pow(std::abs(u.values(i, j)), q) *
             std::pow(1.0 - u.grid->z(i, j), expo);
  return std::pow(tc.volume * acc, 1.0 / q);
}

Real sobolev_deficit(const DiscFunction& u) {
  const TransportConstants tc(u.grid->dimension());
  const Real n2 = l2_inner(u, u);
  const Real nstar = lq_norm(u, tc.two_star);
  return tc.volume *
         (dirichlet_energy(u) + tc.A * n2 - tc.A * nstar * nstar);
}

Real sobolev_deficit(const RadialFunction& f) {
  SphereFunction u =
      lift_to_sphere(f, f.sphere_grid ? f.sphere_grid : build_grid(f.d, 96));
  const TransportConstants tc(f.d);
  const Real n2 = u.grid->weights().dot(u.values.cwiseProduct(u.values));
  const Real nstar = lq_norm(u, tc.two_star);
  return tc.volume *
         (dirichlet_energy(u) + tc.A * n2 - tc.A * nstar * nstar);
}

namespace {

// Gradient-seminorm projection machinery. With c eliminated in closed form,
// the objective reduces to maximizing T1(a,b)^2 / T2(a) where
// T1 = <grad f, grad g_{a,b,1}> and T2 = |grad g_{a,b,1}|^2 = a^{-(d-2)/2} T2(1).
struct ProjectionProblem {
  const DiscFunction& f;
  TransportConstants tc;
  Real grad_f_sq;
  Real t2_unit;  // |grad g_{1,0,1}|^2

  explicit ProjectionProblem(const DiscFunction& f_in)
      : f(f_in), tc(f_in.grid->dimension()) {
    grad_f_sq = grad_norm_sq(f);
    const int d = f.grid->dimension();
    const Real norm_star =
        std::pow(tc.volume / std::pow(2.0, d), 1.0 / tc.two_star);
    t2_unit = tc.S_d * norm_star * norm_star;
  }

  Real t2(Real a) const {
    return std::pow(a, -half_dm2(f.grid->dimension())) * t2_unit;
  }

  Real t1(Real a, Real b) const {
    ManifoldPoint point;
    point.a = a;
    point.b = Vector::Zero(f.grid->dimension());
    point.b[f.grid->dimension() - 1] = b;
    point.c = 1.0;
    DiscFunction g = sample_manifold(f.grid, point);
    return tc.volume * (dirichlet_inner(f, g) + tc.A * l2_inner(f, g));
  }

  // Quantity to minimize: dist2(a, b) with optimal c.
  Real objective(Real la, Real b) const {
    const Real a = std::exp(la);
    const Real T1 = t1(a, b);
    return grad_f_sq - T1 * T1 / t2(a);
  }
};

}  // namespace

ProjectionResult project_to_manifold(const DiscFunction& f) {
  ProjectionProblem prob(f);
  const int d = f.grid->dimension();
  if (prob.grad_f_sq <= 0.0)
    throw degenerate_input("project_to_manifold: |grad f| = 0");

  // Moment initialization from the |f|^{2*} density.
  Real mass = 0.0, first = 0.0;
  for (Index i = 0; i < f.grid->n_rho(); ++i)
    for (Index j = 0; j < f.grid->n_theta(); ++j) {
      const Real w = f.grid->weight(i) *
                     std::pow(std::abs(f.values(i, j)), prob.tc.two_star);
      mass += w;
      first += w * f.grid->y(i, j) / (1.0 - f.grid->z(i, j));
    }
  Real b0 = mass > 0.0 ? first / mass : 0.0;
  Real second = 0.0;
  for (Index i = 0; i < f.grid->n_rho(); ++i)
    for (Index j = 0; j < f.grid->n_theta(); ++j) {
      const Real w = f.grid->weight(i) *
                     std::pow(std::abs(f.values(i, j)), prob.tc.two_star);
      const Real z = f.grid->z(i, j);
      const Real xd = f.grid->y(i, j) / (1.0 - z);
      const Real x2 = (1.0 + z) / (1.0 - z);
      second += w * (x2 - 2.0 * b0 * xd + b0 * b0);
    }
  Real a0 = mass > 0.0 ? std::max(1e-3, (d - 2.0) / d * second / mass) : 1.0;
  a0 = std::min(a0, 1e3);

  // Damped Newton on (log a, b) with finite-difference derivatives.
  Real la = std::log(a0), b = b0;
  Real fval = prob.objective(la, b);
  {
    const Real alt = prob.objective(0.0, 0.0);
    if (alt < fval) {
      la = 0.0;
      b = 0.0;
      fval = alt;
    }
  }
  const Real h = 1e-5;
  const Real tol = 1e-11 * prob.grad_f_sq;
  Real grad_norm = 0.0;
  bool converged = false;
  for (int iter = 0; iter < 120; ++iter) {
    const Real fpa = prob.objective(la + h, b), fma = prob.objective(la - h, b);
    const Real fpb = prob.objective(la, b + h), fmb = prob.objective(la, b - h);
    const Real ga = (fpa - fma) / (2 * h), gb = (fpb - fmb) / (2 * h);
    grad_norm = std::hypot(ga, gb);
    if (grad_norm <= tol) {
      converged = true;
      break;
    }
    const Real haa = (fpa - 2 * fval + fma) / (h * h);
    const Real hbb = (fpb - 2 * fval + fmb) / (h * h);
    const Real hab = (prob.objective(la + h, b + h) - prob.objective(la + h, b - h) -
                      prob.objective(la - h, b + h) + prob.objective(la - h, b - h)) /
                     (4 * h * h);
    Real da, db;
    const Real det = haa * hbb - hab * hab;
    if (det > 0.0 && haa > 0.0) {
      da = -(hbb * ga - hab * gb) / det;
      db = -(haa * gb - hab * ga) / det;
    } else {
      const Real scale = std::max(std::abs(ga), std::abs(gb)) + 1e-300;
      da = -ga / scale * 0.1;
      db = -gb / scale * 0.1;
    }
    Real step = 1.0;
    bool moved = false;
    for (int ls = 0; ls < 40; ++ls) {
      const Real cand = prob.objective(la + step * da, b + step * db);
      if (cand < fval - 1e-16 * std::abs(fval)) {
        la += step * da;
        b += step * db;
        fval = cand;
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) {
      converged = grad_norm <= 1e-8 * prob.grad_f_sq;
      break;
    }
  }

  ProjectionResult result;
  const Real a = std::exp(la);
  result.point.a = a;
  result.point.b = Vector::Zero(d);
  result.point.b[d - 1] = b;
  result.point.c = prob.t1(a, b) / prob.t2(a);
  result.dist2 = std::max(fval, 0.0);
  result.converged = converged;
  result.grad_norm = grad_norm;
  return result;
}

ProjectionResult project_to_manifold(const RadialFunction& f,
                                     DiscGridPtr grid) {
  return project_to_manifold(embed_axis_profile(std::move(grid), f));
}

Real stability_quotient(const DiscFunction& f) {
  const Real deficit = sobolev_deficit(f);
  ProjectionResult proj = project_to_manifold(f);
  if (proj.dist2 <= 0.0)
    throw undefined_quotient("stability_quotient: f lies on the manifold");
  return deficit / proj.dist2;
}

Real estimate_I_delta(Real delta, const std::vector<DiscFunction>& family) {
  if (delta <= 0.0 || delta >= 0.5)
    throw invalid_parameter("estimate_I_delta: delta must lie in (0, 1/2)");
  if (family.empty()) throw empty_sample("estimate_I_delta: empty family");
  Real best = std::numeric_limits<Real>::infinity();
  bool any = false;
  for (const DiscFunction& f : family) {
    const Real gsq = grad_norm_sq(f);
    ProjectionResult proj = project_to_manifold(f);
    if (proj.dist2 > delta * gsq || proj.dist2 <= 0.0) continue;
    any = true;
    best = std::min(best, sobolev_deficit(f) / proj.dist2);
  }
  if (!any)
    throw empty_sample("estimate_I_delta: no family member satisfies the constraint");
  return best;
}

HermiteSpline make_pchip(std::vector<Real> x, std::vector<Real> y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n)
    throw invalid_parameter("make_pchip: need at least two points");
  std::vector<Real> d(n, 0.0), slopes(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i)
    slopes[i] = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
  d[0] = slopes[0];
  d[n - 1] = slopes[n - 2];
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (slopes[i - 1] * slopes[i] <= 0.0) {
      d[i] = 0.0;
    } else {
      const Real w1 = 2.0 * (x[i + 1] - x[i]) + (x[i] - x[i - 1]);
      const Real w2 = (x[i + 1] - x[i]) + 2.0 * (x[i] - x[i - 1]);
      d[i] = (w1 + w2) / (w1 / slopes[i - 1] + w2 / slopes[i]);
    }
  }
  return HermiteSpline(std::move(x), std::move(y), std::move(d));
}

}  // namespace ineq
