#include "ineq/sphere_functionals.hpp"

#include <cmath>

#include "ineq/errors.hpp"

namespace ineq {

namespace {

Real l2_norm_sq(const SphereFunction& u) {
  return u.grid->weights().dot(u.values.cwiseProduct(u.values));
}

// int u^2 ln(u^2 / n2sq) with 0 ln 0 = 0 at nodes where u vanishes.
Real log_entropy_integral(const SphereFunction& u, Real n2sq) {
  Real acc = 0.0;
  for (Index i = 0; i < u.values.size(); ++i) {
    const Real u2 = u.values[i] * u.values[i];
    if (u2 > 0.0) acc += u.grid->weights()[i] * u2 * std::log(u2 / n2sq);
  }
  return acc;
}

}  // namespace

Real entropy_e(const SphereFunction& u, const InterpolationParams& params) {
  const Real n2sq = l2_norm_sq(u);
  if (n2sq <= 0.0) throw degenerate_input("entropy_e: |u|_2 = 0");
  if (params.log_case) return 0.5 * log_entropy_integral(u, n2sq);
  const Real np = lq_norm(u, params.p);
  return (np * np - n2sq) / (params.p - 2.0);
}

DeficitReport gns_deficit(const SphereFunction& u,
                          const InterpolationParams& params,
                          const ImprovedCurve* curve) {
  DeficitReport report;
  const Real n2sq = l2_norm_sq(u);
  if (n2sq <= 0.0) throw degenerate_input("gns_deficit: |u|_2 = 0");
  report.norm_2 = std::sqrt(n2sq);
  report.norm_p = params.log_case ? report.norm_2 : lq_norm(u, params.p);
  report.i = dirichlet_energy(u);
  report.e = entropy_e(u, params);
  report.deficit = report.i - params.d * report.e;
  if (curve != nullptr) {
    report.has_improved = true;
    report.improved_deficit = report.i - params.d * curve->phi(report.e);
  }
  return report;
}

ThetaImprovement theta_improvement(const SphereFunction& u,
                                   const InterpolationParams& params) {
  const Real p = params.p;
  if (params.log_case || p <= 2.0 || p >= params.two_sharp)
    throw invalid_parameter("theta_improvement: requires p in (2, 2#)");
  const Real r = (params.d - 1.0) / (params.d + 2.0);
  const Real inv_theta =
      1.0 + r * r * (p - 1.0) * (params.two_sharp - p) / (p - 2.0);

  ThetaImprovement out;
  out.theta = 1.0 / inv_theta;
  out.lhs = dirichlet_energy(u);
  const Real n2sq = l2_norm_sq(u);
  if (n2sq <= 0.0) throw degenerate_input("theta_improvement: |u|_2 = 0");
  const Real np = lq_norm(u, p);
  out.rhs_gns = params.d / (p - 2.0) * (np * np - n2sq);
  out.rhs_theta = params.d * out.theta / (p - 2.0) *
                  (std::pow(np, 2.0 * inv_theta) *
                       std::pow(std::sqrt(n2sq), 2.0 - 2.0 * inv_theta) -
                   n2sq);
  return out;
}

RemainderFunctional remainder_functional(const SphereFunction& u,
                                         const InterpolationParams& params,
                                         Real kappa_param) {
  RemainderFunctional out;
  DeficitReport report = gns_deficit(u, params);
  out.lhs = report.deficit;

  const SphereFunction pi1 = project_degree(u, {1});
  const Real grad_pi1 = dirichlet_energy_parseval(pi1);
  // (Id - Pi1) u differs from u in the degree-1 coefficient only.
  const Real grad_rest = dirichlet_energy_parseval(u) - grad_pi1;
  const Real denom = report.i + report.norm_2 * report.norm_2;
  out.rhs = kappa_param * (grad_pi1 * grad_pi1 / denom + grad_rest);
  return out;
}

CutFunctionals cut_functionals(const SphereFunction& r,
                               const CutConstants& constants,
                               const InterpolationParams& params) {
  const int d = params.d;
  if (d < 6)
    throw invalid_parameter("cut_functionals: requires d >= 6 (theta <= 1)");
  const Real theta = 4.0 / (d - 2.0);
  const CutConstants& cc = constants;
  if (!(cc.gamma_cut > 0.0 && cc.gamma_cut < cc.M))
    throw invalid_parameter("cut_functionals: need 0 < gamma < M");
  if (cc.M_bar < std::sqrt(std::exp(1.0)))
    throw invalid_parameter("cut_functionals: need M_bar >= sqrt(e)");
  if (!(cc.eps0 > 0.0 && cc.eps0 * theta < 1.0))
    throw invalid_parameter("cut_functionals: need eps0 in (0, 1/theta)");
  if (cc.eps1 <= 0.0 || cc.eps2 <= 0.0 || cc.k0 <= 0.0 || cc.c_eps12 <= 0.0)
    throw invalid_parameter("cut_functionals: constants must be positive");

  const Index n = r.grid->size();
  Vector v1(n), v2(n), v3(n);
  for (Index i = 0; i < n; ++i) {
    const Real x = r.values[i];
    v1[i] = std::min(x, cc.gamma_cut);
    v2[i] = std::min(std::max(x - cc.gamma_cut, 0.0), cc.M - cc.gamma_cut);
    v3[i] = std::max(x - cc.M, 0.0);
  }

  // Gradients of the pieces coincide a.e. with the gradient of r on the
  // matching height band, so the energies are computed with nodal masks
  // rather than by differentiating the kinked pieces.
  const Vector dr = derivative_values(r);
  const Vector& z = r.grid->nodes();
  const Vector& w = r.grid->weights();
  Real g1 = 0.0, g2 = 0.0, g3 = 0.0;
  for (Index i = 0; i < n; ++i) {
    const Real cell = w[i] * dr[i] * dr[i] * (1.0 - z[i] * z[i]);
    const Real x = r.values[i];
    if (x < cc.gamma_cut)
      g1 += cell;
    else if (x < cc.M)
      g2 += cell;
    else
      g3 += cell;
  }

  auto msq = [&](const Vector& v) { return w.dot(v.cwiseProduct(v)); };
  const Real q1 = msq(v1), q2 = msq(v2), q3 = msq(v3);
  const Real q3_star = w.dot(v3.array().pow(params.two_star).matrix());

  const Real A = params.A;
  const Real ts = params.two_star;
  CutFunctionals out;
  out.I1 = (1.0 - theta * cc.eps0) * (g1 + A * q1) -
           A * (ts - 1.0 + cc.eps1 * theta) * q1 + A * cc.k0 * theta * (q2 + q3);
  out.I2 = (1.0 - theta * cc.eps0) * (g2 + A * q2) -
           A * (ts - 1.0 + (cc.k0 + cc.c_eps12) * theta) * q2;
  out.I3 = (1.0 - theta * cc.eps0) * (g3 + A * q3) -
           (2.0 / ts) * A * (1.0 + cc.eps2 * theta) * q3_star -
           A * cc.k0 * theta * q3;
  out.r1 = SphereFunction(r.grid, std::move(v1));
  out.r2 = SphereFunction(r.grid, std::move(v2));
  out.r3 = SphereFunction(r.grid, std::move(v3));
  return out;
}

Real local_stability_ratio(const SphereFunction& r,
                           const InterpolationParams& params) {
  const Real mean = integrate(r);
  const SphereFunction zr(r.grid, r.grid->nodes().cwiseProduct(r.values));
  const Real first = integrate(zr);
  const Real scale = std::sqrt(l2_norm_sq(r)) + 1e-300;
  if (std::abs(mean) > 1e-8 * scale || std::abs(first) > 1e-8 * scale)
    throw precondition_error(
        "local_stability_ratio: r must satisfy int r = int z r = 0");

  Vector uv = r.values.array() + 1.0;
  const SphereFunction u(r.grid, std::move(uv));
  const Real ts = params.two_star;
  const Real np = lq_norm(u, ts);
  const Real numer = dirichlet_energy(u) + params.A * l2_norm_sq(u) -
                     params.A * np * np;
  const Real denom = dirichlet_energy(r) + params.A * l2_norm_sq(r);
  if (denom <= 0.0) throw degenerate_input("local_stability_ratio: r = 0");
  return numer / denom;
}

}  // namespace ineq
