#include "ineq/sigma_lift.hpp"

#include <cmath>

#include "ineq/errors.hpp"
#include "ineq/params.hpp"
#include "ineq/quadrature.hpp"
#include "ineq/spline.hpp"
#include "ineq/ultraspherical.hpp"

namespace ineq {

namespace {

Real double_factorial_odd(int m) {  // (2m-1)!!
  Real acc = 1.0;
  for (int k = 1; k <= m; ++k) acc *= 2.0 * k - 1.0;
  return acc;
}

// Band-limited (Hermite-spectral) evaluation of a 1-D nodal function at an
// arbitrary point.
struct Spectral1D {
  Vector coeffs;
  explicit Spectral1D(const GaussianFunction& r)
      : coeffs(r.grid->analyze1d(r.values)) {}

  Real operator()(Real x) const {
    const Real v = 1.0 / (2.0 * kPi);
    Real acc = coeffs[0];
    Real hm1 = 0.0, h = 1.0;
    for (Index k = 1; k < coeffs.size(); ++k) {
      const Real hk =
          (x * h - std::sqrt((k - 1.0) * v) * hm1) / std::sqrt(k * v);
      hm1 = h;
      h = hk;
      acc += coeffs[k] * h;
    }
    return acc;
  }
};

}  // namespace

SphereLiftSpec make_lift_spec(int d, int N) {
  if (d <= N) throw invalid_parameter("make_lift_spec: need d > N");
  SphereLiftSpec spec;
  spec.d = d;
  spec.N = N;
  spec.rho_d = std::sqrt(d / (2.0 * kPi));
  spec.Z_d = std::exp((1.0 - d) * std::log(2.0) + 0.5 * std::log(kPi) -
                      std::lgamma(0.5 * (d + 1.0)) +
                      0.5 * d * std::log(0.5 * d));
  return spec;
}

MomentPair lift_moments(int d, const std::vector<int>& powers) {
  if (powers.empty() || powers.size() > std::size_t(d))
    throw invalid_parameter("lift_moments: bad monomial spec");
  int total = 0;
  for (int p : powers) {
    if (p < 0 || p > 4) throw invalid_parameter("lift_moments: degree <= 4");
    total += p;
  }
  MomentPair out;
  for (int p : powers)
    if (p % 2 == 1) return out;  // odd moment: both sides vanish

  // E[prod x_i^{2 m_i}] on a sphere of radius rho in R^{d+1}:
  //   rho^{2M} Gamma((d+1)/2) / (2^M Gamma((d+1)/2 + M)) prod (2 m_i - 1)!!
  const Real rho = std::sqrt(d / (2.0 * kPi));
  const int M = total / 2;
  Real sphere = std::pow(rho, 2.0 * M) *
                std::exp(std::lgamma(0.5 * (d + 1.0)) -
                         std::lgamma(0.5 * (d + 1.0) + M)) /
                std::pow(2.0, M);
  Real gauss = 1.0;
  for (int p : powers) {
    sphere *= double_factorial_odd(p / 2);
    gauss *= double_factorial_odd(p / 2) / std::pow(2.0 * kPi, p / 2);
  }
  out.sphere_value = sphere;
  out.gauss_value = gauss;
  return out;
}

Real sigma_moment_quadrature(int d, int power, int n) {
  // The 1-coordinate marginal of Sigma_d is the ultraspherical measure
  // scaled by rho_d.
  GridPtr grid = build_grid(d, n);
  const Real rho = std::sqrt(d / (2.0 * kPi));
  Real acc = 0.0;
  for (Index i = 0; i < grid->size(); ++i)
    acc += grid->weights()[i] * std::pow(rho * grid->nodes()[i], power);
  return acc;
}

Real mu_d_normalization(int d, int n) {
  // int_{R^d} Z_d^{-1} (1 + |x|^2 / r_d^2)^{-d} dx with r = r_d tan(phi):
  // |S^{d-1}| r_d^d int_0^{pi/2} sin^{d-1} cos^{d-1} dphi.
  SphereLiftSpec spec = make_lift_spec(d, 1);
  QuadratureRule rule = gauss_legendre(n);
  Real acc = 0.0;
  for (Index i = 0; i < rule.size(); ++i) {
    const Real phi = 0.25 * kPi * (rule.nodes[i] + 1.0);
    acc += 0.25 * kPi * rule.weights[i] *
           std::pow(std::sin(phi) * std::cos(phi), d - 1.0);
  }
  return sphere_surface_volume(d - 1) * std::pow(spec.rho_d, d) * acc / spec.Z_d;
}

Real SigmaLiftFunction::evaluate(const Vector& x) const {
  if (x.size() != spec.N)
    throw invalid_parameter("SigmaLiftFunction: dimension mismatch");
  Real value = Spectral1D(r)(x[0]) - mean_sigma;
  for (int n = 0; n < spec.N; ++n)
    value -= 2.0 * kPi * (spec.d + 1.0) / spec.d * x[n] * first_moments[n];
  return value;
}

SigmaLiftFunction build_R_d(const GaussianFunction& r, int d) {
  if (r.grid->dim() != 1)
    throw invalid_parameter("build_R_d: implemented for N = 1");
  SigmaLiftFunction out;
  out.spec = make_lift_spec(d, 1);
  out.r = r;

  const Spectral1D rv(r);
  GridPtr marginal = build_grid(d, 192);
  Real mean = 0.0, first = 0.0;
  for (Index i = 0; i < marginal->size(); ++i) {
    const Real x = out.spec.rho_d * marginal->nodes()[i];
    const Real value = rv(x);
    mean += marginal->weights()[i] * value;
    first += marginal->weights()[i] * x * value;
  }
  out.mean_sigma = mean;
  out.first_moments = Vector::Constant(1, first);
  return out;
}

OrthogonalityResiduals orthogonality_residuals(const SigmaLiftFunction& R) {
  GridPtr marginal = build_grid(R.spec.d, 192);
  OrthogonalityResiduals res;
  res.coordinate = Vector::Zero(R.spec.N);
  Vector x(1);
  for (Index i = 0; i < marginal->size(); ++i) {
    x[0] = R.spec.rho_d * marginal->nodes()[i];
    const Real v = R.evaluate(x);
    res.mean += marginal->weights()[i] * v;
    res.coordinate[0] += marginal->weights()[i] * x[0] * v;
  }
  // Normalized-coordinate residual: x_1 has norm rho_d^2/(d+1) on Sigma_d.
  res.coordinate[0] /= R.spec.rho_d * R.spec.rho_d / (R.spec.d + 1.0);
  return res;
}

}  // namespace ineq
