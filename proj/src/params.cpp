#include "ineq/params.hpp"

#include <cmath>

#include "ineq/errors.hpp"

namespace ineq {

namespace {

Real effective_p(const InterpolationParams& params) {
  return params.log_case ? 2.0 : params.p;
}

InterpolationParams derive(int d, Real p, bool log_case) {
  if (d < 3) throw invalid_parameter("make_params: d must be >= 3");
  InterpolationParams params;
  params.d = d;
  params.p = p;
  params.log_case = log_case;
  params.two_star = 2.0 * d / (d - 2.0);
  params.two_sharp = (2.0 * d * d + 1.0) / ((d - 1.0) * (d - 1.0));
  params.A = 0.25 * d * (d - 2.0);
  params.sphere_volume = sphere_surface_volume(d);
  params.S_d = params.A * std::pow(params.sphere_volume, 2.0 / d);
  if (!log_case && (p <= 1.0 || p > params.two_star + 1e-12))
    throw invalid_parameter("make_params: p must lie in (1, 2*]");
  return params;
}

}  // namespace

bool InterpolationParams::critical() const {
  return !log_case && std::abs(p - two_star) < 1e-12;
}

Real sphere_surface_volume(int d) {
  return 2.0 * std::pow(kPi, 0.5 * (d + 1)) / std::tgamma(0.5 * (d + 1));
}

InterpolationParams make_params(int d, Real p) {
  if (p == 2.0) return make_params_log(d);
  return derive(d, p, false);
}

InterpolationParams make_params_log(int d) { return derive(d, 2.0, true); }

Real gamma_of_beta(const InterpolationParams& params, Real beta) {
  const Real p = effective_p(params);
  const Real d = params.d;
  const Real kappa = beta * (p - 2.0) + 1.0;
  const Real kb1 = kappa + beta - 1.0;  // = beta (p-1)
  const Real r = (d - 1.0) / (d + 2.0);
  return -r * r * kb1 * kb1 + kappa * (beta - 1.0) + d / (d + 2.0) * kb1;
}

Real beta_of_m(const InterpolationParams& params, Real m) {
  const Real p = effective_p(params);
  const Real denom = 2.0 + p * (m - 1.0);
  if (denom <= 0.0)
    throw invalid_parameter("beta_of_m: m leaves the beta parametrization");
  return 2.0 / denom;
}

Real m_of_beta(const InterpolationParams& params, Real beta) {
  const Real p = effective_p(params);
  if (beta <= 0.0) throw invalid_parameter("m_of_beta: beta must be positive");
  return 1.0 + (2.0 / p) * (1.0 / beta - 1.0);
}

namespace {

Real m_bound(const InterpolationParams& params, int sign) {
  const Real p = effective_p(params);
  const Real d = params.d;
  const Real disc = d * (d - 2.0) * (p - 1.0) * (params.two_star - p);
  return (d * p + 2.0 + sign * std::sqrt(std::max(disc, Real(0)))) /
         ((d + 2.0) * p);
}

}  // namespace

Real m_minus(const InterpolationParams& params) { return m_bound(params, -1); }
Real m_plus(const InterpolationParams& params) { return m_bound(params, +1); }

Real beta_star(const InterpolationParams& params) {
  const Real p = effective_p(params);
  const Real d = params.d;
  if (d + 3.0 - p <= 1e-12)
    throw invalid_parameter(
        "beta_star: undefined at p = d+3 (critical exponent, d = 3)");
  Real beta = (d + 2.0) / (d + 3.0 - p);  // argmax of gamma(beta)/beta^2
  if (p > 2.0 && p < 4.0) beta = std::min(beta, 2.0 / (4.0 - p));
  return beta;
}

FlowExponents flow_exponents(const InterpolationParams& params, Beta beta) {
  const Real p = effective_p(params);
  if (beta.value <= 0.0)
    throw invalid_parameter("flow_exponents: beta must be positive");
  FlowExponents exps;
  exps.beta = beta.value;
  exps.m = m_of_beta(params, exps.beta);
  exps.kappa = exps.beta * (p - 2.0) + 1.0;
  exps.gamma = gamma_of_beta(params, exps.beta);
  if (p <= 2.0) {
    exps.delta = 1.0;
  } else {
    const Real denom = 2.0 * exps.beta * (p - 2.0);
    if (denom == 0.0)
      throw invalid_parameter("flow_exponents: delta undefined (beta(p-2)=0)");
    exps.delta = (2.0 - (4.0 - p) * exps.beta) / denom;
  }
  exps.m_minus = m_minus(params);
  exps.m_plus = m_plus(params);
  exps.beta_star = beta_star(params);
  return exps;
}

FlowExponents flow_exponents(const InterpolationParams& params, DiffusionM m) {
  return flow_exponents(params, Beta{beta_of_m(params, m.value)});
}

}  // namespace ineq
