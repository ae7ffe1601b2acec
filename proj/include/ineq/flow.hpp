#pragma once

#include <optional>
#include <vector>

#include "ineq/improved_curve.hpp"
#include "ineq/params.hpp"
#include "ineq/ultraspherical.hpp"

namespace ineq {

enum class FlowScheme { SemiImplicit, ExplicitAdaptive };

struct FlowConfig {
  InterpolationParams params;
  FlowExponents exps;
  FlowScheme scheme = FlowScheme::SemiImplicit;
  Real dt0 = 1e-3;
  Real t_end = 8.0;
  int monitor_stride = 8;
  Real tol = 1e-9;           // local truncation target per step
  Real stop_deficit = 1e-7;  // early termination threshold
  bool allow_m_outside = false;
  bool conserve_mass = true;  // restore |u|_p^p by homogeneity rescale
  bool floor_nonnegative = true;
  bool with_improved = true;  // monitor i - d phi(e) when gamma > 0
};

// State of the substituted profile w with u = w^beta; the conserved density
// is rho = u^p = w^{beta p}.
struct FlowState {
  SphereFunction w;
  Real t = 0.0;
};

struct FlowRecord {
  Real t = 0.0;
  Real i = 0.0;
  Real e = 0.0;
  Real mass = 0.0;  // |u|_p^p
  Real deficit = 0.0;
  Real improved = 0.0;  // NaN when no curve is attached
  Real err_estimate = 0.0;
};

struct FlowTrace {
  std::vector<FlowRecord> records;
  bool reached_t_end = false;
  bool stopped_on_deficit = false;
};

// Dense nodal matrix of the operator L (spectral application, degree-capped).
Matrix build_L_matrix(const UltrasphericalGrid& grid);

FlowState init_state(const SphereFunction& u0, const FlowConfig& config);

// One semi-implicit step of  dw/dt = w^{2-2 beta} (L w + kappa |grad w|^2 / w):
// L is treated implicitly with the factor w^{2-2 beta} frozen, the gradient
// term explicitly. Ends with an anti-aliasing filter on the top third of the
// spectrum. Throws integration_error on positivity loss.
FlowState step(const FlowState& state, const FlowConfig& config);

// One conservative linearly-implicit step of  d rho/dt = L rho^m  (midpoint
// rule with the diffusivity frozen at a predicted half step). Exactly
// preserves int rho dsigma_d.
SphereFunction step_rho(const SphereFunction& rho, Real m, Real dt);

// Adaptive time integration with monitors recorded every monitor_stride
// accepted steps. Terminates at t_end or when the deficit drops below
// config.stop_deficit.
FlowTrace run(const SphereFunction& u0, const FlowConfig& config);

// Recover u = w^beta from a state.
SphereFunction profile_u(const FlowState& state, const FlowExponents& exps);

}  // namespace ineq
