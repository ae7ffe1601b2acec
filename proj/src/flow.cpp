#include "ineq/flow.hpp"

#include <Eigen/LU>
#include <cmath>
#include <limits>

#include "ineq/errors.hpp"
#include "ineq/sphere_functionals.hpp"

namespace ineq {

namespace {

Vector nodal_pow(const Vector& v, Real e) {
  return v.array().pow(e).matrix();
}

// Zero the top third of the resolvable spectrum; powers of w excite modes
// beyond the dealiased band.
Vector filter_top_third(const UltrasphericalGrid& grid, const Vector& values) {
  Vector c = grid.analyze(values);
  const Index keep = 1 + (2 * grid.degree_cap()) / 3;
  for (Index k = keep; k < c.size(); ++k) c[k] = 0.0;
  Vector smooth = grid.synthesize(c);
  return smooth;
}

Real mass_of_w(const UltrasphericalGrid& grid, const Vector& w, Real beta_p) {
  return grid.weights().dot(w.array().pow(beta_p).matrix());
}

struct WorkSpace {
  GridPtr grid;
  Matrix L;
  explicit WorkSpace(GridPtr g) : grid(std::move(g)), L(build_L_matrix(*grid)) {}
};

Vector w_step_core(const WorkSpace& ws, const Vector& w, const FlowConfig& cfg,
                   Real dt) {
  const UltrasphericalGrid& grid = *ws.grid;
  const Index n = grid.size();
  const Real beta = cfg.exps.beta;
  const Real kappa = cfg.exps.kappa;

  const Vector dw = derivative_values(SphereFunction(ws.grid, w));
  const Vector& z = grid.nodes();
  Vector grad_term(n);
  for (Index i = 0; i < n; ++i) {
    if (w[i] <= 0.0) throw integration_error("flow step: nonpositive w");
    grad_term[i] = kappa * (1.0 - z[i] * z[i]) * dw[i] * dw[i] / w[i];
  }
  const Vector F = nodal_pow(w, 2.0 - 2.0 * beta);

  Vector next;
  if (cfg.scheme == FlowScheme::SemiImplicit) {
    Matrix A = Matrix::Identity(n, n) - dt * F.asDiagonal() * ws.L;
    const Vector rhs = w + dt * F.cwiseProduct(grad_term);
    next = A.partialPivLu().solve(rhs);
  } else {
    next = w + dt * F.cwiseProduct(ws.L * w + grad_term);
  }
  next = filter_top_third(grid, next);
  if (next.minCoeff() <= 0.0)
    throw integration_error("flow step: positivity lost after step");
  return next;
}

}  // namespace

Matrix build_L_matrix(const UltrasphericalGrid& grid) {
  const int K = grid.degree_cap();
  Vector lambda(K + 1);
  for (int k = 0; k <= K; ++k) lambda[k] = -grid.eigenvalue(k);
  // analysis = B^T diag(weights), synthesis = B
  return grid.basis() * lambda.asDiagonal() * grid.basis().transpose() *
         grid.weights().asDiagonal();
}

SphereFunction profile_u(const FlowState& state, const FlowExponents& exps) {
  return SphereFunction(state.w.grid, nodal_pow(state.w.values, exps.beta));
}

FlowState init_state(const SphereFunction& u0, const FlowConfig& config) {
  const Real beta = config.exps.beta;
  Vector v = u0.values;
  const Real vmax = v.maxCoeff();
  if (vmax <= 0.0) throw degenerate_input("init_state: u0 has no positive part");
  if (v.minCoeff() <= 0.0) {
    if (!config.floor_nonnegative)
      throw degenerate_input("init_state: u0 must be strictly positive");
    const Real floor = 1e-12 * vmax;
    v = v.cwiseMax(floor);
  }
  if (!config.allow_m_outside) {
    const Real m = config.exps.m;
    if (m < config.exps.m_minus - 1e-12 || m > config.exps.m_plus + 1e-12)
      throw invalid_parameter("init_state: m outside [m-, m+] (set override)");
  }
  FlowState state;
  state.w = SphereFunction(u0.grid, nodal_pow(v, 1.0 / beta));
  state.t = 0.0;
  return state;
}

FlowState step(const FlowState& state, const FlowConfig& config) {
  WorkSpace ws(state.w.grid);
  FlowState next;
  next.w = SphereFunction(state.w.grid,
                          w_step_core(ws, state.w.values, config, config.dt0));
  next.t = state.t + config.dt0;
  return next;
}

SphereFunction step_rho(const SphereFunction& rho, Real m, Real dt) {
  const UltrasphericalGrid& grid = *rho.grid;
  const Index n = grid.size();
  if (rho.values.minCoeff() <= 0.0)
    throw integration_error("step_rho: density must be positive");
  const Matrix L = build_L_matrix(grid);

  auto solve_frozen = [&](const Vector& diffusivity, const Vector& rhs,
                          Real h) -> Vector {
    Matrix A = Matrix::Identity(n, n) -
               h * L * diffusivity.asDiagonal().toDenseMatrix();
    return A.partialPivLu().solve(rhs);
  };

  const Vector d0 = nodal_pow(rho.values, m - 1.0);
  const Vector rho_half = solve_frozen(d0, rho.values, 0.5 * dt);
  if (rho_half.minCoeff() <= 0.0)
    throw integration_error("step_rho: positivity lost in predictor");
  const Vector d_half = nodal_pow(rho_half, m - 1.0);
  const Vector rhs =
      rho.values + 0.5 * dt * (L * d_half.cwiseProduct(rho.values));
  Vector next = solve_frozen(d_half, rhs, 0.5 * dt);
  if (next.minCoeff() <= 0.0)
    throw integration_error("step_rho: positivity lost");
  return SphereFunction(rho.grid, std::move(next));
}

FlowTrace run(const SphereFunction& u0, const FlowConfig& config) {
  const InterpolationParams& params = config.params;
  const FlowExponents& exps = config.exps;
  const Real beta_p = exps.beta * (params.log_case ? 2.0 : params.p);

  FlowState state = init_state(u0, config);
  WorkSpace ws(state.w.grid);
  const Real mass0 = mass_of_w(*state.w.grid, state.w.values, beta_p);

  // Improvement curve for the i - d phi(e) monitor.
  std::optional<ImprovedCurve> curve;
  const Real p = params.log_case ? 2.0 : params.p;
  if (config.with_improved && !params.critical() && exps.gamma > 0.0) {
    SphereFunction u_init = profile_u(state, exps);
    const Real e0 = entropy_e(u_init, params);
    Real s_max = 1.5 * e0 + 1e-3;
    if (p > 2.0) {
      const Real barrier = 0.95 / (p - 2.0);
      if (e0 >= barrier)
        throw domain_error("run: initial entropy too close to 1/(p-2)");
      s_max = std::min(s_max, barrier);
    }
    curve = solve_phi(params, exps, s_max);
  }

  auto record = [&](Real t, const Vector& w, Real err) -> FlowRecord {
    SphereFunction u(state.w.grid, nodal_pow(w, exps.beta));
    FlowRecord rec;
    rec.t = t;
    rec.i = dirichlet_energy(u);
    rec.e = entropy_e(u, params);
    rec.mass = mass_of_w(*state.w.grid, w, beta_p);
    rec.deficit = rec.i - params.d * rec.e;
    rec.improved = curve ? rec.i - params.d * curve->phi(rec.e)
                         : std::numeric_limits<Real>::quiet_NaN();
    rec.err_estimate = err;
    return rec;
  };

  FlowTrace trace;
  trace.records.push_back(record(0.0, state.w.values, 0.0));
  if (trace.records.back().deficit < config.stop_deficit) {
    trace.stopped_on_deficit = true;
    return trace;
  }

  Real dt = config.dt0;
  const Real dt_min = config.t_end * 1e-12;
  Real t = 0.0;
  int accepted = 0;
  Real err_acc = 0.0;

  while (t < config.t_end) {
    dt = std::min(dt, config.t_end - t);
    Vector full, half2;
    bool ok = true;
    try {
      full = w_step_core(ws, state.w.values, config, dt);
      const Vector half = w_step_core(ws, state.w.values, config, 0.5 * dt);
      half2 = w_step_core(ws, half, config, 0.5 * dt);
    } catch (const integration_error&) {
      ok = false;
    }
    const Real err =
        ok ? (full - half2).cwiseAbs().maxCoeff() / (1.0 + half2.cwiseAbs().maxCoeff())
           : std::numeric_limits<Real>::infinity();
    if (!ok || err > config.tol) {
      dt *= 0.5;
      if (dt < dt_min) throw stiffness_error("run: step size underflow");
      continue;
    }
    if (config.conserve_mass) {
      const Real mass = mass_of_w(*state.w.grid, half2, beta_p);
      half2 *= std::pow(mass0 / mass, 1.0 / beta_p);
    }
    state.w = SphereFunction(state.w.grid, std::move(half2));
    t += dt;
    state.t = t;
    ++accepted;
    err_acc += err;
    if (err < 0.125 * config.tol) dt *= 1.4;

    if (accepted % config.monitor_stride == 0 || t >= config.t_end) {
      trace.records.push_back(record(t, state.w.values, err_acc));
      err_acc = 0.0;
      if (trace.records.back().deficit < config.stop_deficit) {
        trace.stopped_on_deficit = true;
        return trace;
      }
    }
  }
  if (trace.records.back().t < t)
    trace.records.push_back(record(t, state.w.values, err_acc));
  trace.reached_t_end = true;
  return trace;
}

}  // namespace ineq
