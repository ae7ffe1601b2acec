#include "ineq/rearrange.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ineq/errors.hpp"
#include "ineq/quadrature.hpp"

namespace ineq {

namespace {

struct WeightedSamples {
  std::vector<Real> value;
  std::vector<Real> mass;  // Lebesgue cell volumes
};

// Fine-grid Lebesgue sampling of the Euclidean image of a disc function:
// f = (1-z)^{(d-2)/2} u with cell volume |S^d| w (1-z)^{-d}.
WeightedSamples lebesgue_samples(const DiscFunction& u,
                                 const RearrangeOptions& opts) {
  const int d = u.grid->dimension();
  const Real volume = sphere_surface_volume(d);
  const Real mu = 0.5 * (d - 3.0);
  const Real c_mu = (mu + 1.0) / kPi;

  QuadratureRule rt = gauss_jacobi(opts.n_rho_fine, mu, 0.0);
  Vector rho_f(opts.n_rho_fine), wrad(opts.n_rho_fine);
  for (Index i = 0; i < opts.n_rho_fine; ++i) {
    rho_f[i] = std::sqrt(0.5 * (1.0 + rt.nodes[i]));
    wrad[i] = c_mu * 2.0 * kPi * std::pow(2.0, -mu - 2.0) * rt.weights[i];
  }
  Vector theta_f(opts.n_theta_fine);
  for (Index j = 0; j < opts.n_theta_fine; ++j)
    theta_f[j] = (j + 0.5) * 2.0 * kPi / opts.n_theta_fine;

  const DiscCoeffs coeffs = u.grid->analyze(u.values);
  const Matrix fine = u.grid->synthesize_polar(coeffs, rho_f, theta_f);

  WeightedSamples samples;
  samples.value.reserve(fine.size());
  samples.mass.reserve(fine.size());
  const Real half_dm2 = 0.5 * (d - 2.0);
  Real min_seen = 0.0;
  for (Index i = 0; i < fine.rows(); ++i)
    for (Index j = 0; j < fine.cols(); ++j) {
      const Real z = rho_f[i] * std::sin(theta_f[j]);
      const Real omz = 1.0 - z;
      const Real f = std::pow(omz, half_dm2) * fine(i, j);
      min_seen = std::min(min_seen, f);
      samples.value.push_back(std::max(f, 0.0));
      samples.mass.push_back(volume * wrad[i] / opts.n_theta_fine *
                             std::pow(omz, -Real(d)));
    }
  Real scale = 0.0;
  for (Real v : samples.value) scale = std::max(scale, v);
  if (min_seen < -1e-8 * scale)
    throw precondition_error("rearrange: input must be nonnegative");
  return samples;
}

WeightedSamples radial_samples(const RadialFunction& f, Index n_fine) {
  if (f.values.minCoeff() < -1e-8 * std::abs(f.values.maxCoeff()))
    throw precondition_error("rearrange: input must be nonnegative");
  std::vector<Real> rs(f.r.size()), vs(f.r.size());
  for (Index i = 0; i < f.r.size(); ++i) {
    rs[i] = f.r[i];
    vs[i] = std::max(f.values[i], 0.0);
  }
  HermiteSpline spline = make_pchip(rs, vs);
  const Real shell = sphere_surface_volume(f.d - 1);
  const Real r_lo = rs.front(), r_hi = rs.back();
  WeightedSamples samples;
  samples.value.reserve(n_fine + 2);
  samples.mass.reserve(n_fine + 2);
  // Inner ball below the first radius: constant continuation.
  const Real ball = std::pow(kPi, 0.5 * f.d) / std::tgamma(0.5 * f.d + 1.0);
  samples.value.push_back(vs.front());
  samples.mass.push_back(ball * std::pow(r_lo, f.d));
  for (Index k = 0; k < n_fine; ++k) {
    const Real ra = r_lo + (r_hi - r_lo) * k / Real(n_fine);
    const Real rb = r_lo + (r_hi - r_lo) * (k + 1) / Real(n_fine);
    const Real rm = 0.5 * (ra + rb);
    samples.value.push_back(spline(rm));
    samples.mass.push_back(shell / f.d *
                           (std::pow(rb, f.d) - std::pow(ra, f.d)));
  }
  return samples;
}

// Sort-descending quantile construction; ties share one radius (plateau mass
// is assigned to a single shell).
RadialFunction decreasing_profile(WeightedSamples samples, int d,
                                  Index table_max) {
  const std::size_t n = samples.value.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return samples.value[a] > samples.value[b];
  });

  const Real ball = std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d + 1.0);

  // Volume-weighted bin averaging of the sorted atoms. Averaging both the
  // mid-shell radii and the values inside each bin suppresses the rank noise
  // of atoms with nearly equal values coming from different quadrature rays.
  const std::size_t bins =
      std::min<std::size_t>(table_max, std::max<std::size_t>(n / 8, 16));
  std::vector<Real> r_t, v_t;
  r_t.reserve(bins);
  v_t.reserve(bins);
  Real vol = 0.0;
  std::size_t k = 0;
  for (std::size_t b = 0; b < bins && k < n; ++b) {
    const std::size_t k_end = ((b + 1) * n) / bins;
    Real bin_mass = 0.0, bin_rv = 0.0, bin_vv = 0.0;
    for (; k < std::max(k_end, k + 1) && k < n; ++k) {
      const Real mass = samples.mass[order[k]];
      const Real r_mid = std::pow((vol + 0.5 * mass) / ball, 1.0 / d);
      vol += mass;
      bin_mass += mass;
      bin_rv += mass * r_mid;
      bin_vv += mass * samples.value[order[k]];
    }
    if (bin_mass <= 0.0) continue;
    const Real r_bin = bin_rv / bin_mass;
    const Real v_bin = bin_vv / bin_mass;
    if (!r_t.empty() && r_bin <= r_t.back()) continue;
    if (!v_t.empty() && v_bin > v_t.back()) continue;  // enforce monotone
    r_t.push_back(r_bin);
    v_t.push_back(v_bin);
  }

  RadialFunction out;
  out.d = d;
  out.r = Eigen::Map<Vector>(r_t.data(), r_t.size());
  out.values = Eigen::Map<Vector>(v_t.data(), v_t.size());
  return out;
}

HermiteSpline radial_spline(const RadialFunction& f) {
  std::vector<Real> rs(f.r.data(), f.r.data() + f.r.size());
  std::vector<Real> vs(f.values.data(), f.values.data() + f.values.size());
  return make_pchip(std::move(rs), std::move(vs));
}

Real gaussian_cdf(Real x) { return 0.5 * (1.0 + std::erf(std::sqrt(kPi) * x)); }

// Quantile table of a weighted sample set: knots (cumulative mass midpoint,
// value), values decreasing. Ties merged.
HermiteSpline quantile_table(std::vector<Real> value, std::vector<Real> mass,
                             Real total_mass) {
  const std::size_t n = value.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return value[a] > value[b]; });
  std::vector<Real> q, v;
  q.reserve(n + 2);
  v.reserve(n + 2);
  const Real scale = std::abs(value[order[0]]) + 1e-300;
  Real cum = 0.0;
  q.push_back(0.0);
  v.push_back(value[order[0]]);
  for (std::size_t k = 0; k < n; ++k) {
    const Real val = value[order[k]];
    const Real mid = cum + 0.5 * mass[order[k]];
    cum += mass[order[k]];
    if (!v.empty() && v.back() - val < 1e-13 * scale) {
      q.back() = std::max(q.back(), mid);
      continue;
    }
    q.push_back(mid);
    v.push_back(val);
  }
  q.push_back(std::max(total_mass, cum));
  v.push_back(v.back());
  return make_pchip(std::move(q), std::move(v));
}

}  // namespace

DistributionProfile distribution_profile(const DiscFunction& u,
                                         const Vector& levels,
                                         const RearrangeOptions& opts) {
  WeightedSamples samples = lebesgue_samples(u, opts);
  DistributionProfile profile;
  profile.levels = levels;
  profile.measures = Vector::Zero(levels.size());
  for (std::size_t k = 0; k < samples.value.size(); ++k)
    for (Index j = 0; j < levels.size(); ++j)
      if (samples.value[k] > levels[j]) profile.measures[j] += samples.mass[k];
  return profile;
}

DistributionProfile distribution_profile(const RadialFunction& f,
                                         const Vector& levels) {
  WeightedSamples samples = radial_samples(f, 1 << 14);
  DistributionProfile profile;
  profile.levels = levels;
  profile.measures = Vector::Zero(levels.size());
  for (std::size_t k = 0; k < samples.value.size(); ++k)
    for (Index j = 0; j < levels.size(); ++j)
      if (samples.value[k] > levels[j]) profile.measures[j] += samples.mass[k];
  return profile;
}

RadialFunction rearrange_decreasing(const DiscFunction& u,
                                    const RearrangeOptions& opts) {
  return decreasing_profile(lebesgue_samples(u, opts), u.grid->dimension(),
                            opts.table_max);
}

RadialFunction rearrange_decreasing(const RadialFunction& f,
                                    const RearrangeOptions& opts) {
  return decreasing_profile(radial_samples(f, 1 << 14), f.d, opts.table_max);
}

Real radial_lq_norm(const RadialFunction& f, Real q) {
  HermiteSpline spline = radial_spline(f);
  const Real shell = sphere_surface_volume(f.d - 1);
  // 4-point Gauss per spline segment; kinks sit on segment boundaries.
  static const Real gx[4] = {-0.8611363115940526, -0.3399810435848563,
                             0.3399810435848563, 0.8611363115940526};
  static const Real gw[4] = {0.3478548451374538, 0.6521451548625461,
                             0.6521451548625461, 0.3478548451374538};
  Real acc = 0.0;
  for (Index i = 0; i + 1 < f.r.size(); ++i) {
    const Real a = f.r[i], b = f.r[i + 1];
    const Real h = 0.5 * (b - a), c = 0.5 * (a + b);
    for (int g = 0; g < 4; ++g) {
      const Real r = c + h * gx[g];
      acc += h * gw[g] * std::pow(std::abs(spline(r)), q) *
             std::pow(r, f.d - 1.0);
    }
  }
  // Inner continuation r < r_0 at the first value.
  acc += std::pow(std::abs(f.values[0]), q) * std::pow(f.r[0], Real(f.d)) /
         Real(f.d);
  return std::pow(shell * acc, 1.0 / q);
}

Real radial_grad_norm_sq(const RadialFunction& f) {
  HermiteSpline spline = radial_spline(f);
  const Real shell = sphere_surface_volume(f.d - 1);
  static const Real gx[4] = {-0.8611363115940526, -0.3399810435848563,
                             0.3399810435848563, 0.8611363115940526};
  static const Real gw[4] = {0.3478548451374538, 0.6521451548625461,
                             0.6521451548625461, 0.3478548451374538};
  Real acc = 0.0;
  for (Index i = 0; i + 1 < f.r.size(); ++i) {
    const Real a = f.r[i], b = f.r[i + 1];
    const Real h = 0.5 * (b - a), c = 0.5 * (a + b);
    for (int g = 0; g < 4; ++g) {
      const Real r = c + h * gx[g];
      const Real fp = spline.deriv(r);
      acc += h * gw[g] * fp * fp * std::pow(r, f.d - 1.0);
    }
  }
  return shell * acc;
}

DiscFunction disc_from_radial(DiscGridPtr grid, const RadialFunction& f) {
  HermiteSpline spline = radial_spline(f);
  const Real e = 0.5 * (grid->dimension() - 2.0);
  const Real r_lo = f.r[0], r_hi = f.r[f.r.size() - 1];
  auto profile = [&](Real z) {
    const Real r =
        std::clamp(std::sqrt((1.0 + z) / (1.0 - z)), r_lo, r_hi);
    return std::pow(1.0 - z, -e) * spline(r);
  };
  return from_axis_profile(std::move(grid), profile);
}

CompetingDiagnostics competing_iterate(const DiscFunction& f0, int n_max,
                                       Real stop_tol,
                                       const RearrangeOptions& opts) {
  const int d = f0.grid->dimension();
  const Real volume = sphere_surface_volume(d);
  const Real two_star = 2.0 * d / (d - 2.0);
  const Real u_star = std::pow(volume, -1.0 / two_star);

  // Normalize |f|_{2*} = 1.
  DiscFunction u = f0;
  {
    const Real nrm = std::pow(volume, 1.0 / two_star) * lq_norm(u, two_star);
    if (nrm <= 0.0) throw degenerate_input("competing_iterate: zero input");
    u.values /= nrm;
  }

  auto distance_to_bubble = [&](const DiscFunction& w) {
    DiscFunction diff(w.grid, (w.values.array() - u_star).matrix());
    return std::pow(volume, 1.0 / two_star) * lq_norm(diff, two_star);
  };

  CompetingDiagnostics diag;
  diag.records.push_back({0, distance_to_bubble(u), std::sqrt(grad_norm_sq(u))});
  if (diag.records.back().distance < stop_tol) {
    diag.converged = true;
    diag.final_state = u;
    return diag;
  }

  for (int n = 1; n <= n_max; ++n) {
    const DiscFunction rotated = conformal_U(u);
    const RadialFunction table = rearrange_decreasing(rotated, opts);
    // Diagnostics are read off the quantile table itself; the disc embedding
    // only continues the iteration.
    RadialFunction diff = table;
    for (Index k = 0; k < diff.r.size(); ++k)
      diff.values[k] -= g_star_value(d, diff.r[k]);
    diag.records.push_back({n, radial_lq_norm(diff, two_star),
                            std::sqrt(radial_grad_norm_sq(table))});
    u = disc_from_radial(u.grid, table);
    if (diag.records.back().distance < stop_tol) {
      diag.converged = true;
      break;
    }
  }
  diag.final_state = u;
  return diag;
}

GaussianFunction gaussian_U(const GaussianFunction& u) {
  const GaussianGrid& grid = *u.grid;
  const Real scale = u.values.cwiseAbs().maxCoeff();
  if (u.values.minCoeff() < -1e-10 * scale)
    throw precondition_error("gaussian_U: input must be nonnegative");

  HermiteSpline table;  // quantile table in gamma-measure
  if (grid.dim() == 1) {
    // Densify through a monotone interpolant, then transport cell masses.
    const int n = grid.points_per_axis();
    std::vector<Real> xs(n), vs(n);
    for (int i = 0; i < n; ++i) {
      xs[i] = grid.nodes1d()[i];
      vs[i] = std::max(u.values[i], 0.0);
    }
    HermiteSpline interp = make_pchip(xs, vs);
    const Real X = std::abs(xs.back()) * 1.3 + 1.0;
    const Index M = 1 << 14;
    std::vector<Real> value(M), mass(M);
    for (Index k = 0; k < M; ++k) {
      const Real xa = -X + 2.0 * X * k / M;
      const Real xb = -X + 2.0 * X * (k + 1) / M;
      const Real xc = 0.5 * (xa + xb);
      const Real xv = std::clamp(xc, xs.front(), xs.back());
      value[k] = interp(xv);
      Real m = gaussian_cdf(xb) - gaussian_cdf(xa);
      if (k == 0) m += gaussian_cdf(xa);
      if (k == M - 1) m += 1.0 - gaussian_cdf(xb);
      mass[k] = m;
    }
    table = quantile_table(std::move(value), std::move(mass), 1.0);
  } else {
    std::vector<Real> value(grid.size()), mass(grid.size());
    for (Index q = 0; q < grid.size(); ++q) {
      value[q] = std::max(u.values[q], 0.0);
      mass[q] = grid.weight(q);
    }
    table = quantile_table(std::move(value), std::move(mass), 1.0);
  }

  // Output depends on x_1 only and is nonincreasing: value at quantile
  // Phi(x_1).
  Vector out(grid.size());
  for (Index q = 0; q < grid.size(); ++q)
    out[q] = table(std::clamp(gaussian_cdf(grid.node(q, 0)), 0.0, 1.0));
  return GaussianFunction(u.grid, std::move(out));
}

GaussianFunction gaussian_V(const GaussianFunction& u) {
  const GaussianGrid& grid = *u.grid;
  if (grid.dim() != 1)
    throw invalid_parameter("gaussian_V: implemented for N = 1");
  const Real scale = u.values.cwiseAbs().maxCoeff();
  if (u.values.minCoeff() < -1e-10 * scale)
    throw precondition_error("gaussian_V: input must be nonnegative");

  // Work on log h with h = e^{-pi x^2/2} u; rearrangement commutes with the
  // monotone transform and the conjugation stays finite in log space.
  const int n = grid.points_per_axis();
  std::vector<Real> xs(n), vs(n);
  for (int i = 0; i < n; ++i) {
    xs[i] = grid.nodes1d()[i];
    vs[i] = std::max(u.values[i], 0.0);
  }
  HermiteSpline interp = make_pchip(xs, vs);
  const Real X = std::abs(xs.back()) * 1.5 + 2.0;
  const Index M = 1 << 15;
  const Real log_floor = -700.0;
  std::vector<Real> logh(M), mass(M);
  for (Index k = 0; k < M; ++k) {
    const Real xc = -X + 2.0 * X * (k + 0.5) / M;
    const Real xv = std::clamp(xc, xs.front(), xs.back());
    const Real uv = interp(xv);
    logh[k] = (uv > 0.0 ? std::log(uv) : log_floor) - 0.5 * kPi * xc * xc;
    logh[k] = std::max(logh[k], log_floor);
    mass[k] = 2.0 * X / M;
  }
  HermiteSpline table = quantile_table(std::move(logh), std::move(mass),
                                       2.0 * X);

  // h*(x) = exp(table(2|x|)); tails continue with the Gaussian profile.
  const Real w_last = 2.0 * X;
  Vector out(grid.size());
  for (Index q = 0; q < grid.size(); ++q) {
    const Real x = grid.node(q, 0);
    const Real two_abs = 2.0 * std::abs(x);
    Real lh;
    if (two_abs <= w_last) {
      lh = table(two_abs);
    } else {
      const Real r0 = 0.5 * w_last;
      lh = table(w_last) - 0.5 * kPi * (x * x - r0 * r0);
    }
    out[q] = std::exp(0.5 * kPi * x * x + lh);
  }
  return GaussianFunction(u.grid, std::move(out));
}

GaussianCompetingDiagnostics gaussian_competing_iterate(
    const GaussianFunction& u0, int n_max, Real stop_tol) {
  const Real norm0 = std::sqrt(l2_norm_sq(u0));
  if (norm0 <= 0.0)
    throw degenerate_input("gaussian_competing_iterate: zero input");

  auto distance = [&](const GaussianFunction& w) {
    GaussianFunction diff(w.grid, (w.values.array() - norm0).matrix());
    return std::sqrt(l2_norm_sq(diff));
  };

  GaussianCompetingDiagnostics diag;
  GaussianFunction u = u0;
  diag.records.push_back({0, distance(u), lsi_deficit(u)});
  if (diag.records.back().distance < stop_tol) {
    diag.converged = true;
    diag.final_state = u;
    return diag;
  }
  for (int n = 1; n <= n_max; ++n) {
    u = gaussian_V(gaussian_U(u));
    diag.records.push_back({n, distance(u), lsi_deficit(u)});
    if (diag.records.back().distance < stop_tol) {
      diag.converged = true;
      break;
    }
  }
  diag.final_state = u;
  return diag;
}

}  // namespace ineq
