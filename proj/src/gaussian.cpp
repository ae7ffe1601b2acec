#include "ineq/gaussian.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "ineq/errors.hpp"
#include "ineq/quadrature.hpp"

namespace ineq {

GaussianGrid::GaussianGrid(int N, int n) : N_(N), n_(n) {
  if (N < 1 || N > 3)
    throw invalid_parameter("GaussianGrid: N must lie in {1,2,3}");
  if (n < 8) throw invalid_parameter("GaussianGrid: n must be >= 8");
  QuadratureRule rule = gauss_hermite_pi(n);
  nodes_ = rule.nodes;
  weights_ = rule.weights;
  total_ = 1;
  for (int k = 0; k < N_; ++k) total_ *= n_;
  degree_cap_ = n / 2;

  // Orthonormal Hermite family for variance 1/(2 pi):
  // h_{k+1} = (x h_k - sqrt(k v) h_{k-1}) / sqrt((k+1) v),  v = 1/(2 pi).
  const Real v = 1.0 / (2.0 * kPi);
  const int K = degree_cap_;
  herm_.resize(n, K + 1);
  herm_.col(0).setOnes();
  if (K >= 1) herm_.col(1) = nodes_ / std::sqrt(v);
  for (int k = 1; k < K; ++k)
    herm_.col(k + 1) = (nodes_.cwiseProduct(herm_.col(k)) -
                        std::sqrt(k * v) * herm_.col(k - 1)) /
                       std::sqrt((k + 1.0) * v);

  // The eigenvalue-method weights carry absolute (not relative) accuracy, so
  // discrete orthonormality degrades at high degree where h_k(x_max) is
  // astronomically large against an exponentially small weight. Cap the
  // usable band where the measured Gram matrix still is the identity.
  {
    const Matrix gram =
        herm_.transpose() * weights_.asDiagonal() * herm_;
    int k_eff = 0;
    for (int k = 1; k <= K; ++k) {
      Real worst = 0.0;
      for (int j = 0; j <= k; ++j)
        worst = std::max(worst,
                         std::abs(gram(j, k) - (j == k ? 1.0 : 0.0)));
      if (worst > 1e-11) break;
      k_eff = k;
    }
    degree_cap_ = k_eff;
    herm_.conservativeResize(n, degree_cap_ + 1);
  }

  // Nodal derivative: h_k' = sqrt(2 pi k) h_{k-1}.
  Matrix deriv(n, degree_cap_ + 1);
  deriv.col(0).setZero();
  for (int k = 1; k <= degree_cap_; ++k)
    deriv.col(k) = std::sqrt(2.0 * kPi * k) * herm_.col(k - 1);
  diff_nodal_ = deriv * herm_.transpose() * weights_.asDiagonal();
}

Real GaussianGrid::node(Index q, int axis) const {
  Index idx = q;
  for (int k = 0; k < axis; ++k) idx /= n_;
  return nodes_[idx % n_];
}

Real GaussianGrid::weight(Index q) const {
  Real w = 1.0;
  Index idx = q;
  for (int k = 0; k < N_; ++k) {
    w *= weights_[idx % n_];
    idx /= n_;
  }
  return w;
}

Vector GaussianGrid::apply_axis_matrix(const Vector& values, const Matrix& op,
                                       int axis) const {
  Vector out(values.size());
  Index stride = 1;
  for (int k = 0; k < axis; ++k) stride *= n_;
  const Index outer = values.size() / (stride * n_);
  Vector slice(n_);
  for (Index o = 0; o < outer; ++o)
    for (Index s = 0; s < stride; ++s) {
      const Index base = o * stride * n_ + s;
      for (int i = 0; i < n_; ++i) slice[i] = values[base + i * stride];
      Vector res = op * slice;
      for (int i = 0; i < n_; ++i) out[base + i * stride] = res[i];
    }
  return out;
}

Vector GaussianGrid::differentiate(const Vector& values, int axis) const {
  return apply_axis_matrix(values, diff_nodal_, axis);
}

Vector GaussianGrid::analyze1d(const Vector& values) const {
  return herm_.transpose() * weights_.cwiseProduct(values);
}

GaussianFunction::GaussianFunction(GaussianGridPtr g, Vector v)
    : grid(std::move(g)), values(std::move(v)) {
  if (!grid) throw invalid_parameter("GaussianFunction: null grid");
  if (values.size() != grid->size())
    throw invalid_parameter("GaussianFunction: value count mismatch");
}

GaussianGridPtr build_gaussian_grid(int N, int n) {
  return std::make_shared<const GaussianGrid>(N, n);
}

GaussianFunction sample(GaussianGridPtr grid,
                        const std::function<Real(const Vector&)>& f) {
  Vector v(grid->size());
  Vector x(grid->dim());
  for (Index q = 0; q < grid->size(); ++q) {
    for (int k = 0; k < grid->dim(); ++k) x[k] = grid->node(q, k);
    v[q] = f(x);
  }
  return GaussianFunction(std::move(grid), std::move(v));
}

GaussianFunction sample1d(GaussianGridPtr grid,
                          const std::function<Real(Real)>& f) {
  if (grid->dim() != 1) throw invalid_parameter("sample1d: grid must be 1-D");
  Vector v(grid->size());
  for (Index q = 0; q < grid->size(); ++q) v[q] = f(grid->node(q, 0));
  return GaussianFunction(std::move(grid), std::move(v));
}

GaussianFunction hermite_function(GaussianGridPtr grid, int k) {
  if (grid->dim() != 1)
    throw invalid_parameter("hermite_function: grid must be 1-D");
  if (k > grid->degree_cap())
    throw invalid_parameter("hermite_function: degree exceeds cap");
  Vector v = grid->hermite().col(k);
  return GaussianFunction(std::move(grid), std::move(v));
}

Real integrate(const GaussianFunction& u) {
  Real acc = 0.0;
  for (Index q = 0; q < u.grid->size(); ++q)
    acc += u.grid->weight(q) * u.values[q];
  return acc;
}

Real l2_norm_sq(const GaussianFunction& u) {
  Real acc = 0.0;
  for (Index q = 0; q < u.grid->size(); ++q)
    acc += u.grid->weight(q) * u.values[q] * u.values[q];
  return acc;
}

Real lq_norm(const GaussianFunction& u, Real q) {
  Real acc = 0.0;
  for (Index i = 0; i < u.grid->size(); ++i)
    acc += u.grid->weight(i) * std::pow(std::abs(u.values[i]), q);
  return std::pow(acc, 1.0 / q);
}

Real grad_norm_sq(const GaussianFunction& u) {
  Real acc = 0.0;
  for (int axis = 0; axis < u.grid->dim(); ++axis) {
    const Vector du = u.grid->differentiate(u.values, axis);
    for (Index q = 0; q < u.grid->size(); ++q)
      acc += u.grid->weight(q) * du[q] * du[q];
  }
  return acc;
}

Real log_entropy(const GaussianFunction& u) {
  const Real n2 = l2_norm_sq(u);
  if (n2 <= 0.0) throw degenerate_input("log_entropy: |u| = 0");
  Real acc = 0.0;
  for (Index q = 0; q < u.grid->size(); ++q) {
    const Real u2 = u.values[q] * u.values[q];
    if (u2 > 0.0) acc += u.grid->weight(q) * u2 * std::log(u2 / n2);
  }
  return acc;
}

Real lsi_deficit(const GaussianFunction& u) {
  return grad_norm_sq(u) - kPi * log_entropy(u);
}

namespace {

// Moments of u against e^{a.x}: M, grad M, hess M.
struct TiltMoments {
  Real M;
  Vector G;
  Matrix H;
};

TiltMoments tilt_moments(const GaussianFunction& u, const Vector& a) {
  const int N = u.grid->dim();
  TiltMoments tm{0.0, Vector::Zero(N), Matrix::Zero(N, N)};
  Vector x(N);
  for (Index q = 0; q < u.grid->size(); ++q) {
    Real dot = 0.0;
    for (int k = 0; k < N; ++k) {
      x[k] = u.grid->node(q, k);
      dot += a[k] * x[k];
    }
    const Real w = u.grid->weight(q) * u.values[q] * std::exp(dot);
    tm.M += w;
    tm.G += w * x;
    tm.H += w * x * x.transpose();
  }
  return tm;
}

}  // namespace

ExpFitResult dist_to_exponentials(const GaussianFunction& u) {
  const int N = u.grid->dim();
  const Real n2 = l2_norm_sq(u);
  if (n2 <= 0.0) throw degenerate_input("dist_to_exponentials: |u| = 0");

  // Objective: maximize J(a) = M(a)^2 e^{-|a|^2/pi}; stationarity reads
  // pi G(a) = M(a) a. Newton with Levenberg damping, two starts.
  std::vector<Vector> starts;
  starts.push_back(Vector::Zero(N));
  {
    Vector moment = Vector::Zero(N);
    Real mass = 0.0;
    for (Index q = 0; q < u.grid->size(); ++q) {
      const Real w = u.grid->weight(q) * u.values[q] * u.values[q];
      mass += w;
      for (int k = 0; k < N; ++k) moment[k] += w * u.grid->node(q, k);
    }
    if (mass > 0.0) starts.push_back(kPi * moment / mass);
  }

  ExpFitResult best;
  best.dist2 = n2;
  Real best_J = -1.0;
  for (const Vector& a0 : starts) {
    Vector a = a0;
    bool converged = false;
    for (int iter = 0; iter < 80; ++iter) {
      TiltMoments tm = tilt_moments(u, a);
      Vector g = kPi * tm.G - tm.M * a;
      if (g.norm() <= 1e-12 * (std::abs(tm.M) + 1.0)) {
        converged = true;
        break;
      }
      Matrix J = kPi * tm.H - Matrix::Identity(N, N) * tm.M -
                 a * tm.G.transpose();
      Real damping = 1e-12;
      Vector step;
      for (int t = 0; t < 12; ++t) {
        Matrix Jd = J - damping * Matrix::Identity(N, N);
        step = Jd.fullPivLu().solve(g);
        if (step.allFinite() && step.norm() < 10.0 * (1.0 + a.norm())) break;
        damping *= 100.0;
      }
      a -= step;
      if (!a.allFinite() || a.norm() > 50.0) break;
    }
    TiltMoments tm = tilt_moments(u, a);
    const Real J = tm.M * tm.M * std::exp(-a.squaredNorm() / kPi);
    if (J > best_J) {
      best_J = J;
      best.point.a = a;
      best.point.c = std::exp(-a.squaredNorm() / kPi) * tm.M;
      best.dist2 = std::max(n2 - J, 0.0);
      best.converged = converged;
    }
  }
  return best;
}

GaussianFunction tilt(const GaussianFunction& u, const Vector& a,
                      bool* support_warning) {
  const int N = u.grid->dim();
  if (a.size() != N) throw invalid_parameter("tilt: dimension mismatch");
  const GaussianGrid& grid = *u.grid;
  const int n = grid.points_per_axis();
  const int K = grid.degree_cap();

  if (support_warning != nullptr) *support_warning = false;
  Vector values = u.values;
  const Real v = 1.0 / (2.0 * kPi);
  for (int axis = 0; axis < N; ++axis) {
    const Real shift = a[axis] / kPi;
    if (shift == 0.0) continue;
    const Real range = grid.nodes1d()[n - 1] - grid.nodes1d()[0];
    if (support_warning != nullptr && std::abs(shift) > 0.1 * range)
      *support_warning = true;
    // Band-limited evaluation at shifted nodes.
    Matrix shifted(n, K + 1);
    for (int i = 0; i < n; ++i) {
      const Real x = grid.nodes1d()[i] + shift;
      shifted(i, 0) = 1.0;
      if (K >= 1) shifted(i, 1) = x / std::sqrt(v);
      for (int k = 1; k < K; ++k)
        shifted(i, k + 1) = (x * shifted(i, k) -
                             std::sqrt(k * v) * shifted(i, k - 1)) /
                            std::sqrt((k + 1.0) * v);
    }
    const Matrix op =
        shifted * grid.hermite().transpose() * grid.weights1d().asDiagonal();
    values = grid.apply_axis_matrix(values, op, axis);
  }
  // Multiply by e^{-y.a - |a|^2/(2 pi)}.
  const Real a2 = a.squaredNorm();
  for (Index q = 0; q < grid.size(); ++q) {
    Real dot = 0.0;
    for (int k = 0; k < N; ++k) dot += a[k] * grid.node(q, k);
    values[q] *= std::exp(-dot - a2 / (2.0 * kPi));
  }
  return GaussianFunction(u.grid, std::move(values));
}

GaussianFunction translate_normalize(const GaussianFunction& u,
                                     const Vector& a, Real c,
                                     bool* support_warning) {
  if (c == 0.0) throw invalid_parameter("translate_normalize: c must be nonzero");
  GaussianFunction t = tilt(u, a, support_warning);
  const Real divisor = c * std::exp(a.squaredNorm() / (2.0 * kPi));
  t.values /= divisor;
  return t;
}

Real stability_ratio(const GaussianFunction& u) {
  const Real deficit = lsi_deficit(u);
  ExpFitResult fit = dist_to_exponentials(u);
  if (fit.dist2 <= 0.0)
    throw undefined_quotient("stability_ratio: u is an optimizer");
  return deficit / fit.dist2;
}

EntropySplit entropy_split(const GaussianFunction& u) {
  const Real n2 = l2_norm_sq(u);
  if (n2 <= 0.0) throw degenerate_input("entropy_split: |u| = 0");
  Vector values = u.values / std::sqrt(n2);

  Real m = 0.0;
  for (Index q = 0; q < u.grid->size(); ++q)
    if (values[q] < 0.0) m += u.grid->weight(q) * values[q] * values[q];
  if (m > 0.5) {
    values = -values;
    m = 1.0 - m;
  }

  // Gradient split by sign masks: grad u_+ and grad u_- coincide a.e. with
  // grad u on the respective sign sets.
  Real grad_plus = 0.0, grad_minus = 0.0;
  for (int axis = 0; axis < u.grid->dim(); ++axis) {
    const Vector du = u.grid->differentiate(values, axis);
    for (Index q = 0; q < u.grid->size(); ++q) {
      const Real cell = u.grid->weight(q) * du[q] * du[q];
      if (values[q] > 0.0)
        grad_plus += cell;
      else if (values[q] < 0.0)
        grad_minus += cell;
    }
  }

  const Real mass_plus = 1.0 - m, mass_minus = m;
  Real ent_plus = 0.0, ent_minus = 0.0;  // int v^2 ln(v^2) over sign sets
  for (Index q = 0; q < u.grid->size(); ++q) {
    const Real v2 = values[q] * values[q];
    if (v2 <= 0.0) continue;
    const Real cell = u.grid->weight(q) * v2 * std::log(v2);
    if (values[q] > 0.0)
      ent_plus += cell;
    else
      ent_minus += cell;
  }

  auto D_of = [](Real grad, Real ent, Real mass) {
    if (mass <= 0.0) return Real(0);
    return grad - kPi * (ent - mass * std::log(mass));
  };

  EntropySplit split;
  split.m = m;
  split.D_u = (grad_plus + grad_minus) - kPi * (ent_plus + ent_minus);
  split.D_plus = D_of(grad_plus, ent_plus, mass_plus);
  split.D_minus = D_of(grad_minus, ent_minus, mass_minus);
  split.identity_residual = std::abs(
      split.D_u - split.D_plus - split.D_minus - kPi * binary_entropy(m));
  return split;
}

Real binary_entropy(Real p) {
  if (p < 0.0 || p > 1.0) throw invalid_parameter("binary_entropy: p in [0,1]");
  Real acc = 0.0;
  if (p > 0.0) acc -= p * std::log(p);
  if (p < 1.0) acc -= (1.0 - p) * std::log(1.0 - p);
  return acc;
}

Real combine_constant(Real kappa_pos) {
  if (kappa_pos <= 0.0)
    throw invalid_parameter("combine_constant: kappa_pos must be positive");
  return 0.5 * std::min(kappa_pos, 2.0 * kPi * std::log(2.0));
}

HdBound h_d_bound(int d, Real m) {
  if (d < 3) throw invalid_parameter("h_d_bound: d >= 3");
  if (m < 0.0 || m > 0.5)
    throw invalid_parameter("h_d_bound: m must lie in [0, 1/2]");
  const Real e = (d - 2.0) / d;
  HdBound out;
  out.value = std::pow(m, e) + std::pow(1.0 - m, e) - 1.0;
  const Real h_half = std::pow(2.0, 2.0 / d) - 1.0;
  out.lower = 2.0 * h_half * m;
  out.ratio_to_final = 2.0 * h_half / (h_half + 1.0);
  return out;
}

PToOneLimit p_to_one_limit(const GaussianFunction& h, Real p) {
  if (p <= 1.0 || p > 1.5)
    throw invalid_parameter("p_to_one_limit: p must lie in (1, 1.5]");
  if (h.values.minCoeff() < 0.0)
    throw precondition_error("p_to_one_limit: h must be nonnegative");
  const Real mean = integrate(h);
  if (mean <= 0.0) throw degenerate_input("p_to_one_limit: h has zero mass");

  Real p_mean = 0.0, entropy = 0.0;
  for (Index q = 0; q < h.grid->size(); ++q) {
    const Real hv = h.values[q];
    if (hv > 0.0) {
      p_mean += h.grid->weight(q) * std::pow(hv, p);
      entropy += h.grid->weight(q) * hv * std::log(hv / mean);
    }
  }
  PToOneLimit out;
  out.quotient = (std::pow(p_mean, 1.0 / p) - mean) / (p - 1.0);
  out.entropy = entropy;
  out.gap = std::abs(out.quotient - out.entropy);
  return out;
}

}  // namespace ineq
