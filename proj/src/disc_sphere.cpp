#include "ineq/disc_sphere.hpp"

#include <cmath>

#include "ineq/errors.hpp"
#include "ineq/quadrature.hpp"

namespace ineq {

namespace {

// Jacobi polynomials P_0..P_n at x via the standard three-term recurrence.
void jacobi_values(int n, Real a, Real b, Real x, Real* out) {
  out[0] = 1.0;
  if (n == 0) return;
  out[1] = 0.5 * (a + b + 2.0) * x + 0.5 * (a - b);
  for (int j = 1; j < n; ++j) {
    const Real c = 2.0 * j + a + b;
    const Real a1 = 2.0 * (j + 1.0) * (j + a + b + 1.0) * c;
    const Real a2 = (c + 1.0) * (a * a - b * b);
    const Real a3 = c * (c + 1.0) * (c + 2.0);
    const Real a4 = 2.0 * (j + a) * (j + b) * (c + 2.0);
    out[j + 1] = ((a2 + a3 * x) * out[j] - a4 * out[j - 1]) / a1;
  }
}

}  // namespace

DiscGrid::DiscGrid(int d, int degree_cap) : d_(d), K_(degree_cap) {
  if (d < 3) throw invalid_parameter("DiscGrid: d must be >= 3");
  if (K_ < 4) throw invalid_parameter("DiscGrid: degree_cap must be >= 4");
  mu_ = 0.5 * (d - 3.0);

  // Oversample so that p-norm integrands of band-limited functions are
  // resolved well beyond quadratic products.
  const int n_rho = (3 * K_) / 2 + 2;
  n_theta_ = 4 * ((3 * K_ + 3) / 4 + 1);

  // Radial rule in t = 2 rho^2 - 1 for the weight (1-t)^mu; fold the measure
  // normalization c_mu = (mu+1)/pi and the angular length 2 pi into wrad so
  // that sum_i wrad_i / n_theta sums to 1.
  QuadratureRule rt = gauss_jacobi(n_rho, mu_, 0.0);
  rho_.resize(n_rho);
  wrad_.resize(n_rho);
  const Real c_mu = (mu_ + 1.0) / kPi;
  for (int i = 0; i < n_rho; ++i) {
    rho_[i] = std::sqrt(0.5 * (1.0 + rt.nodes[i]));
    wrad_[i] = c_mu * 2.0 * kPi * std::pow(2.0, -mu_ - 2.0) * rt.weights[i];
  }

  theta_.resize(n_theta_);
  cos_theta_.resize(n_theta_);
  sin_theta_.resize(n_theta_);
  for (Index j = 0; j < n_theta_; ++j) {
    theta_[j] = (j + 0.5) * 2.0 * kPi / n_theta_;
    cos_theta_[j] = std::cos(theta_[j]);
    sin_theta_[j] = std::sin(theta_[j]);
  }
  cos_m_.resize(K_ + 1, n_theta_);
  sin_m_.resize(K_ + 1, n_theta_);
  for (int m = 0; m <= K_; ++m)
    for (Index j = 0; j < n_theta_; ++j) {
      cos_m_(m, j) = std::cos(m * theta_[j]);
      sin_m_(m, j) = std::sin(m * theta_[j]);
    }

  radial_.resize(K_ + 1);
  radial_deriv_.resize(K_ + 1);
  scale_.resize(K_ + 1);
  std::vector<Real> pj(K_ + 2), pjd(K_ + 2);
  for (int m = 0; m <= K_; ++m) {
    const int J = (K_ - m) / 2 + 1;
    radial_[m].resize(n_rho, J);
    radial_deriv_[m].resize(n_rho, J);
    for (int i = 0; i < n_rho; ++i) {
      const Real r = rho_[i];
      const Real t = 2.0 * r * r - 1.0;
      jacobi_values(J - 1, mu_, m, t, pj.data());
      jacobi_values(J - 1, mu_ + 1.0, m + 1.0, t, pjd.data());
      const Real rm = std::pow(r, m);
      const Real rm1 = m > 0 ? std::pow(r, m - 1) : 0.0;
      for (int j = 0; j < J; ++j) {
        radial_[m](i, j) = rm * pj[j];
        Real der = m > 0 ? m * rm1 * pj[j] : 0.0;
        if (j > 0)
          der += 4.0 * r * rm * 0.5 * (j + mu_ + m + 1.0) * pjd[j - 1];
        radial_deriv_[m](i, j) = der;
      }
    }
    // Orthonormalize against the quadrature itself; exact for polynomials.
    scale_[m].resize(J);
    const Real ang = (m == 0) ? 1.0 : 0.5;
    for (int j = 0; j < J; ++j) {
      const Real nrm2 =
          ang * wrad_.dot(radial_[m].col(j).cwiseProduct(radial_[m].col(j)));
      scale_[m][j] = 1.0 / std::sqrt(nrm2);
      radial_[m].col(j) *= scale_[m][j];
      radial_deriv_[m].col(j) *= scale_[m][j];
    }
  }
}

DiscCoeffs DiscGrid::analyze(const Matrix& values) const {
  DiscCoeffs coeffs;
  coeffs.c.resize(K_ + 1);
  coeffs.s.resize(K_ + 1);
  // Angular transform first: A_m = sum_j values(:,j) trig(m theta_j) / n_theta,
  // then the radial projection against the orthonormal stacks.
  for (int m = 0; m <= K_; ++m) {
    const Vector ac = values * cos_m_.row(m).transpose() / Real(n_theta_);
    coeffs.c[m] = radial_[m].transpose() * wrad_.cwiseProduct(ac);
    if (m >= 1) {
      const Vector as = values * sin_m_.row(m).transpose() / Real(n_theta_);
      coeffs.s[m] = radial_[m].transpose() * wrad_.cwiseProduct(as);
    }
  }
  return coeffs;
}

Matrix DiscGrid::synthesize(const DiscCoeffs& coeffs) const {
  Matrix values = Matrix::Zero(rho_.size(), n_theta_);
  for (int m = 0; m <= K_; ++m) {
    if (coeffs.c[m].size() > 0) {
      const Vector radial = radial_[m] * coeffs.c[m];
      values.noalias() += radial * cos_m_.row(m);
    }
    if (m >= 1 && coeffs.s[m].size() > 0) {
      const Vector radial = radial_[m] * coeffs.s[m];
      values.noalias() += radial * sin_m_.row(m);
    }
  }
  return values;
}

void DiscGrid::gradient(const DiscCoeffs& coeffs, Matrix& f_rho,
                        Matrix& f_theta_over_rho) const {
  f_rho = Matrix::Zero(rho_.size(), n_theta_);
  f_theta_over_rho = Matrix::Zero(rho_.size(), n_theta_);
  const Vector inv_rho = rho_.cwiseInverse();
  for (int m = 0; m <= K_; ++m) {
    if (coeffs.c[m].size() > 0) {
      const Vector dr = radial_deriv_[m] * coeffs.c[m];
      f_rho.noalias() += dr * cos_m_.row(m);
      if (m >= 1) {
        const Vector r = (radial_[m] * coeffs.c[m]).cwiseProduct(inv_rho);
        f_theta_over_rho.noalias() += -Real(m) * r * sin_m_.row(m);
      }
    }
    if (m >= 1 && coeffs.s[m].size() > 0) {
      const Vector dr = radial_deriv_[m] * coeffs.s[m];
      f_rho.noalias() += dr * sin_m_.row(m);
      const Vector r = (radial_[m] * coeffs.s[m]).cwiseProduct(inv_rho);
      f_theta_over_rho.noalias() += Real(m) * r * cos_m_.row(m);
    }
  }
}

Real DiscGrid::evaluate(const DiscCoeffs& coeffs, Real rho, Real theta) const {
  std::vector<Real> pj(K_ + 2);
  const Real t = 2.0 * rho * rho - 1.0;
  Real acc = 0.0;
  for (int m = 0; m <= K_; ++m) {
    const int J = (K_ - m) / 2 + 1;
    jacobi_values(J - 1, mu_, m, t, pj.data());
    const Real rm = std::pow(rho, m);
    Real rad_c = 0.0, rad_s = 0.0;
    for (int j = 0; j < J; ++j) {
      const Real base = scale_[m][j] * rm * pj[j];
      if (coeffs.c[m].size() > j) rad_c += coeffs.c[m][j] * base;
      if (m >= 1 && coeffs.s[m].size() > j) rad_s += coeffs.s[m][j] * base;
    }
    acc += rad_c * std::cos(m * theta);
    if (m >= 1) acc += rad_s * std::sin(m * theta);
  }
  return acc;
}

Matrix DiscGrid::synthesize_polar(const DiscCoeffs& coeffs, const Vector& rho_f,
                                  const Vector& theta_f) const {
  const Index nr = rho_f.size(), nt = theta_f.size();
  Matrix values = Matrix::Zero(nr, nt);
  std::vector<Real> pj(K_ + 2);
  Matrix rad_c = Matrix::Zero(nr, K_ + 1), rad_s = Matrix::Zero(nr, K_ + 1);
  for (Index i = 0; i < nr; ++i) {
    const Real r = rho_f[i];
    const Real t = 2.0 * r * r - 1.0;
    for (int m = 0; m <= K_; ++m) {
      const int J = (K_ - m) / 2 + 1;
      jacobi_values(J - 1, mu_, m, t, pj.data());
      const Real rm = std::pow(r, m);
      Real ac = 0.0, as = 0.0;
      for (int j = 0; j < J; ++j) {
        const Real base = scale_[m][j] * rm * pj[j];
        if (coeffs.c[m].size() > j) ac += coeffs.c[m][j] * base;
        if (m >= 1 && coeffs.s[m].size() > j) as += coeffs.s[m][j] * base;
      }
      rad_c(i, m) = ac;
      rad_s(i, m) = as;
    }
  }
  for (Index j = 0; j < nt; ++j) {
    for (int m = 0; m <= K_; ++m) {
      const Real cm = std::cos(m * theta_f[j]);
      const Real sm = std::sin(m * theta_f[j]);
      for (Index i = 0; i < nr; ++i)
        values(i, j) += rad_c(i, m) * cm + rad_s(i, m) * sm;
    }
  }
  return values;
}

Index DiscGrid::swapped_theta_index(Index j) const {
  const Index q = n_theta_ / 4;
  Index k = (q - 1 - j) % n_theta_;
  if (k < 0) k += n_theta_;
  return k;
}

DiscFunction::DiscFunction(DiscGridPtr g, Matrix v)
    : grid(std::move(g)), values(std::move(v)) {
  if (!grid) throw invalid_parameter("DiscFunction: null grid");
  if (values.rows() != grid->n_rho() || values.cols() != grid->n_theta())
    throw invalid_parameter("DiscFunction: value shape mismatch");
}

DiscGridPtr build_disc_grid(int d, int degree_cap) {
  return std::make_shared<const DiscGrid>(d, degree_cap);
}

DiscFunction sample_disc(DiscGridPtr grid,
                         const std::function<Real(Real, Real)>& u_yz) {
  Matrix v(grid->n_rho(), grid->n_theta());
  for (Index i = 0; i < grid->n_rho(); ++i)
    for (Index j = 0; j < grid->n_theta(); ++j)
      v(i, j) = u_yz(grid->y(i, j), grid->z(i, j));
  return DiscFunction(std::move(grid), std::move(v));
}

DiscFunction from_euclidean(DiscGridPtr grid,
                            const std::function<Real(Real, Real)>& f_st) {
  const Real half_dm2 = 0.5 * (grid->dimension() - 2);
  Matrix v(grid->n_rho(), grid->n_theta());
  for (Index i = 0; i < grid->n_rho(); ++i)
    for (Index j = 0; j < grid->n_theta(); ++j) {
      const Real y = grid->y(i, j), z = grid->z(i, j);
      const Real omz = 1.0 - z;
      const Real rho2 = y * y + z * z;
      const Real s = std::sqrt(std::max(1.0 - rho2, 0.0)) / omz;
      const Real t = y / omz;
      v(i, j) = std::pow(omz, -half_dm2) * f_st(s, t);
    }
  return DiscFunction(std::move(grid), std::move(v));
}

DiscFunction from_axis_profile(DiscGridPtr grid,
                               const std::function<Real(Real)>& u_z) {
  Matrix v(grid->n_rho(), grid->n_theta());
  for (Index i = 0; i < grid->n_rho(); ++i)
    for (Index j = 0; j < grid->n_theta(); ++j) v(i, j) = u_z(grid->z(i, j));
  return DiscFunction(std::move(grid), std::move(v));
}

Real integrate(const DiscFunction& u) {
  Real acc = 0.0;
  for (Index i = 0; i < u.grid->n_rho(); ++i)
    acc += u.grid->weight(i) * u.values.row(i).sum();
  return acc;
}

Real l2_inner(const DiscFunction& a, const DiscFunction& b) {
  Real acc = 0.0;
  for (Index i = 0; i < a.grid->n_rho(); ++i)
    acc += a.grid->weight(i) * a.values.row(i).dot(b.values.row(i));
  return acc;
}

Real lq_norm(const DiscFunction& u, Real q) {
  Real acc = 0.0;
  for (Index i = 0; i < u.grid->n_rho(); ++i)
    acc +=
        u.grid->weight(i) * u.values.row(i).array().abs().pow(q).sum();
  return std::pow(acc, 1.0 / q);
}

Real dirichlet_energy(const DiscFunction& u) {
  const DiscCoeffs coeffs = u.grid->analyze(u.values);
  Matrix f_rho, f_tor;
  u.grid->gradient(coeffs, f_rho, f_tor);
  Real acc = 0.0;
  for (Index i = 0; i < u.grid->n_rho(); ++i) {
    const Real r2 = u.grid->rho()[i] * u.grid->rho()[i];
    acc += u.grid->weight(i) *
           ((1.0 - r2) * f_rho.row(i).squaredNorm() + f_tor.row(i).squaredNorm());
  }
  return acc;
}

Real dirichlet_inner(const DiscFunction& a, const DiscFunction& b) {
  const DiscCoeffs ca = a.grid->analyze(a.values);
  const DiscCoeffs cb = b.grid->analyze(b.values);
  Matrix ar, at, br, bt;
  a.grid->gradient(ca, ar, at);
  b.grid->gradient(cb, br, bt);
  Real acc = 0.0;
  for (Index i = 0; i < a.grid->n_rho(); ++i) {
    const Real r2 = a.grid->rho()[i] * a.grid->rho()[i];
    acc += a.grid->weight(i) * ((1.0 - r2) * ar.row(i).dot(br.row(i)) +
                                at.row(i).dot(bt.row(i)));
  }
  return acc;
}

DiscFunction conformal_U(const DiscFunction& u) {
  Matrix v(u.values.rows(), u.values.cols());
  for (Index j = 0; j < u.values.cols(); ++j)
    v.col(j) = u.values.col(u.grid->swapped_theta_index(j));
  return DiscFunction(u.grid, std::move(v));
}

}  // namespace ineq
