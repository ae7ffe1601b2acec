#include "ineq/ultraspherical.hpp"

#include <cmath>

#include "ineq/errors.hpp"

namespace ineq {

namespace {

// Monic recurrence coefficient b_k for the orthonormal polynomials of the
// probability measure dsigma_d:  b_k = k(k+d-2) / ((2k+d-1)(2k+d-3)).
Real recurrence_b(int k, int d) {
  return Real(k) * (k + d - 2) / ((2.0 * k + d - 1) * (2.0 * k + d - 3));
}

}  // namespace

UltrasphericalGrid::UltrasphericalGrid(int d, int n) : d_(d), n_(n) {
  if (d < 3) throw invalid_parameter("build_grid: d must be >= 3");
  if (n < 8) throw invalid_parameter("build_grid: n must be >= 8");

  QuadratureRule rule = gauss_jacobi_symmetric(n, 0.5 * d - 1.0);
  nodes_ = rule.nodes;
  weights_ = rule.weights / rule.weights.sum();  // probability normalization
  degree_cap_ = n / 2;

  const int K = degree_cap_;
  basis_.resize(n_, K + 1);
  basis_deriv_.resize(n_, K + 1);
  basis_.col(0).setOnes();
  basis_deriv_.col(0).setZero();
  if (K >= 1) {
    const Real s1 = std::sqrt(recurrence_b(1, d));
    basis_.col(1) = nodes_ / s1;
    basis_deriv_.col(1).setConstant(1.0 / s1);
  }
  for (int k = 1; k < K; ++k) {
    const Real sk = std::sqrt(recurrence_b(k, d));
    const Real sk1 = std::sqrt(recurrence_b(k + 1, d));
    basis_.col(k + 1) =
        (nodes_.cwiseProduct(basis_.col(k)) - sk * basis_.col(k - 1)) / sk1;
    basis_deriv_.col(k + 1) = (nodes_.cwiseProduct(basis_deriv_.col(k)) +
                               basis_.col(k) - sk * basis_deriv_.col(k - 1)) /
                              sk1;
  }
}

Vector UltrasphericalGrid::analyze(const Vector& values) const {
  return basis_.transpose() * weights_.cwiseProduct(values);
}

Vector UltrasphericalGrid::synthesize(const Vector& coeffs) const {
  if (coeffs.size() > degree_cap_ + 1)
    throw resolution_error("synthesize: coefficient degree exceeds degree_cap");
  return basis_.leftCols(coeffs.size()) * coeffs;
}

SphereFunction::SphereFunction(GridPtr g, Vector v)
    : grid(std::move(g)), values(std::move(v)) {
  if (!grid) throw invalid_parameter("SphereFunction: null grid");
  if (values.size() != grid->size())
    throw invalid_parameter("SphereFunction: value/node count mismatch");
}

const Vector& SphereFunction::coeffs() const {
  if (!coeffs_) coeffs_ = grid->analyze(values);
  return *coeffs_;
}

GridPtr build_grid(int d, int n) {
  return std::make_shared<const UltrasphericalGrid>(d, n);
}

SphereFunction sample(GridPtr grid, const std::function<Real(Real)>& f) {
  Vector v(grid->size());
  for (Index i = 0; i < grid->size(); ++i) v[i] = f(grid->nodes()[i]);
  return SphereFunction(std::move(grid), std::move(v));
}

SphereFunction constant_function(GridPtr grid, Real c) {
  Vector v = Vector::Constant(grid->size(), c);
  return SphereFunction(std::move(grid), std::move(v));
}

SphereFunction basis_function(GridPtr grid, int k) {
  if (k < 0 || k > grid->degree_cap())
    throw resolution_error("basis_function: degree exceeds degree_cap");
  Vector v = grid->basis().col(k);
  return SphereFunction(std::move(grid), std::move(v));
}

Real integrate(const SphereFunction& f) {
  return f.grid->weights().dot(f.values);
}

Vector derivative_values(const SphereFunction& f) {
  const int K = f.grid->degree_cap();
  return f.grid->basis_deriv().leftCols(K + 1) * f.coeffs();
}

Real dirichlet_energy(const SphereFunction& f) {
  const Vector df = derivative_values(f);
  const Vector& z = f.grid->nodes();
  const Vector nu = (1.0 - z.array().square()).matrix();
  return f.grid->weights().dot(df.cwiseProduct(df).cwiseProduct(nu));
}

Real dirichlet_energy_parseval(const SphereFunction& f) {
  const Vector& c = f.coeffs();
  Real e = 0.0;
  for (Index k = 0; k < c.size(); ++k)
    e += f.grid->eigenvalue(static_cast<int>(k)) * c[k] * c[k];
  return e;
}

Real lq_norm(const SphereFunction& f, Real q) {
  const Real s =
      f.grid->weights().dot(f.values.array().abs().pow(q).matrix());
  return std::pow(s, 1.0 / q);
}

SphereFunction apply_L(const SphereFunction& f) {
  Vector c = f.coeffs();
  for (Index k = 0; k < c.size(); ++k)
    c[k] *= -f.grid->eigenvalue(static_cast<int>(k));
  return SphereFunction(f.grid, f.grid->synthesize(c));
}

SphereFunction synthesize(GridPtr grid, const Vector& coeffs) {
  return SphereFunction(grid, grid->synthesize(coeffs));
}

SphereFunction project_degree(const SphereFunction& f,
                              const std::set<int>& k_set) {
  Vector c = f.coeffs();
  for (Index k = 0; k < c.size(); ++k)
    if (!k_set.count(static_cast<int>(k))) c[k] = 0.0;
  return SphereFunction(f.grid, f.grid->synthesize(c));
}

}  // namespace ineq
