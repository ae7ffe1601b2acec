#include "ineq/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "ineq/errors.hpp"

namespace ineq {

namespace {

// Golub-Welsch: nodes are the eigenvalues of the Jacobi matrix built from the
// monic recurrence coefficients, weights are mu0 * (first eigenvector row)^2.
QuadratureRule golub_welsch(const Vector& a, const Vector& b, Real mu0) {
  const Index n = a.size();
  Vector diag = a;
  Vector sub(n - 1);
  for (Index k = 0; k + 1 < n; ++k) sub[k] = std::sqrt(b[k + 1]);

  Eigen::SelfAdjointEigenSolver<Matrix> es;
  es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success)
    throw integration_error("golub_welsch: tridiagonal eigensolve failed");

  QuadratureRule rule;
  rule.nodes = es.eigenvalues();
  rule.weights.resize(n);
  for (Index i = 0; i < n; ++i) {
    const Real v = es.eigenvectors()(0, i);
    rule.weights[i] = mu0 * v * v;
  }
  return rule;
}

void symmetrize(QuadratureRule& rule) {
  const Index n = rule.size();
  for (Index i = 0; i < n / 2; ++i) {
    const Index j = n - 1 - i;
    const Real z = 0.5 * (rule.nodes[j] - rule.nodes[i]);
    rule.nodes[i] = -z;
    rule.nodes[j] = z;
    const Real w = 0.5 * (rule.weights[i] + rule.weights[j]);
    rule.weights[i] = rule.weights[j] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
}

}  // namespace

QuadratureRule gauss_jacobi(int n, Real alpha, Real beta) {
  if (n < 1) throw invalid_parameter("gauss_jacobi: n must be >= 1");
  if (alpha <= -1.0 || beta <= -1.0)
    throw invalid_parameter("gauss_jacobi: exponents must exceed -1");
  const Real s = alpha + beta;
  Vector a(n), b(n);
  a[0] = (beta - alpha) / (s + 2.0);
  b[0] = 0.0;  // unused
  for (int k = 1; k < n; ++k) {
    const Real t = 2.0 * k + s;
    a[k] = (beta * beta - alpha * alpha) / (t * (t + 2.0));
    b[k] = 4.0 * k * (k + alpha) * (k + beta) * (k + s) /
           (t * t * (t + 1.0) * (t - 1.0));
  }
  const Real mu0 = std::exp((s + 1.0) * std::log(2.0) + std::lgamma(alpha + 1.0) +
                            std::lgamma(beta + 1.0) - std::lgamma(s + 2.0));
  return golub_welsch(a, b, mu0);
}

QuadratureRule gauss_jacobi_symmetric(int n, Real alpha) {
  QuadratureRule rule = gauss_jacobi(n, alpha, alpha);
  symmetrize(rule);
  return rule;
}

QuadratureRule gauss_hermite_pi(int n) {
  if (n < 1) throw invalid_parameter("gauss_hermite_pi: n must be >= 1");
  const Real variance = 1.0 / (2.0 * kPi);
  Vector a = Vector::Zero(n), b(n);
  for (int k = 1; k < n; ++k) b[k] = k * variance;
  QuadratureRule rule = golub_welsch(a, b, 1.0);
  symmetrize(rule);
  return rule;
}

QuadratureRule gauss_legendre(int n) { return gauss_jacobi(n, 0.0, 0.0); }

}  // namespace ineq
