#include <doctest.h>

#include <cmath>

#include "ineq/errors.hpp"
#include "ineq/quadrature.hpp"
#include "oracles.hpp"

using namespace ineq;

TEST_CASE("gauss_jacobi integrates polynomials exactly") {
  QuadratureRule rule = gauss_jacobi(12, 1.5, 0.0);
  // mass of (1-x)^{3/2} on [-1,1]: 2^{5/2} B(5/2,1) = 2^{5/2} * 2/5.
  const Real mass = std::pow(2.0, 2.5) * 2.0 / 5.0;
  CHECK(rule.weights.sum() == doctest::Approx(mass).epsilon(1e-13));

  // Degree-7 polynomial against the weight, oracle by adaptive Simpson.
  auto poly = [](Real x) { return 1.0 + x - 2.0 * x * x + 0.5 * std::pow(x, 7); };
  Real quad = 0.0;
  for (Index i = 0; i < rule.size(); ++i)
    quad += rule.weights[i] * poly(rule.nodes[i]);
  const Real ref = oracle::integrate(
      [&](Real x) { return poly(x) * std::pow(1.0 - x, 1.5); }, -1.0,
      1.0 - 1e-13);
  CHECK(quad == doctest::Approx(ref).epsilon(1e-10));
}

TEST_CASE("symmetric rule has exact parity") {
  QuadratureRule rule = gauss_jacobi_symmetric(17, 0.5);
  for (Index i = 0; i < rule.size(); ++i) {
    CHECK(rule.nodes[i] == -rule.nodes[rule.size() - 1 - i]);
    CHECK(rule.weights[i] == rule.weights[rule.size() - 1 - i]);
  }
  Real odd = 0.0;
  for (Index i = 0; i < rule.size(); ++i)
    odd += rule.weights[i] * std::pow(rule.nodes[i], 3);
  CHECK(std::abs(odd) < 1e-16 * rule.weights.sum());
}

TEST_CASE("gauss_hermite_pi is a probability rule with variance 1/(2 pi)") {
  QuadratureRule rule = gauss_hermite_pi(48);
  CHECK(rule.weights.sum() == doctest::Approx(1.0).epsilon(1e-14));
  Real second = 0.0, fourth = 0.0;
  for (Index i = 0; i < rule.size(); ++i) {
    second += rule.weights[i] * rule.nodes[i] * rule.nodes[i];
    fourth += rule.weights[i] * std::pow(rule.nodes[i], 4);
  }
  const Real v = 1.0 / (2.0 * kPi);
  CHECK(second == doctest::Approx(v).epsilon(1e-12));
  CHECK(fourth == doctest::Approx(3.0 * v * v).epsilon(1e-12));
  // Exponential moment against the closed form.
  Real expm = 0.0;
  for (Index i = 0; i < rule.size(); ++i)
    expm += rule.weights[i] * std::exp(2.0 * rule.nodes[i]);
  CHECK(expm == doctest::Approx(oracle::gaussian_exp_integral(2.0)).epsilon(1e-12));
}

TEST_CASE("invalid parameters are rejected") {
  CHECK_THROWS_AS(gauss_jacobi(0, 0.0, 0.0), invalid_parameter);
  CHECK_THROWS_AS(gauss_jacobi(8, -1.5, 0.0), invalid_parameter);
}
