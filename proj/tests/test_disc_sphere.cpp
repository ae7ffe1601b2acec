#include <doctest.h>

#include <cmath>
#include <random>

#include "ineq/disc_sphere.hpp"
#include "ineq/errors.hpp"
#include "oracles.hpp"

using namespace ineq;

namespace {

DiscFunction random_disc(DiscGridPtr grid, std::mt19937_64& rng, int degree) {
  // Random polynomial in (y, z) of the given total degree.
  std::vector<Real> coeff;
  for (int a = 0; a <= degree; ++a)
    for (int b = 0; a + b <= degree; ++b)
      coeff.push_back((rng() >> 11) * 0x1.0p-53 - 0.5);
  return sample_disc(grid, [&, degree](Real y, Real z) {
    Real acc = 0.0;
    std::size_t k = 0;
    for (int a = 0; a <= degree; ++a)
      for (int b = 0; a + b <= degree; ++b)
        acc += coeff[k++] * std::pow(y, a) * std::pow(z, b);
    return acc;
  });
}

}  // namespace

TEST_CASE("disc measure moments match the axis measure") {
  for (int d : {3, 4, 5}) {
    DiscGridPtr grid = build_disc_grid(d, 16);
    DiscFunction one = sample_disc(grid, [](Real, Real) { return 1.0; });
    CHECK(integrate(one) == doctest::Approx(1.0).epsilon(1e-13));

    DiscFunction z2 = sample_disc(grid, [](Real, Real z) { return z * z; });
    CHECK(integrate(z2) ==
          doctest::Approx(oracle::sigma_moment_closed(d, 1)).epsilon(1e-12));
    DiscFunction y2 = sample_disc(grid, [](Real y, Real) { return y * y; });
    CHECK(integrate(y2) ==
          doctest::Approx(oracle::sigma_moment_closed(d, 1)).epsilon(1e-12));
    DiscFunction yz = sample_disc(grid, [](Real y, Real z) { return y * z; });
    CHECK(std::abs(integrate(yz)) < 1e-14);
    DiscFunction z4 =
        sample_disc(grid, [](Real, Real z) { return std::pow(z, 4); });
    CHECK(integrate(z4) ==
          doctest::Approx(oracle::sigma_moment_closed(d, 2)).epsilon(1e-12));
  }
}

TEST_CASE("analysis/synthesis round trip on band-limited data") {
  DiscGridPtr grid = build_disc_grid(3, 20);
  std::mt19937_64 rng(17);
  DiscFunction f = random_disc(grid, rng, 10);
  DiscCoeffs coeffs = grid->analyze(f.values);
  Matrix back = grid->synthesize(coeffs);
  CHECK((back - f.values).cwiseAbs().maxCoeff() <
        1e-11 * f.values.cwiseAbs().maxCoeff());
}

TEST_CASE("pointwise evaluation agrees with nodal values") {
  DiscGridPtr grid = build_disc_grid(4, 14);
  std::mt19937_64 rng(23);
  DiscFunction f = random_disc(grid, rng, 7);
  DiscCoeffs coeffs = grid->analyze(f.values);
  for (Index i : {Index(0), grid->n_rho() / 2, grid->n_rho() - 1})
    for (Index j : {Index(0), grid->n_theta() / 3}) {
      const Real v = grid->evaluate(coeffs, grid->rho()[i], grid->theta()[j]);
      CHECK(v == doctest::Approx(f.values(i, j)).epsilon(1e-10));
    }
}

TEST_CASE("dirichlet energy matches the 1-D reduction for axis profiles") {
  for (int d : {3, 5}) {
    DiscGridPtr grid = build_disc_grid(d, 24);
    // f = z^2: energy = 4 int z^2(1-z^2) dsigma_d.
    DiscFunction f = sample_disc(grid, [](Real, Real z) { return z * z; });
    const Real ref = 4.0 * (oracle::sigma_moment_closed(d, 1) -
                            oracle::sigma_moment_closed(d, 2));
    CHECK(dirichlet_energy(f) == doctest::Approx(ref).epsilon(1e-11));

    // Swapped: f = y^2 has the same energy by symmetry.
    DiscFunction fy = sample_disc(grid, [](Real y, Real) { return y * y; });
    CHECK(dirichlet_energy(fy) == doctest::Approx(ref).epsilon(1e-11));
  }
}

TEST_CASE("conformal_U is an exact isometric involution") {
  DiscGridPtr grid = build_disc_grid(3, 20);
  std::mt19937_64 rng(31);
  DiscFunction f = random_disc(grid, rng, 9);

  DiscFunction uf = conformal_U(f);
  // Values permute, so every quadrature functional is exactly preserved.
  CHECK(integrate(uf) == doctest::Approx(integrate(f)).epsilon(1e-15));
  CHECK(lq_norm(uf, 6.0) == doctest::Approx(lq_norm(f, 6.0)).epsilon(1e-15));
  CHECK(dirichlet_energy(uf) ==
        doctest::Approx(dirichlet_energy(f)).epsilon(1e-9));

  DiscFunction uuf = conformal_U(uf);
  CHECK((uuf.values - f.values).cwiseAbs().maxCoeff() == 0.0);
  // U^4 = Id follows.
  DiscFunction u4 = conformal_U(conformal_U(uuf));
  CHECK((u4.values - uuf.values).cwiseAbs().maxCoeff() == 0.0);

  // The swap sends an axis profile to the matching y-profile.
  DiscFunction axis = sample_disc(grid, [](Real, Real z) { return z + z * z; });
  DiscFunction swapped = conformal_U(axis);
  DiscFunction expected =
      sample_disc(grid, [](Real y, Real) { return y + y * y; });
  CHECK((swapped.values - expected.values).cwiseAbs().maxCoeff() < 1e-12);

  DiscFunction c = sample_disc(grid, [](Real, Real) { return 2.5; });
  CHECK((conformal_U(c).values.array() - 2.5).abs().maxCoeff() == 0.0);
}

TEST_CASE("from_euclidean matches the conformal dictionary") {
  const int d = 3;
  DiscGridPtr grid = build_disc_grid(d, 24);
  // Standard bubble pulled back: u is the constant |S^d|^{-1/2*}.
  const Real volume = 2.0 * kPi * kPi;
  auto g_star = [&](Real s, Real t) {
    const Real r2 = s * s + t * t;
    return std::pow(volume, -1.0 / 6.0) * std::pow(2.0 / (1.0 + r2), 0.5);
  };
  DiscFunction u = from_euclidean(grid, g_star);
  const Real expected = std::pow(volume, -1.0 / 6.0);
  CHECK((u.values.array() - expected).abs().maxCoeff() < 1e-12);
}

TEST_CASE("gradient components against analytic derivatives") {
  DiscGridPtr grid = build_disc_grid(3, 18);
  DiscFunction f = sample_disc(grid, [](Real y, Real z) { return y * z; });
  DiscCoeffs coeffs = grid->analyze(f.values);
  Matrix fr, ft;
  grid->gradient(coeffs, fr, ft);
  // F = y z = rho^2 cos sin: F_rho = 2 rho cos sin, F_theta/rho = rho cos(2t).
  for (Index i : {Index(1), grid->n_rho() - 2})
    for (Index j : {Index(2), grid->n_theta() / 2}) {
      const Real rho = grid->rho()[i], th = grid->theta()[j];
      CHECK(fr(i, j) ==
            doctest::Approx(2.0 * rho * std::cos(th) * std::sin(th))
                .epsilon(1e-9));
      CHECK(ft(i, j) ==
            doctest::Approx(rho * std::cos(2.0 * th)).epsilon(1e-9));
    }
}
