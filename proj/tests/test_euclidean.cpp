#include <doctest.h>

#include <cmath>
#include <random>

#include "ineq/errors.hpp"
#include "ineq/euclidean.hpp"
#include "oracles.hpp"

using namespace ineq;

namespace {

// Independent Euclidean-side quadrature of a radial integrand over (0, inf):
// adaptive Simpson on [0, 10] plus the far field through the t = 1/r chart,
// with the surface factor attached.
Real euclidean_radial_integral(int d, const std::function<Real(Real)>& f) {
  const Real shell = sphere_surface_volume(d - 1);
  const Real near_field = oracle::integrate(
      [&](Real r) { return f(r) * std::pow(r, d - 1.0); }, 1e-9, 10.0, 1e-12);
  const Real far_field = oracle::integrate(
      [&](Real t) {
        const Real r = 1.0 / t;
        return f(r) * std::pow(r, d + 1.0);
      },
      1e-9, 0.1, 1e-12);
  return shell * (near_field + far_field);
}

}  // namespace

TEST_CASE("g_star: normalization, value at the origin, zero deficit") {
  for (int d : {3, 4, 5}) {
    RadialFunction g = g_star(d);
    const Real volume = sphere_surface_volume(d);
    // |g_*|_{2*} = 1, via the independent Euclidean quadrature oracle.
    const Real two_star = 2.0 * d / (d - 2.0);
    const Real norm = std::pow(
        euclidean_radial_integral(
            d, [&](Real r) { return std::pow(g_star_value(d, r), two_star); }),
        1.0 / two_star);
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-8));

    CHECK(g_star_value(d, 0.0) ==
          doctest::Approx(std::pow(volume, -(d - 2.0) / (2.0 * d)) *
                          std::pow(2.0, 0.5 * (d - 2.0))));

    CHECK(std::abs(sobolev_deficit(g)) < 1e-8);
  }
}

TEST_CASE("lift/push round trip and transport identities") {
  const int d = 3;
  GridPtr grid = build_grid(d, 64);
  // A smooth positive sphere profile and its plane image.
  SphereFunction u = sample(grid, [](Real z) { return 1.0 + 0.3 * z + 0.1 * z * z; });
  RadialFunction f = push_to_plane(u);
  SphereFunction back = lift_to_sphere(f);
  CHECK((back.values - u.values).cwiseAbs().maxCoeff() < 1e-12);

  // Transport contract, Euclidean side computed by the independent radial
  // Simpson oracle on the closed-form image f(r) = (1-z)^{(d-2)/2} u(z(r)).
  auto f_exact = [](Real r) {
    const Real omz = 2.0 / (1.0 + r * r);  // 1 - z, cancellation-free
    const Real z = 1.0 - omz;
    return std::sqrt(omz) * (1.0 + 0.3 * z + 0.1 * z * z);
  };
  const Real volume = sphere_surface_volume(d);
  const Real lhs_mass = euclidean_radial_integral(
      d, [&](Real r) { return std::pow(f_exact(r), 6.0); });
  const Real rhs_mass = volume * std::pow(lq_norm(u, 6.0), 6.0);
  CHECK(lhs_mass == doctest::Approx(rhs_mass).epsilon(1e-7));

  // Gradient identity: |grad f|^2_{R^d} = |S^d| (i(u) + A |u|_2^2), with the
  // Euclidean side from the analytic derivative of the closed form.
  auto df_exact = [](Real r) {
    const Real omz = 2.0 / (1.0 + r * r);
    const Real z = 1.0 - omz;
    const Real dz = 4.0 * r / ((r * r + 1.0) * (r * r + 1.0));
    const Real P = 1.0 + 0.3 * z + 0.1 * z * z;
    const Real dP = 0.3 + 0.2 * z;
    return dz * (std::sqrt(omz) * dP - 0.5 * P / std::sqrt(omz));
  };
  const Real lhs_grad = euclidean_radial_integral(
      d, [&](Real r) { return std::pow(df_exact(r), 2.0); });
  const Real A = 0.25 * d * (d - 2.0);
  const Real rhs_grad =
      volume * (dirichlet_energy(u) + A * std::pow(lq_norm(u, 2.0), 2.0));
  CHECK(lhs_grad == doctest::Approx(rhs_grad).epsilon(1e-7));
}

TEST_CASE("sobolev deficit vanishes on the optimizer family") {
  const int d = 3;
  DiscGridPtr disc = build_disc_grid(d, 48);
  for (Real a : {0.5, 1.0, 2.0})
    for (Real b : {-0.5, 0.0, 0.5})
      for (Real c : {1.0, -2.0}) {
        ManifoldPoint point;
        point.a = a;
        point.b = Vector::Zero(d);
        point.b[d - 1] = b;
        point.c = c;
        DiscFunction g = sample_manifold(disc, point);
        const Real scale = grad_norm_sq(g);
        CHECK(std::abs(sobolev_deficit(g)) < 1e-8 * scale);
      }
}

TEST_CASE("deficit matches the sphere deficit for lifted perturbations") {
  const int d = 3;
  GridPtr grid = build_grid(d, 64);
  DiscGridPtr disc = build_disc_grid(d, 32);
  const Real eps = 1e-2;
  Vector coeffs = Vector::Zero(grid->degree_cap() + 1);
  coeffs[0] = 1.0;
  coeffs[2] = eps;
  SphereFunction u = synthesize(grid, coeffs);
  DiscFunction f = embed_axis_profile(disc, push_to_plane(u));

  // |S^d| (i + A|u|^2 - A|u|_{2*}^2) computed in both representations.
  InterpolationParams params = make_params(d, 6.0);
  const Real sphere_deficit =
      dirichlet_energy(u) + params.A * std::pow(lq_norm(u, 2.0), 2.0) -
      params.A * std::pow(lq_norm(u, 6.0), 2.0);
  CHECK(sobolev_deficit(f) ==
        doctest::Approx(params.sphere_volume * sphere_deficit).epsilon(1e-7));
}

TEST_CASE("projection recovers planted manifold points") {
  const int d = 3;
  DiscGridPtr disc = build_disc_grid(d, 40);

  ManifoldPoint exact;
  exact.a = 1.0;
  exact.b = Vector::Zero(d);
  exact.c = 1.0;
  DiscFunction g = sample_manifold(disc, exact);
  ProjectionResult res = project_to_manifold(g);
  CHECK(res.converged);
  CHECK(res.point.a == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(res.point.b[d - 1] == doctest::Approx(0.0).epsilon(1e-6));
  CHECK(res.point.c == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(res.dist2 < 1e-10 * grad_norm_sq(g));

  // Perturbed planted point: noise along a degree-2 direction is orthogonal
  // to the manifold tangent, so parameters move at second order only.
  ManifoldPoint planted;
  planted.a = 2.0;
  planted.b = Vector::Zero(d);
  planted.b[d - 1] = 0.5;
  planted.c = 3.0;
  DiscFunction gp = sample_manifold(disc, planted);
  DiscFunction bump = sample_disc(disc, [](Real y, Real z) {
    return (z * z - 0.25) * (1.0 - 0.3 * y);
  });
  DiscFunction noisy(disc,
                     gp.values + 1e-3 * gp.values.cwiseAbs().maxCoeff() *
                                     bump.values / bump.values.cwiseAbs().maxCoeff());
  ProjectionResult res2 = project_to_manifold(noisy);
  CHECK(res2.point.a == doctest::Approx(2.0).epsilon(1e-2));
  CHECK(res2.point.b[d - 1] == doctest::Approx(0.5).epsilon(1e-2));
  CHECK(res2.point.c == doctest::Approx(3.0).epsilon(1e-2));
}

TEST_CASE("projection objective is scale covariant") {
  const int d = 3;
  DiscGridPtr disc = build_disc_grid(d, 32);
  ManifoldPoint point;
  point.a = 1.3;
  point.b = Vector::Zero(d);
  point.b[d - 1] = 0.2;
  point.c = 1.0;
  DiscFunction g = sample_manifold(disc, point);
  DiscFunction bump = sample_disc(disc, [](Real y, Real z) {
    return 0.05 * (z * z - y);
  });
  DiscFunction f(disc, g.values + bump.values);
  ProjectionResult base = project_to_manifold(f);
  DiscFunction f2(disc, 2.0 * f.values);
  ProjectionResult scaled = project_to_manifold(f2);
  CHECK(scaled.point.a == doctest::Approx(base.point.a).epsilon(1e-6));
  CHECK(scaled.point.c == doctest::Approx(2.0 * base.point.c).epsilon(1e-6));
  CHECK(scaled.dist2 == doctest::Approx(4.0 * base.dist2).epsilon(1e-6));
}

TEST_CASE("stability quotient: spectral limits and conformal invariance") {
  const int d = 3;
  GridPtr grid = build_grid(d, 64);
  DiscGridPtr disc = build_disc_grid(d, 36);

  auto quotient_of_mode = [&](int k, Real eps) {
    Vector coeffs = Vector::Zero(grid->degree_cap() + 1);
    coeffs[0] = 1.0;
    coeffs[k] = eps;
    SphereFunction u = synthesize(grid, coeffs);
    DiscFunction f = embed_axis_profile(disc, push_to_plane(u));
    return stability_quotient(f);
  };
  CHECK(quotient_of_mode(2, 1e-3) == doctest::Approx(4.0 / 7.0).epsilon(1e-2));
  CHECK(quotient_of_mode(3, 1e-3) ==
        doctest::Approx(12.0 / 15.75).epsilon(1e-2));

  // Conformal invariance: E(Uf) = E(f).
  DiscFunction f = sample_disc(disc, [&](Real y, Real z) {
    return 1.0 + 0.05 * (z * z - 0.3) + 0.03 * y * z;
  });
  const Real q = stability_quotient(f);
  const Real qU = stability_quotient(conformal_U(f));
  CHECK(qU == doctest::Approx(q).epsilon(1e-6));

  // Large perturbations keep the quotient at or below 1.
  DiscFunction big = sample_disc(disc, [&](Real y, Real z) {
    const Real c2 = z * z - 0.25;
    return std::pow(sphere_surface_volume(d), -1.0 / 6.0) + 2.0 * c2;
  });
  CHECK(stability_quotient(big) <= 1.0 + 1e-6);
}

TEST_CASE("estimate_I_delta") {
  const int d = 3;
  DiscGridPtr disc = build_disc_grid(d, 32);
  std::vector<DiscFunction> family;
  for (Real eps : {5e-3, 1e-2, 2e-2}) {
    GridPtr grid = build_grid(d, 64);
    Vector coeffs = Vector::Zero(grid->degree_cap() + 1);
    coeffs[0] = 1.0;
    coeffs[2] = eps;
    family.push_back(embed_axis_profile(disc, push_to_plane(synthesize(grid, coeffs))));
  }
  const Real estimate = estimate_I_delta(0.1, family);
  CHECK(estimate == doctest::Approx(4.0 / 7.0).epsilon(2e-2));
  CHECK(estimate <= 1.0 + 1e-9);

  CHECK_THROWS_AS(estimate_I_delta(0.7, family), invalid_parameter);
  CHECK_THROWS_AS(estimate_I_delta(0.1, std::vector<DiscFunction>{}),
                  empty_sample);
}

TEST_CASE("axisym sampling and norms") {
  const int d = 3;
  // Gaussian bump: closed-form norms.
  auto f = [](Real s, Real t) { return std::exp(-(s * s + t * t)); };
  AxiSymFunction ax = sample_axisym(d, 8.0, 8.0, 48, 96, f);
  // |f|_2^2 = int e^{-2|x|^2} dx = (pi/2)^{3/2}.
  const Real ref = std::pow(kPi / 2.0, 1.5);
  const Real n2 = lp_norm(ax, 2.0);
  CHECK(n2 * n2 == doctest::Approx(ref).epsilon(1e-8));

  DiscGridPtr disc = build_disc_grid(d, 24);
  DiscFunction u = to_disc(ax, disc);
  const Real n2_disc = lp_norm_euclidean(u, 2.0);
  CHECK(n2_disc == doctest::Approx(n2).epsilon(1e-2));  // bilinear import
}
