#include <doctest.h>

#include <cmath>
#include <random>

#include "ineq/errors.hpp"
#include "ineq/sphere_functionals.hpp"
#include "oracles.hpp"

using namespace ineq;

namespace {

SphereFunction random_positive(GridPtr grid, std::mt19937_64& rng,
                               Real amplitude, int k_max) {
  Vector c = Vector::Zero(grid->degree_cap() + 1);
  c[0] = 1.0;
  for (int k = 1; k <= k_max; ++k)
    c[k] = amplitude * ((rng() >> 11) * 0x1.0p-53 - 0.5) / k_max;
  return synthesize(grid, c);
}

}  // namespace

TEST_CASE("entropy of simple profiles") {
  GridPtr g = build_grid(3, 48);
  InterpolationParams params = make_params(3, 4.0);
  CHECK(entropy_e(constant_function(g, 2.5), params) ==
        doctest::Approx(0.0).epsilon(1e-13));

  // u = 1 + 0.1 z at p = 4 against the Simpson oracle on the raw density.
  SphereFunction u = sample(g, [](Real z) { return 1.0 + 0.1 * z; });
  const Real np2 = std::pow(
      oracle::sigma_integral(3, [](Real z) { return std::pow(1.0 + 0.1 * z, 4.0); }),
      0.5);
  const Real n22 =
      oracle::sigma_integral(3, [](Real z) { return std::pow(1.0 + 0.1 * z, 2.0); });
  CHECK(entropy_e(u, params) ==
        doctest::Approx((np2 - n22) / 2.0).epsilon(1e-11));

  CHECK_THROWS_AS(entropy_e(constant_function(g, 0.0), params),
                  degenerate_input);
}

TEST_CASE("entropy is continuous across p = 2") {
  GridPtr g = build_grid(3, 48);
  SphereFunction u = sample(g, [](Real z) { return 1.0 + 0.3 * z + 0.1 * z * z; });
  const Real e_log = entropy_e(u, make_params_log(3));
  for (Real dp : {1e-4, -1e-4}) {
    const Real e_p = entropy_e(u, make_params(3, 2.0 + dp));
    CHECK(std::abs(e_p - e_log) < 2e-4);
  }
}

TEST_CASE("entropy is 2-homogeneous, including the log case") {
  GridPtr g = build_grid(4, 40);
  SphereFunction u = sample(g, [](Real z) { return 1.0 + 0.4 * z; });
  for (const InterpolationParams& params :
       {make_params(4, 3.0), make_params_log(4), make_params(4, 1.5)}) {
    const Real e1 = entropy_e(u, params);
    SphereFunction su(g, 3.0 * u.values);
    CHECK(entropy_e(su, params) == doctest::Approx(9.0 * e1).epsilon(1e-10));
  }
}

TEST_CASE("gns deficit: constants, degree-1 quartic cancellation, degree-2 gap") {
  GridPtr g = build_grid(3, 64);
  InterpolationParams params = make_params(3, 6.0);
  CHECK(gns_deficit(constant_function(g, 1.0), params).deficit ==
        doctest::Approx(0.0).epsilon(1e-13));

  // u = 1 + eps z at p = 2*: quadratic terms cancel, quartic ratio doubles by
  // 16 under eps halving.
  auto deficit_eps = [&](Real eps) {
    SphereFunction u = sample(g, [eps](Real z) { return 1.0 + eps * z; });
    return gns_deficit(u, params).deficit;
  };
  const Real d1 = deficit_eps(1e-1);
  const Real d2 = deficit_eps(5e-2);
  const Real d3 = deficit_eps(2.5e-2);
  CHECK(deficit_eps(1e-2) / 1e-4 < 1e-3);
  CHECK(d1 / d2 == doctest::Approx(16.0).epsilon(0.05));
  CHECK(d2 / d3 == doctest::Approx(16.0).epsilon(0.05));

  // u = 1 + eps C2: deficit / eps^2 -> lambda_2 - d = 5 at d = 3.
  const Real eps = 1e-4;
  SphereFunction c2 = basis_function(g, 2);
  SphereFunction u2(g, (1.0 + eps * c2.values.array()).matrix());
  CHECK(gns_deficit(u2, params).deficit / (eps * eps) ==
        doctest::Approx(5.0).epsilon(1e-3));
}

TEST_CASE("gns deficit is nonnegative on random band-limited data") {
  std::mt19937_64 rng(42);
  for (int d : {3, 4, 5, 6}) {
    GridPtr g = build_grid(d, 48);
    std::vector<InterpolationParams> plist = {
        make_params(d, 2.1), make_params(d, std::min(3.0, 2.0 * d / (d - 2.0))),
        make_params(d, (2.0 * d * d + 1.0) / ((d - 1.0) * (d - 1.0))),
        make_params(d, 2.0 * d / (d - 2.0)), make_params_log(d)};
    for (const auto& params : plist) {
      for (int trial = 0; trial < 125; ++trial) {
        SphereFunction u = random_positive(g, rng, 0.5, 8);
        DeficitReport rep = gns_deficit(u, params);
        CHECK(rep.deficit >= -1e-9 * (rep.i + params.A));
      }
    }
  }
}

TEST_CASE("deficit scales exactly quadratically") {
  GridPtr g = build_grid(3, 48);
  SphereFunction u = sample(g, [](Real z) { return 1.0 + 0.2 * z - 0.1 * z * z; });
  for (const auto& params : {make_params(3, 3.0), make_params_log(3)}) {
    const Real base = gns_deficit(u, params).deficit;
    SphereFunction su(g, 0.7 * u.values);
    CHECK(gns_deficit(su, params).deficit ==
          doctest::Approx(0.49 * base).epsilon(1e-10));
  }
}

TEST_CASE("improved deficit dominates and stays nonnegative") {
  std::mt19937_64 rng(7);
  GridPtr g = build_grid(3, 48);
  for (Real p : {2.5, 3.0, 4.0}) {
    InterpolationParams params = make_params(3, p);
    FlowExponents exps = flow_exponents(params, Beta{beta_star(params)});
    ImprovedCurve curve = solve_phi(params, exps, 0.8 / (p - 2.0));
    for (int trial = 0; trial < 60; ++trial) {
      SphereFunction u = random_positive(g, rng, 0.4, 6);
      DeficitReport rep = gns_deficit(u, params, &curve);
      REQUIRE(rep.has_improved);
      CHECK(rep.improved_deficit <= rep.deficit + 1e-12);
      CHECK(rep.improved_deficit >= -1e-8 * (rep.i + params.A));
    }
  }
}

TEST_CASE("theta improvement dominates the plain right-hand side") {
  std::mt19937_64 rng(13);
  GridPtr g = build_grid(3, 48);
  InterpolationParams params = make_params(3, 3.0);
  // 1/theta at d=3, p=3: 1 + (2/5)^2 * 2 * (19/4 - 3) = 1.56.
  SphereFunction probe = sample(g, [](Real z) { return 1.0 + 0.2 * z; });
  ThetaImprovement ti = theta_improvement(probe, params);
  CHECK(1.0 / ti.theta == doctest::Approx(1.56).epsilon(1e-13));

  SphereFunction ones = constant_function(g, 1.0);
  ThetaImprovement t0 = theta_improvement(ones, params);
  CHECK(t0.lhs == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(t0.rhs_theta == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(t0.rhs_gns == doctest::Approx(0.0).epsilon(1e-12));

  for (int d : {3, 4, 5}) {
    GridPtr gd = build_grid(d, 40);
    InterpolationParams pp =
        make_params(d, 2.0 + 0.6 * ((2.0 * d * d + 1.0) / ((d - 1.0) * (d - 1.0)) - 2.0));
    for (int trial = 0; trial < 170; ++trial) {
      SphereFunction u = random_positive(gd, rng, 0.5, 8);
      ThetaImprovement t = theta_improvement(u, pp);
      CHECK(t.rhs_theta >= t.rhs_gns - 1e-11 * (1.0 + std::abs(t.rhs_gns)));
      CHECK(t.lhs >= t.rhs_theta - 1e-9 * (1.0 + t.lhs));
    }
  }
  CHECK_THROWS_AS(theta_improvement(probe, make_params(3, 5.0)),
                  invalid_parameter);
}

TEST_CASE("remainder functional orders") {
  GridPtr g = build_grid(3, 64);
  InterpolationParams params = make_params(3, 3.0);
  const Real kappa = 0.1;

  RemainderFunctional r0 =
      remainder_functional(constant_function(g, 1.0), params, kappa);
  CHECK(r0.lhs == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(r0.rhs == doctest::Approx(0.0).epsilon(1e-12));

  // u = 1 + eps z: both sides are O(eps^4); the rhs constant is
  // kappa (d/(d+1))^2 since |grad P1 u|^2 = eps^2 d/(d+1).
  for (Real eps : {1e-2, 5e-3}) {
    SphereFunction u = sample(g, [eps](Real z) { return 1.0 + eps * z; });
    RemainderFunctional rf = remainder_functional(u, params, kappa);
    const Real expected = kappa * std::pow(3.0 / 4.0 * eps * eps, 2.0);
    CHECK(rf.rhs == doctest::Approx(expected).epsilon(5e-3));
  }

  // u = 1 + eps C2: the degree-1 projection vanishes, rhs = kappa eps^2 lambda_2.
  const Real eps = 1e-3;
  SphereFunction c2 = basis_function(g, 2);
  SphereFunction u2(g, (1.0 + eps * c2.values.array()).matrix());
  RemainderFunctional rf2 = remainder_functional(u2, params, kappa);
  CHECK(rf2.rhs == doctest::Approx(kappa * eps * eps * 8.0).epsilon(1e-8));
}

TEST_CASE("cut decomposition and functionals") {
  GridPtr g = build_grid(6, 48);
  InterpolationParams params = make_params(6, 3.0);
  CutConstants cc;
  cc.gamma_cut = 0.5;
  cc.M = 2.0;
  cc.M_bar = 2.0;
  cc.eps0 = 0.2;
  cc.eps1 = 0.1;
  cc.eps2 = 0.1;
  cc.k0 = 1.0;
  cc.c_eps12 = 1.0;

  SphereFunction zero = constant_function(g, 0.0);
  CutFunctionals cf0 = cut_functionals(zero, cc, params);
  CHECK(cf0.I1 == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(cf0.I2 == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(cf0.I3 == doctest::Approx(0.0).epsilon(1e-12));

  // Constant below the first cut: r1 carries everything.
  SphereFunction low = constant_function(g, 0.25);
  CutFunctionals cfl = cut_functionals(low, cc, params);
  CHECK((cfl.r1.values.array() - 0.25).abs().maxCoeff() < 1e-14);
  CHECK(cfl.r2.values.cwiseAbs().maxCoeff() < 1e-14);
  CHECK(cfl.r3.values.cwiseAbs().maxCoeff() < 1e-14);

  // Constant between the cuts: piecewise definition oracle.
  const Real mid = cc.gamma_cut + 0.5 * (cc.M - cc.gamma_cut);
  CutFunctionals cfm = cut_functionals(constant_function(g, mid), cc, params);
  CHECK((cfm.r2.values.array() - 0.75).abs().maxCoeff() < 1e-14);
  CHECK(cfm.r3.values.cwiseAbs().maxCoeff() < 1e-14);

  // Pointwise reassembly for a sign-changing profile crossing all cuts.
  SphereFunction wild = sample(g, [](Real z) { return 3.0 * z + 1.2; });
  CutFunctionals cfw = cut_functionals(wild, cc, params);
  CHECK((cfw.r1.values + cfw.r2.values + cfw.r3.values - wild.values)
            .cwiseAbs()
            .maxCoeff() < 1e-13);

  CutConstants bad = cc;
  bad.M = 0.2;
  CHECK_THROWS_AS(cut_functionals(zero, bad, params), invalid_parameter);
  CHECK_THROWS_AS(cut_functionals(zero, cc, make_params(3, 3.0)),
                  invalid_parameter);
}

TEST_CASE("local stability ratio against eigenvalue references") {
  GridPtr g = build_grid(3, 64);
  InterpolationParams params = make_params(3, 6.0);
  const Real eps = 1e-3;

  SphereFunction c2 = basis_function(g, 2);
  SphereFunction r2(g, eps * c2.values);
  CHECK(local_stability_ratio(r2, params) ==
        doctest::Approx(4.0 / 7.0).epsilon(1e-3));

  SphereFunction c3 = basis_function(g, 3);
  SphereFunction r3(g, eps * c3.values);
  CHECK(local_stability_ratio(r3, params) ==
        doctest::Approx(12.0 / 15.75).epsilon(1e-3));

  SphereFunction mix(g, eps / std::sqrt(2.0) * (c2.values + c3.values));
  const Real ratio = local_stability_ratio(mix, params);
  CHECK(ratio > 4.0 / 7.0 - 1e-3);
  CHECK(ratio < 12.0 / 15.75 + 1e-3);

  SphereFunction bad = sample(g, [](Real z) { return z; });
  CHECK_THROWS_AS(local_stability_ratio(bad, params), precondition_error);
}
