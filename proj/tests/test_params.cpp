#include <doctest.h>

#include <cmath>

#include "ineq/errors.hpp"
#include "ineq/params.hpp"

using namespace ineq;

TEST_CASE("derived exponents at d = 3") {
  InterpolationParams params = make_params(3, 4.0);
  CHECK(params.two_star == doctest::Approx(6.0));
  CHECK(params.two_sharp == doctest::Approx(4.75));
  CHECK(params.A == doctest::Approx(0.75));
  // S_3 = (3/4)(2 pi^2)^{2/3} = 3 (pi/2)^{4/3}.
  const Real s3 = 3.0 * std::pow(kPi / 2.0, 4.0 / 3.0);
  CHECK(params.S_d == doctest::Approx(s3).epsilon(1e-13));
  CHECK(params.sphere_volume == doctest::Approx(2.0 * kPi * kPi).epsilon(1e-13));
}

TEST_CASE("exponent ordering 2 < 2# < 2* for d >= 3") {
  for (int d = 3; d <= 12; ++d) {
    InterpolationParams params = make_params(d, 2.5 < 2.0 * d / (d - 2.0)
                                                    ? 2.5
                                                    : 2.0 * d / (d - 2.0));
    CHECK(params.two_sharp > 2.0);
    CHECK(params.two_sharp < params.two_star);
  }
}

TEST_CASE("p validation") {
  CHECK_THROWS_AS(make_params(3, 0.5), invalid_parameter);
  CHECK_THROWS_AS(make_params(3, 6.5), invalid_parameter);
  CHECK_THROWS_AS(make_params(2, 3.0), invalid_parameter);
  CHECK(make_params(3, 2.0).log_case);
  CHECK(make_params_log(4).log_case);
  CHECK(make_params(3, 6.0).critical());
}

TEST_CASE("gamma formula, direct evaluation at d=3, p=3, beta=1") {
  InterpolationParams params = make_params(3, 3.0);
  FlowExponents exps = flow_exponents(params, Beta{1.0});
  CHECK(exps.kappa == doctest::Approx(2.0));
  CHECK(exps.gamma == doctest::Approx(14.0 / 25.0).epsilon(1e-14));
  CHECK(exps.m == doctest::Approx(1.0));
}

TEST_CASE("m-range formula and beta/m maps") {
  InterpolationParams params = make_params(3, 3.0);
  const Real disc = std::sqrt(18.0);
  CHECK(m_minus(params) == doctest::Approx((11.0 - disc) / 15.0).epsilon(1e-14));
  CHECK(m_plus(params) == doctest::Approx((11.0 + disc) / 15.0).epsilon(1e-14));

  // p = 2*: the interval collapses to (d-1)/d.
  for (int d : {3, 4, 5, 6}) {
    InterpolationParams critical = make_params(d, 2.0 * d / (d - 2.0));
    CHECK(m_minus(critical) == doctest::Approx((d - 1.0) / d).epsilon(1e-12));
    CHECK(m_plus(critical) == doctest::Approx((d - 1.0) / d).epsilon(1e-12));
  }

  // Round trips.
  for (Real m : {0.5, 0.7, 1.0}) {
    const Real beta = beta_of_m(params, m);
    CHECK(m_of_beta(params, beta) == doctest::Approx(m).epsilon(1e-14));
  }
}

TEST_CASE("admissible interval maps inside the gamma >= 0 region") {
  // The substitution beta > 0 charts only m > 1 - 2/p; sample the part of
  // [m-, m+] it covers.
  for (int d : {3, 4, 5, 6}) {
    for (Real p : {1.4, 2.2, 3.0, 5.0}) {
      if (p >= 2.0 * d / (d - 2.0)) continue;
      InterpolationParams params = make_params(d, p);
      const Real lo = std::max(m_minus(params), 1.0 - 2.0 / p + 0.02);
      const Real hi = m_plus(params);
      for (Real t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        const Real m = lo + t * (hi - lo);
        CHECK(gamma_of_beta(params, beta_of_m(params, m)) >= -1e-10);
      }
    }
  }
}

TEST_CASE("beta_star maximizes the improvement coefficient gamma/beta^2") {
  for (int d : {3, 4, 5}) {
    for (Real p : {1.5, 2.2, 3.0, 4.5, 5.9}) {
      if (p >= 2.0 * d / (d - 2.0)) continue;
      InterpolationParams params = make_params(d, p);
      const Real bs = beta_star(params);
      const Real m = m_of_beta(params, bs);
      CHECK(m >= m_minus(params) - 1e-12);
      CHECK(m <= m_plus(params) + 1e-12);
      const Real g = gamma_of_beta(params, bs);
      CHECK(g > 0.0);
      FlowExponents exps = flow_exponents(params, Beta{bs});
      CHECK(exps.delta >= -1e-14);
      // Local maximality of gamma(beta)/beta^2 unless the delta cap binds.
      if (p <= 2.0 || p >= 4.0 || bs < 2.0 / (4.0 - p) - 1e-12) {
        auto coeff = [&](Real b) { return gamma_of_beta(params, b) / (b * b); };
        CHECK(coeff(bs) >= coeff(bs * 1.01) - 1e-12);
        CHECK(coeff(bs) >= coeff(bs * 0.99) - 1e-12);
      }
    }
  }
}

TEST_CASE("log case exponents") {
  InterpolationParams params = make_params_log(4);
  FlowExponents exps = flow_exponents(params, Beta{beta_star(params)});
  CHECK(exps.kappa == doctest::Approx(1.0));  // beta(p-2)+1 at p = 2
  CHECK(exps.delta == doctest::Approx(1.0));
  CHECK(exps.beta_star == doctest::Approx(6.0 / 5.0));
  // m bounds at p = 2: (d+1 +- sqrt(d)) / (d+2).
  CHECK(exps.m_minus == doctest::Approx((5.0 - 2.0) / 6.0).epsilon(1e-13));
  CHECK(exps.m_plus == doctest::Approx((5.0 + 2.0) / 6.0).epsilon(1e-13));
}

TEST_CASE("degenerate parametrizations are rejected") {
  InterpolationParams params = make_params(3, 3.0);
  CHECK_THROWS_AS(flow_exponents(params, Beta{-1.0}), invalid_parameter);
  CHECK_THROWS_AS(beta_star(make_params(3, 6.0)), invalid_parameter);
  CHECK_THROWS_AS(beta_of_m(params, -2.0), invalid_parameter);
}
