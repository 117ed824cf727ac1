#include <catch2/catch_amalgamated.hpp>

#include "landau/echo.hpp"

using namespace landau;

namespace {

EchoParams params(double beta) {
  EchoParams p;
  p.beta = beta;
  p.zeta = 0.9;
  p.prefactor = 1.0;
  p.t_star = 40.0;
  return p;
}

}  // namespace

TEST_CASE("kernel bound evaluates the stated formula") {
  auto par = params(12.0);
  vec3 k(2.0, 0.0, 0.0), l(1.0, 1.0, 0.0);
  double t = 3.0, tau = 1.0;
  double br2 = 1.0 + 1.0 + 1.0 + (6.0 - 1.0) * (6.0 - 1.0) + 1.0;
  double want = std::sqrt(2.0) * std::sqrt(std::sqrt(2.0)) * std::sqrt(2.0) /
                (3.0 * std::pow(br2, 6.0));
  CHECK(kernel_bound(par, t, tau, k, l) ==
        Catch::Approx(want).epsilon(1e-12));
  CHECK_THROWS_AS(kernel_bound(par, 1.0, 2.0, k, l), domain_error);
}

TEST_CASE("kernel bound is monotone decreasing in beta") {
  // The paired bracket is >= 1, so a larger exponent can only shrink it.
  vec3 k(1.0, 0.0, 0.0), l(0.5, 2.0, 0.0);
  double prev = kernel_bound(params(4.0), 5.0, 2.0, k, l);
  for (double beta : {8.0, 12.0, 20.0}) {
    double cur = kernel_bound(params(beta), 5.0, 2.0, k, l);
    CHECK(cur <= prev);
    prev = cur;
  }
}

TEST_CASE("resonant radius scalings") {
  auto par = params(12.0);
  // (1+tau)^{-zeta} scaling in tau and |k|^{1/beta} scaling in k.
  double r0 = resonant_radius(par, 0.0, 1.0);
  CHECK(r0 == Catch::Approx(1.0));
  CHECK(resonant_radius(par, 1.0, 1.0) ==
        Catch::Approx(std::pow(2.0, -0.9)).epsilon(1e-12));
  CHECK(resonant_radius(par, 0.0, 16.0) ==
        Catch::Approx(std::pow(16.0, 1.0 / 12.0)).epsilon(1e-12));
  vec3 k(1.0, 0.0, 0.0);
  CHECK(resonant_region(par, 0.0, k, vec3(5.0, 0.5, 0.0)));
  CHECK_FALSE(resonant_region(par, 0.0, k, vec3(5.0, 1.5, 0.0)));
}

TEST_CASE("echo time prediction is the stationary-phase time") {
  vec3 k(1.0, 0.0, 0.0);
  auto t = echo_time_prediction(vec3(2.0, 0.0, 0.0), 10.0, k);
  REQUIRE(t.has_value());
  CHECK(*t == Catch::Approx(20.0));
  // anti-aligned or sub-causal alignments produce no echo
  CHECK_FALSE(echo_time_prediction(vec3(-2.0, 0.0, 0.0), 10.0, k).has_value());
  CHECK_FALSE(echo_time_prediction(vec3(0.5, 0.0, 0.0), 10.0, k).has_value());
  CHECK_THROWS_AS(echo_time_prediction(vec3(1.0, 0.0, 0.0), 1.0,
                                       vec3(0.0, 0.0, 0.0)),
                  domain_error);
}

TEST_CASE("row sums: decomposed quadrature matches the direct oracle") {
  for (double beta : {12.0, 3.0}) {
    auto par = params(beta);
    for (double t : {10.0})
      for (double km : {0.25, 1.0, 4.0}) {
        double dec = row_sum(par, t, km, schur_method::decomposed, 1e-5);
        double ora = row_sum(par, t, km, schur_method::oracle, 1e-5);
        CHECK(std::abs(dec - ora) < 1e-3 * std::max(ora, 1e-300));
      }
  }
}

TEST_CASE("row zones add up to the total") {
  auto par = params(12.0);
  auto z = row_sum_zones(par, 20.0, 1.0, schur_method::decomposed, 1e-5);
  CHECK(z.total ==
        Catch::Approx(z.early + z.resonant + z.nonresonant).epsilon(1e-12));
  CHECK(z.early >= 0.0);
  CHECK(z.resonant >= 0.0);
  CHECK(z.nonresonant >= 0.0);
}

TEST_CASE("column sums: decomposed quadrature matches the direct oracle") {
  for (double beta : {12.0, 3.0}) {
    auto par = params(beta);
    par.t_star = 20.0;
    double dec = column_sum(par, 1.0, 1.0, schur_method::decomposed, 1e-5,
                            20.0);
    double ora = column_sum(par, 1.0, 1.0, schur_method::oracle, 1e-5, 20.0);
    CHECK(std::abs(dec - ora) < 1e-3 * std::max(ora, 1e-300));
  }
}

TEST_CASE("sums are linear in the kernel prefactor") {
  auto par = params(12.0);
  auto par2 = par;
  par2.prefactor = 3.0;
  double r1 = row_sum(par, 10.0, 1.0, schur_method::decomposed, 1e-5);
  double r2 = row_sum(par2, 10.0, 1.0, schur_method::decomposed, 1e-5);
  CHECK(r2 == Catch::Approx(3.0 * r1).epsilon(1e-10));
  double c1 = column_sum(par, 1.0, 1.0, schur_method::decomposed, 1e-5, 10.0);
  double c2 = column_sum(par2, 1.0, 1.0, schur_method::decomposed, 1e-5, 10.0);
  CHECK(c2 == Catch::Approx(3.0 * c1).epsilon(1e-10));
}

TEST_CASE("lattice row sum matches a brute-force reimplementation") {
  auto par = params(12.0);
  vec3 k(1.0, 0.0, 0.0);
  auto got = lattice_row_sum(par, 5.0, k, 3, 1e-7);

  // independent re-sum with plain midpoint tau quadrature
  double want = 0.0, res = 0.0;
  for (int a = -3; a <= 3; ++a)
    for (int b = -3; b <= 3; ++b)
      for (int c = -3; c <= 3; ++c) {
        if (a == 0 && b == 0 && c == 0) continue;
        vec3 l(1.0 * a, 1.0 * b, 1.0 * c);
        if (l.norm() > 3.0 + 1e-12) continue;
        int n = 4000;
        double h = 5.0 / n, term = 0.0;
        for (int i = 0; i < n; ++i)
          term += h * kernel_bound(par, 5.0, h * (i + 0.5), k, l);
        want += term;
        if (b == 0 && c == 0) res += term;
      }
  CHECK(got.value == Catch::Approx(want).epsilon(1e-5));
  CHECK(got.resonant == Catch::Approx(res).epsilon(1e-5));
  CHECK(got.tail_bound > 0.0);
  CHECK(std::isfinite(got.tail_bound));
}

TEST_CASE("lattice tail bound is infinite when the shell sum diverges") {
  auto par = params(3.0);  // beta <= 7/2: no summable shell majorant
  auto got = lattice_row_sum(par, 2.0, vec3(1.0, 0.0, 0.0), 2, 1e-5);
  CHECK(std::isinf(got.tail_bound));
}

TEST_CASE("horizon sweep dichotomy on a reduced schedule") {
  // Bounded regime: ratios settle at 1. Divergent regime: the column part
  // keeps growing as the sup domain is exhausted.
  auto good = schur_horizon_sweep(params(12.0), {5.0, 10.0, 20.0},
                                  {0.25, 1.0}, 1.0, 1.0, 1e-3);
  CHECK(good.stabilized);
  CHECK_FALSE(good.growing);
  CHECK_FALSE(good.regime_flagged);

  auto bad = schur_horizon_sweep(params(3.0), {5.0, 10.0, 20.0},
                                 {0.25, 1.0}, 1.0, 1.0, 1e-3);
  CHECK_FALSE(bad.stabilized);
  CHECK(bad.growing);
  CHECK(bad.regime_flagged);
}

TEST_CASE("parameter validation") {
  auto par = params(12.0);
  CHECK_NOTHROW(par.validate());
  par.zeta = 0.5;
  CHECK_THROWS_AS(par.validate(), config_error);
  par = params(3.0);
  CHECK_NOTHROW(par.validate(false));
  CHECK_THROWS_AS(par.validate(true), config_error);
}
