#include <catch2/catch_amalgamated.hpp>

#include "landau/volterra.hpp"

using namespace landau;

namespace {

// Picard-iteration oracle on a fine grid: phi = H + K0 * phi solved by
// fixed-point iteration with trapezoidal convolution, fully independent of
// the library's marching scheme.
std::vector<complex> picard_solve(const VolterraProblem& p, int iters = 60) {
  std::size_t n = p.forcing.size();
  std::vector<complex> phi(p.forcing), next(n);
  for (int it = 0; it < iters; ++it) {
    for (std::size_t j = 0; j < n; ++j) {
      complex conv = 0.0;
      for (std::size_t m = 0; m <= j; ++m) {
        double w = (m == 0 || m == j) ? 0.5 : 1.0;
        conv += w * p.kernel[j - m] * phi[m];
      }
      next[j] = p.forcing[j] + p.dt * conv;
    }
    phi.swap(next);
  }
  return phi;
}

VolterraProblem test_problem(double kmag, double dt, double horizon) {
  auto eq = Equilibrium::maxwellian(3, 1.0, 1.0);
  auto pot = Potential::screened(1.0);
  vec3 k(kmag, 0.0, 0.0);
  k.dim = 3;
  return make_volterra_problem(eq, pot, k, dt, horizon, horizon,
                               make_forcing(forcing_family::a_weighted_bump, k),
                               0.0, 4);
}

}  // namespace

TEST_CASE("free-streaming kernel has the gaussian closed form") {
  auto eq = Equilibrium::maxwellian(3, 1.0, 1.0);
  auto pot = Potential::screened(1.0);
  // K0(1, |k|=1) = -f0_hat(1) W_hat(1) * 1 * 1 = -(2pi)^{-3} e^{-1/2} / 2.
  complex got = kernel_k0(eq, pot, 1.0, 1.0);
  CHECK(got.real() ==
        Catch::Approx(-std::pow(two_pi, -3.0) * std::exp(-0.5) / 2.0)
            .epsilon(1e-12));
  CHECK(got.imag() == 0.0);
  CHECK(kernel_k0(eq, pot, 0.0, 1.0) == complex(0.0, 0.0));
  CHECK(kernel_k0(eq, Potential::zero(), 1.0, 1.0) == complex(0.0, 0.0));
  CHECK_THROWS_AS(kernel_k0(eq, pot, -1.0, 1.0), domain_error);
}

TEST_CASE("time marching matches the Picard oracle") {
  auto p = test_problem(1.0, 0.05, 8.0);
  auto sol = solve_time(p);
  auto oracle = picard_solve(p);
  double worst = 0.0;
  for (std::size_t j = 0; j < sol.phi.size(); ++j)
    worst = std::max(worst, std::abs(sol.phi[j] - oracle[j]));
  CHECK(worst < 1e-12);
}

TEST_CASE("time marching converges at second order") {
  // Self-convergence against a dt/8 reference; the error should drop by
  // about 4 per halving.
  auto fine = test_problem(1.0, 0.0025, 10.0);
  auto ref = solve_time(fine);
  auto err_at = [&](double dt) {
    auto p = test_problem(1.0, dt, 10.0);
    auto s = solve_time(p);
    double e = 0.0;
    std::size_t stride = static_cast<std::size_t>(std::llround(dt / 0.0025));
    for (std::size_t j = 0; j < s.phi.size(); ++j)
      e = std::max(e, std::abs(s.phi[j] - ref.phi[j * stride]));
    return e;
  };
  double e1 = err_at(0.04), e2 = err_at(0.02);
  CHECK(e1 / e2 > 3.0);
  CHECK(e1 / e2 < 5.0);
}

TEST_CASE("frequency route agrees with time marching") {
  for (double kmag : {0.25, 1.0, 4.0}) {
    auto p = test_problem(kmag, 0.02, 20.0);
    auto st = solve_time(p);
    auto sf = solve_frequency(p);
    double gap = 0.0, ref = 0.0;
    for (std::size_t j = 0; j < st.phi.size(); ++j) {
      gap = std::max(gap, std::abs(st.phi[j] - sf.phi[j]));
      ref = std::max(ref, std::abs(st.phi[j]));
    }
    CHECK(gap < 1e-10 * ref);
  }
}

TEST_CASE("zero kernel returns the forcing unchanged") {
  auto eq = Equilibrium::zero(3);
  auto pot = Potential::screened(1.0);
  vec3 k(1.0, 0.0, 0.0);
  auto p = make_volterra_problem(
      eq, pot, k, 0.05, 5.0, 5.0,
      make_forcing(forcing_family::gaussian_t, k), 0.0, 4);
  auto s = solve_time(p);
  for (std::size_t j = 0; j < s.phi.size(); ++j)
    CHECK(std::abs(s.phi[j] - p.forcing[j]) < 1e-15);
  CHECK(s.cld_ratio == Catch::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("damping-constant sweep is finite and stable under refinement") {
  auto eq = Equilibrium::maxwellian(3, 1.0, 1.0);
  auto pot = Potential::screened(1.0);
  auto rep = damping_constant(eq, pot, forcing_family::a_weighted_bump, 0.0,
                              4, {0.25, 1.0, 4.0}, 0.05, 20.0);
  CHECK(rep.sup_ratio > 0.0);
  CHECK(rep.sup_ratio < 10.0);
  auto rep2 = damping_constant(eq, pot, forcing_family::a_weighted_bump, 0.0,
                               4, {0.25, 1.0, 4.0}, 0.025, 20.0);
  for (std::size_t i = 0; i < rep.ratios.size(); ++i)
    CHECK(rep.ratios[i] == Catch::Approx(rep2.ratios[i]).epsilon(1e-3));
}

TEST_CASE("problem validation catches malformed grids") {
  VolterraProblem p;
  p.dt = -1.0;
  CHECK_THROWS_AS(p.validate(), config_error);
  p.dt = 0.1;
  p.t_star = 1.0;
  p.forcing = {complex(1.0, 0.0)};
  p.kernel = {complex(0.0, 0.0)};
  CHECK_THROWS_AS(p.validate(), config_error);
}
