#include <catch2/catch_amalgamated.hpp>

#include "landau/diagnostics.hpp"

using namespace landau;

namespace {

SimConfig small_config(double epsilon = 1e-3) {
  SimConfig sc;
  sc.d = 1;
  sc.l_box = 8.0 * pi;
  sc.n_z = 16;
  sc.n_v = 128;
  sc.v_max = 6.0;
  sc.dt = 0.1;
  sc.t_end = 12.0;
  sc.epsilon = epsilon;
  sc.mode = sim_mode::linearized;
  sc.eq = Equilibrium::maxwellian(1, 1.0, 1.0);
  sc.pot = Potential::screened(1.0);
  SeedPulse p;
  p.k_center = vec3(0.5);
  p.eta_center = vec3(0.0);
  p.k_width = 0.25;
  p.eta_width = 1.4;
  sc.seed.pulses.push_back(p);
  return sc;
}

}  // namespace

TEST_CASE("weight multipliers evaluate their formulas") {
  WeightSpec w{WeightSpec::kind_t::sobolev, 4.0, 0.1, true};
  double br = kkt_bracket(2.0, 3.0);
  CHECK(a_multiplier(w, 3.0, 2.0) ==
        Catch::Approx(std::sqrt(2.0) * std::pow(br, 4.0)).epsilon(1e-13));
  w.kind = WeightSpec::kind_t::analytic;
  w.lambda = 0.05;
  CHECK(a_multiplier(w, 3.0, 2.0) ==
        Catch::Approx(std::sqrt(2.0) * std::exp(0.05 * br)).epsilon(1e-13));
  w.half_power = false;
  CHECK(a_multiplier(w, 3.0, 2.0) ==
        Catch::Approx(std::exp(0.05 * br)).epsilon(1e-13));
}

TEST_CASE("decay fit recovers synthetic power and exponential laws") {
  std::vector<double> ts, pw, ex;
  for (int i = 1; i <= 200; ++i) {
    double t = 0.5 * i;
    ts.push_back(t);
    pw.push_back(2.0 * std::pow(jbracket(t), -1.5));
    ex.push_back(3.0 * std::exp(-0.25 * t));
  }
  auto fp = decay_fit(ts, pw, decay_model::power);
  REQUIRE(fp.has_value());
  CHECK(fp->rate == Catch::Approx(-1.5).margin(1e-10));
  CHECK(fp->residual < 1e-10);
  auto fe = decay_fit(ts, ex, decay_model::exponential);
  REQUIRE(fe.has_value());
  CHECK(fe->rate == Catch::Approx(-0.25).margin(1e-12));

  // Model selection: the residual prefers the generating law.
  auto fp_on_ex = decay_fit(ts, ex, decay_model::power);
  REQUIRE(fp_on_ex.has_value());
  CHECK(fe->residual < fp_on_ex->residual);

  // Degenerate inputs.
  CHECK_FALSE(decay_fit({1.0}, {0.5}, decay_model::power).has_value());
  CHECK_FALSE(decay_fit({1.0, 2.0}, {0.0, 0.0},
                        decay_model::power).has_value());
}

TEST_CASE("envelope constant is the least admissible bound") {
  std::vector<double> ts{1.0, 2.0, 4.0};
  double km = 1.0, s = 4.0;
  // construct y so the bound is saturated exactly at t = 2 with C = 7
  std::vector<double> ys;
  for (double t : ts)
    ys.push_back(((t == 2.0) ? 7.0 : 3.0) * std::pow(kkt_bracket(km, t), -s));
  CHECK(envelope_constant(ts, ys, km, s) == Catch::Approx(7.0).epsilon(1e-13));
}

TEST_CASE("initial data norms: homogeneity and refinement stability") {
  SeedSpec seed = small_config().seed;
  auto n1 = initial_data_norms(seed, 1e-3, 5.0, 1);
  auto n2 = initial_data_norms(seed, 2e-3, 5.0, 1);
  // both norms are linear in epsilon
  CHECK(n2.l2t_l2k == Catch::Approx(2.0 * n1.l2t_l2k).epsilon(1e-12));
  CHECK(n2.linf_l2t == Catch::Approx(2.0 * n1.linf_l2t).epsilon(1e-12));
  // refined quadrature agrees (smooth gaussian integrand)
  auto n4 = initial_data_norms(seed, 1e-3, 5.0, 4);
  CHECK(n1.l2t_l2k == Catch::Approx(n4.l2t_l2k).epsilon(1e-6));
  CHECK_THROWS_AS(initial_data_norms(seed, 1e-3, 3.0), config_error);
}

TEST_CASE("initial data norms against a brute-force Riemann oracle") {
  SeedSpec seed = small_config().seed;
  double eps = 1e-3, s = 5.0;
  auto got = initial_data_norms(seed, eps, s, 2);
  // midpoint rule over (k, u), crude but independent
  double total = 0.0;
  int nk = 900, nu = 900;
  double k_hi = 0.5 + 10.0 * 0.25, u_hi = 10.0 * 1.4;
  double hk = k_hi / nk, hu = u_hi / nu;
  for (int i = 0; i < nk; ++i) {
    double k = hk * (i + 0.5);
    for (int j = 0; j < nu; ++j) {
      double u = hu * (j + 0.5);
      double h = std::abs(seed_hat(seed, eps, vec3(k), vec3(u)));
      total += 2.0 * hk * hu * std::pow(jbracket2(k, u), 2.0 * s) * h * h;
    }
  }
  CHECK(got.l2t_l2k == Catch::Approx(std::sqrt(total)).epsilon(1e-4));
}

TEST_CASE("bootstrap controls scale quadratically with epsilon") {
  auto sc1 = small_config(1e-3);
  auto sc2 = small_config(2e-3);
  BootstrapSpec spec;
  spec.epsilon = 1e-3;
  Simulator a(sc1), b(sc2);
  auto ha = a.run(10);
  auto sa = a.final_state();
  auto hb = b.run(10);
  auto sb = b.final_state();
  auto ra = bootstrap_norms(a, {sa}, ha, spec);
  auto rb = bootstrap_norms(b, {sb}, hb, spec);
  // quadratic controls x4, the pointwise one x2 (linear in the state)
  for (int i : {0, 1, 2})
    CHECK(rb.controls[i] ==
          Catch::Approx(4.0 * ra.controls[i]).epsilon(1e-10));
  CHECK(rb.controls[3] ==
        Catch::Approx(2.0 * ra.controls[3]).epsilon(1e-10));
  CHECK(rb.controls[4] ==
        Catch::Approx(2.0 * ra.controls[4]).epsilon(1e-10));
  CHECK(ra.time_quadrature_error >= 0.0);
  for (double c : ra.controls) CHECK(std::isfinite(c));
}

TEST_CASE("bootstrap spec validation") {
  BootstrapSpec spec;
  CHECK_NOTHROW(spec.validate());
  spec.sigma2 = 5.0;
  CHECK_THROWS_AS(spec.validate(), config_error);
  spec = BootstrapSpec{};
  spec.delta = 0.9;
  CHECK_THROWS_AS(spec.validate(), config_error);
}

TEST_CASE("dispersive decay check fits the weighted density sum") {
  auto sc = small_config();
  Simulator sim(sc);
  auto hist = sim.run(5);
  auto res = dispersive_decay_check(sim, hist, 0.0, 0.0, 11.0);
  CHECK_FALSE(res.empty);
  CHECK(res.n_used >= 8);
  CHECK(std::isfinite(res.exponent));
  CHECK_THROWS_AS(dispersive_decay_check(sim, hist, 20.0, 0.0, 11.0),
                  config_error);
}
