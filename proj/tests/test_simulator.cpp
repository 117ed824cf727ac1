#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "landau/simulator.hpp"
#include "landau/volterra.hpp"

using namespace landau;

namespace {

SimConfig base_config() {
  SimConfig sc;
  sc.d = 1;
  sc.l_box = 8.0 * pi;
  sc.n_z = 32;
  sc.n_v = 256;
  sc.v_max = 6.0;
  sc.dt = 0.05;
  sc.t_end = 10.0;
  sc.epsilon = 1e-3;
  sc.mode = sim_mode::linearized;
  sc.eq = Equilibrium::maxwellian(1, 1.0, 1.0);
  sc.pot = Potential::screened(1.0);
  SeedPulse p;
  p.amplitude = 1.0;
  p.k_center = vec3(0.5);
  p.eta_center = vec3(0.0);
  p.eta_center.dim = 1;
  p.k_width = 0.25;
  p.eta_width = 1.4;
  sc.seed.pulses.push_back(p);
  return sc;
}

}  // namespace

TEST_CASE("free transport reproduces the gliding seed exactly") {
  auto sc = base_config();
  sc.mode = sim_mode::free_transport;
  Simulator sim(sc);
  REQUIRE(sc.velocity_boundary_ok());
  auto hist = sim.run(20);
  for (const auto& s : hist.samples)
    for (std::size_t m = 0; m < s.rho_hat.size(); ++m) {
      if (s.out_of_band[m]) continue;
      vec3 k = sim.k_vector(m);
      complex want = seed_hat(sc.seed, sc.epsilon, k, s.t * k);
      CHECK(std::abs(s.rho_hat[m] - want) < 1e-12);
    }
}

TEST_CASE("density is a hermitian sequence (real physical density)") {
  auto sc = base_config();
  Simulator sim(sc);
  auto hist = sim.run(50);
  const auto& last = hist.samples.back();
  for (std::size_t m = 1; m < sc.n_z; ++m) {
    std::size_t mm = sc.n_z - m;  // index of -k
    if (last.out_of_band[m] || last.out_of_band[mm]) continue;
    CHECK(std::abs(last.rho_hat[mm] - std::conj(last.rho_hat[m])) < 1e-12);
  }
}

TEST_CASE("mean mode is conserved to machine precision") {
  for (auto mode : {sim_mode::linearized, sim_mode::nonlinear}) {
    auto sc = base_config();
    sc.mode = mode;
    sc.t_end = 5.0;
    Simulator sim(sc);
    auto hist = sim.run(10);
    complex m0 = hist.samples.front().rho_hat[0];
    for (const auto& s : hist.samples)
      CHECK(std::abs(s.rho_hat[0] - m0) < 1e-13);
  }
}

TEST_CASE("linearized density solves the per-mode volterra equation") {
  auto sc = base_config();
  Simulator sim(sc);
  std::size_t sample_every = 1;
  auto hist = sim.run(sample_every);

  // tracked mode k = 2 dk = 0.5
  std::size_t m = 2;
  vec3 k = sim.k_vector(m);
  auto p = make_volterra_problem(
      sc.eq, sc.pot, k, sc.dt, sc.t_end + 1.0, sc.t_end + sc.dt,
      [&](double t) { return seed_hat(sc.seed, sc.epsilon, k, t * k); }, 0.0,
      4);
  auto sol = solve_time(p);
  double worst = 0.0, scale = 0.0;
  for (const auto& s : hist.samples) {
    if (s.out_of_band[m]) continue;
    auto j = static_cast<std::size_t>(std::llround(s.t / sc.dt));
    worst = std::max(worst, std::abs(s.rho_hat[m] - sol.phi[j]));
    scale = std::max(scale, std::abs(sol.phi[j]));
  }
  CHECK(worst < 1e-3 * scale);
}

TEST_CASE("nonlinear correction is quadratically small in epsilon") {
  auto lin = base_config();
  lin.t_end = 4.0;
  auto non = lin;
  non.mode = sim_mode::nonlinear;
  Simulator sa(lin), sb(non);
  auto ha = sa.run(20), hb = sb.run(20);
  double diff = 0.0, size = 0.0;
  const auto& a = ha.samples.back();
  const auto& b = hb.samples.back();
  for (std::size_t m = 0; m < a.rho_hat.size(); ++m) {
    if (a.out_of_band[m] || b.out_of_band[m]) continue;
    diff = std::max(diff, std::abs(a.rho_hat[m] - b.rho_hat[m]));
    size = std::max(size, std::abs(a.rho_hat[m]));
  }
  CHECK(size > 0.0);
  // epsilon = 1e-3: the quadratic interaction sits ~epsilon below the
  // linear response
  CHECK(diff < 1e-2 * size);
}

TEST_CASE("velocity collocation round-trips") {
  auto sc = base_config();
  Simulator sim(sc);
  std::vector<complex> row(sc.n_v), c(sc.n_v);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (auto& x : row) x = complex(U(rng), U(rng));
  sim.velocity_collocation(row.data(), c);
  sim.velocity_decollocation(c);
  for (std::size_t n = 0; n < sc.n_v; ++n)
    CHECK(std::abs(c[n] - row[n]) < 1e-12);
}

TEST_CASE("out-of-band modes are flagged once kt leaves the eta lattice") {
  auto sc = base_config();
  sc.mode = sim_mode::free_transport;
  sc.t_end = 40.0;  // k_max * t_end far beyond eta_max
  Simulator sim(sc);
  auto hist = sim.run(100);
  CHECK(hist.out_of_band_fraction > 0.0);
  const auto& last = hist.samples.back();
  for (std::size_t m = 0; m < sc.n_z; ++m) {
    vec3 k = sim.k_vector(m);
    bool expect = std::abs(k[0] * last.t) > sim.config().eta_max();
    CHECK(static_cast<bool>(last.out_of_band[m]) == expect);
  }
}

TEST_CASE("configuration validation") {
  auto sc = base_config();
  sc.n_z = 33;
  CHECK_THROWS_AS(Simulator(sc), config_error);
  sc = base_config();
  sc.dt = 10.0;  // CFL violation
  CHECK_THROWS_AS(Simulator(sc), config_error);
  sc = base_config();
  sc.eq = Equilibrium::maxwellian(2, 1.0, 1.0);
  CHECK_THROWS_AS(Simulator(sc), config_error);
  sc = base_config();
  sc.mode = sim_mode::nonlinear;
  sc.d = 2;
  sc.eq = Equilibrium::maxwellian(2, 1.0, 1.0);
  CHECK_THROWS_AS(Simulator(sc), config_error);
  sc = base_config();
  sc.seed.pulses[0].eta_width = 0.5;  // slow gaussian tail at v_max
  CHECK_FALSE(sc.velocity_boundary_ok());
}

TEST_CASE("scattering report on a damped linearized run") {
  auto sc = base_config();
  sc.t_end = 20.0;
  Simulator sim(sc);
  auto hist = sim.run(10);
  auto rep = scattering_state(hist, sim.final_state(), sc);
  CHECK(rep.h_inf.size() == sim.final_state().g_hat.size());
  CHECK(rep.tail_bound >= 0.0);
  CHECK(std::isfinite(rep.tail_bound));
}
