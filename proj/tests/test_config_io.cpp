#include <cstdio>
#include <filesystem>
#include <fstream>

#include <catch2/catch_amalgamated.hpp>

#include "landau/config.hpp"
#include "landau/io.hpp"
#include "landau/simulator.hpp"

using namespace landau;
namespace fs = std::filesystem;

TEST_CASE("config parsing: sections, types, lists and defaults") {
  auto cfg = Config::parse(
      "# comment\n"
      "[model]\n"
      "equilibrium = maxwellian\n"
      "theta = 1.5\n"
      "dim = 3\n"
      "flag = true\n"
      "[echo]\n"
      "kmags = 0.25, 1, 4\n");
  CHECK(cfg.has_section("model"));
  CHECK_FALSE(cfg.has_section("volterra"));
  CHECK(cfg.get_string("model", "equilibrium") == "maxwellian");
  CHECK(cfg.get_double("model", "theta") == Catch::Approx(1.5));
  CHECK(cfg.get_int("model", "dim") == 3);
  CHECK(cfg.get_bool("model", "flag", false));
  CHECK(cfg.get_double("model", "missing", 7.0) == 7.0);
  auto l = cfg.get_list("echo", "kmags");
  REQUIRE(l.size() == 3);
  CHECK(l[1] == 1.0);
  CHECK_NOTHROW(cfg.finish());
}

TEST_CASE("strict parsing rejects unread keys and malformed values") {
  auto cfg = Config::parse("[model]\ntheta = 1.0\nstray = 3\n");
  (void)cfg.get_double("model", "theta");
  CHECK_THROWS_AS(cfg.finish(), config_error);

  auto bad = Config::parse("[model]\ntheta = abc\n");
  CHECK_THROWS_AS(bad.get_double("model", "theta"), config_error);
}

TEST_CASE("entries expose the resolved key-value map") {
  auto cfg = Config::parse("[a]\nx = 1\n[b]\ny = hello\n");
  const auto& e = cfg.entries();
  CHECK(e.at("a.x") == "1");
  CHECK(e.at("b.y") == "hello");
}

TEST_CASE("atomic write round-trips and replaces content") {
  auto p = fs::temp_directory_path() / "landau_test_atomic.txt";
  atomic_write(p, "first\n");
  atomic_write(p, "second\n");
  std::ifstream in(p);
  std::string s((std::istreambuf_iterator<char>(in)),
                std::istreambuf_iterator<char>());
  CHECK(s == "second\n");
  fs::remove(p);
}

TEST_CASE("csv writer emits full-precision rows") {
  CsvWriter w({"a", "b"});
  w.row({1.0, 0.1});
  auto s = w.str();
  CHECK(s.find("a,b") == 0);
  // 0.1 printed with %.17g survives a parse round trip
  auto pos = s.find(",", s.find("\n"));
  double back = std::stod(s.substr(pos + 1));
  CHECK(back == 0.1);
}

TEST_CASE("snapshot round trip preserves the state bit-for-bit") {
  SimConfig sc;
  sc.d = 1;
  sc.n_z = 8;
  sc.n_v = 16;
  sc.l_box = 4.0 * pi;
  sc.v_max = 5.0;
  sc.dt = 0.05;
  sc.t_end = 1.0;
  sc.epsilon = 1e-3;
  sc.eq = Equilibrium::maxwellian(1, 1.0, 1.0);
  SeedPulse p;
  p.k_center = vec3(1.0);
  p.eta_center = vec3(0.0);
  p.k_width = 0.5;
  p.eta_width = 1.6;
  sc.seed.pulses.push_back(p);

  Simulator sim(sc);
  auto st = sim.initial_state();
  st.t = 0.875;
  auto path = fs::temp_directory_path() / "landau_test_snap.bin";
  write_snapshot(path, sc, st);
  auto snap = read_snapshot(path);
  CHECK(snap.d == sc.d);
  CHECK(snap.n_z == sc.n_z);
  CHECK(snap.n_v == sc.n_v);
  CHECK(snap.l_box == sc.l_box);
  CHECK(snap.v_max == sc.v_max);
  CHECK(snap.state.t == st.t);
  REQUIRE(snap.state.g_hat.size() == st.g_hat.size());
  for (std::size_t i = 0; i < st.g_hat.size(); ++i)
    CHECK(snap.state.g_hat[i] == st.g_hat[i]);
  fs::remove(path);

  CHECK_THROWS_AS(read_snapshot(fs::temp_directory_path() /
                                "landau_no_such_snapshot.bin"),
                  error);
}
