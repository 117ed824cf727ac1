// Experiment front door: config-driven subcommands over the landau library.
// Every run writes a manifest echoing the resolved configuration so that a
// single-threaded rerun reproduces the artifacts byte for byte.

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "landau/landau.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace landau;

namespace {

constexpr const char* kVersionTag = "landau-toolkit 1.0.0";

struct CommonOpts {
  std::string config_path;
  std::string out_dir = ".";
  unsigned threads = 1;
  bool strict_regime = false;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_manifest(const CommonOpts& opts, const std::string& subcommand,
                    const Config& cfg, json extra = json::object()) {
  json m;
  m["version"] = kVersionTag;
  m["subcommand"] = subcommand;
  m["threads"] = opts.threads;
  m["strict_regime"] = opts.strict_regime;
  json resolved = json::object();
  for (const auto& [key, value] : cfg.entries()) resolved[key] = value;
  m["config"] = resolved;
  for (auto& [k, v] : extra.items()) m[k] = v;
  atomic_write(fs::path(opts.out_dir) / "manifest.json", m.dump(2) + "\n");
}

Equilibrium parse_equilibrium(Config& cfg) {
  if (!cfg.has_section("model")) throw config_error("missing section: model");
  std::string kind = cfg.get_string("model", "equilibrium", "maxwellian");
  int dim = static_cast<int>(cfg.get_int("model", "dim", 3));
  if (kind == "maxwellian") {
    double theta = cfg.get_double("model", "theta", 1.0);
    double mass = cfg.get_double("model", "mass", 1.0);
    return Equilibrium::maxwellian(dim, theta, mass);
  }
  if (kind == "zero") return Equilibrium::zero(dim);
  if (kind == "tabulated") {
    // three whitespace-separated columns: r, f0(r), f0'(r)
    std::string path = cfg.get_string("model", "equilibrium_table");
    std::ifstream in(path);
    if (!in) throw config_error("cannot open equilibrium table: " + path);
    radial_table tab;
    std::string line;
    while (std::getline(in, line)) {
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      std::istringstream ls(line);
      double a, b, c;
      if (ls >> a >> b >> c) {
        tab.radius.push_back(a);
        tab.value.push_back(b);
        tab.derivative.push_back(c);
      }
    }
    return Equilibrium::tabulated(dim, std::move(tab));
  }
  throw config_error("model.equilibrium: unknown kind " + kind);
}

Potential parse_potential(Config& cfg) {
  std::string kind = cfg.get_string("model", "potential", "screened");
  if (kind == "screened")
    return Potential::screened(cfg.get_double("model", "alpha", 1.0));
  if (kind == "zero") return Potential::zero();
  throw config_error("model.potential: unknown kind " + kind);
}

SeedSpec parse_seed(Config& cfg, int d) {
  SeedSpec seed;
  if (!cfg.has_section("seed")) return seed;
  auto amps = cfg.get_list("seed", "amplitudes");
  auto kcs = cfg.get_list("seed", "k_centers");
  auto ecs = cfg.get_list("seed", "eta_centers");
  auto kws = cfg.get_list("seed", "k_widths");
  auto ews = cfg.get_list("seed", "eta_widths");
  if (amps.size() != kcs.size() || amps.size() != ecs.size() ||
      amps.size() != kws.size() || amps.size() != ews.size())
    throw config_error("seed: pulse lists must have equal length");
  for (std::size_t i = 0; i < amps.size(); ++i) {
    SeedPulse p;
    p.amplitude = amps[i];
    p.k_center = vec3(kcs[i]);
    p.k_center.dim = d;
    p.eta_center = vec3(ecs[i]);
    p.eta_center.dim = d;
    p.k_width = kws[i];
    p.eta_width = ews[i];
    seed.pulses.push_back(p);
  }
  return seed;
}

int run_stability(const CommonOpts& opts, Config& cfg) {
  auto eq = parse_equilibrium(cfg);
  auto pot = parse_potential(cfg);
  auto kmags = cfg.get_list("stability", "kmags", {0.25, 1.0, 4.0});
  int ratios = static_cast<int>(cfg.get_int("stability", "ratios_per_k", 96));
  double m = cfg.get_double("stability", "tail_cut_m", 0.05);
  double M = cfg.get_double("stability", "tail_cut_M", 50.0);
  auto grid = DispersionGrid::standard(kmags, ratios, m, M);
  grid.time_quadrature.horizon =
      cfg.get_double("stability", "quadrature_horizon", 0.0);
  cfg.finish();

  auto rep = stability_margin(eq, pot, grid, opts.threads);

  CsvWriter csv({"omega", "kmag", "dist_to_one", "re_L", "im_L"});
  for (double km : grid.kmag_samples)
    for (double om : grid.omega_samples) {
      double r = om / km;
      if (r < grid.tail_cut_m || r > grid.tail_cut_M) continue;
      complex L = dispersion_time(eq, pot, om, km,
                                  grid.time_quadrature.horizon);
      csv.row({om, km, std::abs(L - complex(1.0, 0.0)), L.real(), L.imag()});
    }
  atomic_write(fs::path(opts.out_dir) / "stability_grid.csv", csv.str());

  json rj;
  rj["kappa"] = rep.kappa;
  rj["kappa_certified"] = rep.kappa_certified;
  rj["argmin_omega"] = rep.argmin_omega;
  rj["argmin_kmag"] = rep.argmin_kmag;
  rj["method_agreement"] = rep.method_agreement;
  rj["winding_ok"] = rep.winding_ok;
  rj["cross_validation_ok"] = rep.cross_validation_ok;
  rj["unstable_flag"] = rep.unstable_flag;
  rj["small_data_margin"] = rep.small_data_margin;
  rj["convention_constant"] = rep.convention_constant;
  atomic_write(fs::path(opts.out_dir) / "stability.json", rj.dump(2) + "\n");
  write_manifest(opts, "stability", cfg);
  return 0;
}

int run_volterra(const CommonOpts& opts, Config& cfg) {
  auto eq = parse_equilibrium(cfg);
  auto pot = parse_potential(cfg);
  auto kmags = cfg.get_list("volterra", "kmags", {0.25, 1.0, 4.0});
  double dt = cfg.get_double("volterra", "dt", 0.01);
  double t_star = cfg.get_double("volterra", "t_star", 40.0);
  double walpha = cfg.get_double("volterra", "weight_alpha", 0.0);
  int ws = static_cast<int>(cfg.get_int("volterra", "weight_s", 4));
  std::string fam_name =
      cfg.get_string("volterra", "forcing", "a_weighted_bump");
  forcing_family fam;
  if (fam_name == "a_weighted_bump")
    fam = forcing_family::a_weighted_bump;
  else if (fam_name == "gaussian_t")
    fam = forcing_family::gaussian_t;
  else
    throw config_error("volterra.forcing: unknown family " + fam_name);
  cfg.finish();

  json summary;
  summary["per_k"] = json::array();
  double sup = 0.0, worst_route_gap = 0.0;
  for (std::size_t i = 0; i < kmags.size(); ++i) {
    vec3 k(kmags[i], 0.0, 0.0);
    k.dim = eq.dim;
    auto p = make_volterra_problem(eq, pot, k, dt, t_star, t_star,
                                   make_forcing(fam, k), walpha, ws);
    auto st = solve_time(p);
    auto sf = solve_frequency(p);
    double gap = 0.0, ref = 0.0;
    for (std::size_t j = 0; j < st.phi.size(); ++j) {
      gap = std::max(gap, std::abs(st.phi[j] - sf.phi[j]));
      ref = std::max(ref, std::abs(st.phi[j]));
    }
    double route_gap = (ref > 0.0) ? gap / ref : 0.0;
    worst_route_gap = std::max(worst_route_gap, route_gap);
    sup = std::max(sup, st.cld_ratio);

    CsvWriter csv({"t", "re_phi", "im_phi", "weighted_abs_phi"});
    for (std::size_t j = 0; j < st.phi.size(); ++j) {
      double t = dt * static_cast<double>(j);
      double w = std::pow(kmags[i], walpha) *
                 std::pow(kkt_bracket(kmags[i], t), ws);
      csv.row({t, st.phi[j].real(), st.phi[j].imag(),
               w * std::abs(st.phi[j])});
    }
    std::ostringstream name;
    name << "volterra_k" << i << ".csv";
    atomic_write(fs::path(opts.out_dir) / name.str(), csv.str());

    json pk;
    pk["kmag"] = kmags[i];
    pk["cld_ratio"] = st.cld_ratio;
    pk["weighted_l2"] = st.weighted_l2;
    pk["forcing_weighted_l2"] = st.forcing_weighted_l2;
    pk["route_agreement"] = route_gap;
    summary["per_k"].push_back(pk);
  }
  summary["sup_cld_ratio"] = sup;
  summary["worst_route_agreement"] = worst_route_gap;
  atomic_write(fs::path(opts.out_dir) / "volterra.json",
               summary.dump(2) + "\n");
  write_manifest(opts, "volterra", cfg);
  return 0;
}

int run_echo_kernel(const CommonOpts& opts, Config& cfg) {
  // the kernel study is model-independent, but the model section is still
  // validated so one config file can drive every subcommand
  (void)parse_equilibrium(cfg);
  (void)parse_potential(cfg);
  EchoParams par;
  par.beta = cfg.get_double("echo", "beta", 12.0);
  par.zeta = cfg.get_double("echo", "zeta", 0.9);
  par.prefactor = cfg.get_double("echo", "prefactor", 1.0);
  auto horizons = cfg.get_list("echo", "horizons", {10.0, 20.0, 40.0, 80.0});
  auto kmags = cfg.get_list("echo", "kmags", {0.25, 1.0, 4.0, 16.0});
  double col_lmag = cfg.get_double("echo", "col_lmag", 1.0);
  double col_tau = cfg.get_double("echo", "col_tau", 1.0);
  double rel_tol = cfg.get_double("echo", "rel_tol", 1e-4);
  bool with_oracle = cfg.get_bool("echo", "oracle", true);
  par.t_star = horizons.back();
  par.validate(opts.strict_regime);
  cfg.finish();

  auto sweep = schur_horizon_sweep(par, horizons, kmags, col_lmag, col_tau,
                                   rel_tol, opts.threads);

  // Per-probe table: zone contributions, decomposed total, oracle, ratio.
  CsvWriter csv({"kind", "horizon", "mag", "early", "resonant", "nonresonant",
                 "decomposed", "oracle", "rel_gap"});
  for (double t : horizons)
    for (double km : kmags) {
      auto z = row_sum_zones(par, t, km, schur_method::decomposed, rel_tol);
      double oracle = with_oracle
                          ? row_sum(par, t, km, schur_method::oracle, rel_tol)
                          : 0.0;
      double gap = with_oracle ? std::abs(z.total - oracle) /
                                     std::max(oracle, 1e-300)
                               : 0.0;
      csv.row({0.0, t, km, z.early, z.resonant, z.nonresonant, z.total,
               oracle, gap});
    }
  for (double T : horizons) {
    EchoParams loc = par;
    loc.t_star = T;
    auto z = column_sum_zones(loc, col_tau, col_lmag,
                              schur_method::decomposed, rel_tol, T);
    double oracle =
        with_oracle ? column_sum(loc, col_tau, col_lmag,
                                 schur_method::oracle, rel_tol, T)
                    : 0.0;
    double gap = with_oracle
                     ? std::abs(z.total - oracle) / std::max(oracle, 1e-300)
                     : 0.0;
    csv.row({1.0, T, col_lmag, z.early, z.resonant, z.nonresonant, z.total,
             oracle, gap});
  }
  atomic_write(fs::path(opts.out_dir) / "echo_kernel.csv", csv.str());

  json verdict;
  verdict["beta"] = par.beta;
  verdict["zeta"] = par.zeta;
  verdict["stabilized"] = sweep.stabilized;
  verdict["growing"] = sweep.growing;
  verdict["regime_flagged"] = sweep.regime_flagged;
  verdict["horizons"] = sweep.horizons;
  verdict["row_values"] = sweep.row_values;
  verdict["col_values"] = sweep.col_values;
  verdict["row_ratios"] = sweep.row_ratios;
  verdict["col_ratios"] = sweep.col_ratios;
  atomic_write(fs::path(opts.out_dir) / "echo_regime.json",
               verdict.dump(2) + "\n");
  write_manifest(opts, "echo-kernel", cfg);
  return 0;
}

SimConfig parse_sim(Config& cfg, const CommonOpts& opts) {
  SimConfig sc;
  sc.d = static_cast<int>(cfg.get_int("simulate", "d", 1));
  sc.l_box = cfg.get_double("simulate", "l_box", 8.0 * pi);
  sc.n_z = static_cast<std::size_t>(cfg.get_int("simulate", "n_z", 64));
  sc.n_v = static_cast<std::size_t>(cfg.get_int("simulate", "n_v", 256));
  sc.v_max = cfg.get_double("simulate", "v_max", 6.0);
  sc.dt = cfg.get_double("simulate", "dt", 0.02);
  sc.t_end = cfg.get_double("simulate", "t_end", 40.0);
  sc.epsilon = cfg.get_double("simulate", "epsilon", 1e-3);
  sc.cfl_limit = cfg.get_double("simulate", "cfl_limit", 4.0);
  std::string mode = cfg.get_string("simulate", "mode", "linearized");
  if (mode == "free")
    sc.mode = sim_mode::free_transport;
  else if (mode == "linearized")
    sc.mode = sim_mode::linearized;
  else if (mode == "nonlinear")
    sc.mode = sim_mode::nonlinear;
  else
    throw config_error("simulate.mode: unknown mode " + mode);
  sc.eq = parse_equilibrium(cfg);
  sc.pot = parse_potential(cfg);
  if (sc.eq.dim != sc.d) {
    // model dim defaults to 3; the sim section is authoritative here
    sc.eq.dim = sc.d;
  }
  sc.seed = parse_seed(cfg, sc.d);
  (void)opts;
  return sc;
}

int run_simulate(const CommonOpts& opts, Config& cfg) {
  SimConfig sc = parse_sim(cfg, opts);
  std::size_t sample_every =
      static_cast<std::size_t>(cfg.get_int("simulate", "sample_every", 10));
  auto snap_times = cfg.get_list("simulate", "snapshot_times", {});
  cfg.finish();

  Simulator sim(sc);
  if (!sc.velocity_boundary_ok())
    throw config_error(
        "simulate: seed decays too slowly for v_max (boundary leakage)");

  std::vector<double> pending = snap_times;
  std::sort(pending.begin(), pending.end());
  std::size_t next_snap = 0, snap_idx = 0;
  auto on_sample = [&](const DistributionState& st) {
    while (next_snap < pending.size() &&
           st.t >= pending[next_snap] - 1e-9) {
      std::ostringstream name;
      name << "snapshot_" << snap_idx++ << ".bin";
      write_snapshot(fs::path(opts.out_dir) / name.str(), sc, st);
      ++next_snap;
    }
  };
  auto hist = sim.run(sample_every, on_sample);
  write_snapshot(fs::path(opts.out_dir) / "snapshot_final.bin", sc,
                 sim.final_state());

  CsvWriter csv({"t", "k", "re_rho", "im_rho", "abs_force", "out_of_band"});
  for (const auto& s : hist.samples)
    for (std::size_t m = 0; m < s.rho_hat.size(); ++m) {
      double k0 = sim.k_vector(m)[0];
      csv.row({s.t, k0, s.rho_hat[m].real(), s.rho_hat[m].imag(),
               std::abs(s.force_hat[m]),
               static_cast<double>(s.out_of_band[m])});
    }
  atomic_write(fs::path(opts.out_dir) / "density.csv", csv.str());

  json extra;
  extra["out_of_band_fraction"] = hist.out_of_band_fraction;
  extra["horizon_warning"] = hist.horizon_warning;
  extra["samples"] = hist.samples.size();
  write_manifest(opts, "simulate", cfg, extra);
  return 0;
}

// Reads a simulate run (manifest + final snapshot + density table) and emits
// decay fits, dispersive-decay exponents, seed norms and bootstrap controls.
int run_diagnose(const CommonOpts& opts, Config& cfg) {
  std::string run_dir = cfg.get_string("diagnose", "run_dir");
  double alpha = cfg.get_double("diagnose", "alpha", 0.0);
  double gamma = cfg.get_double("diagnose", "gamma", 0.0);
  double s_norm = cfg.get_double("diagnose", "s", 5.0);
  double sigma1 = cfg.get_double("diagnose", "sigma1", 11.0);
  cfg.finish();
  if (opts.strict_regime && !(s_norm > 4.0))
    throw config_error("diagnose: s > 4 required (strict regime)");

  // Rebuild the run configuration from its manifest.
  json manifest = json::parse(slurp((fs::path(run_dir) / "manifest.json")
                                        .string()));
  std::string run_cfg_text;
  for (auto& [key, value] : manifest.at("config").items())
    run_cfg_text += key + " = " + value.get<std::string>() + "\n";
  // keys are stored as "section.key"; rebuild sections
  std::map<std::string, std::vector<std::string>> by_section;
  for (auto& [key, value] : manifest.at("config").items()) {
    auto d = key.find('.');
    by_section[key.substr(0, d)].push_back(
        key.substr(d + 1) + " = " + value.get<std::string>());
  }
  std::string text;
  for (auto& [sec, lines] : by_section) {
    text += "[" + sec + "]\n";
    for (auto& l : lines) text += l + "\n";
  }
  Config run_cfg = Config::parse(text);
  SimConfig sc = parse_sim(run_cfg, opts);

  Simulator sim(sc);
  auto snap = read_snapshot(fs::path(run_dir) / "snapshot_final.bin");

  // density history from the run's CSV
  DensityHistory hist;
  {
    std::ifstream in(fs::path(run_dir) / "density.csv");
    if (!in) throw config_error("diagnose: missing density.csv in run_dir");
    std::string line;
    std::getline(in, line);  // header
    std::size_t ns = sc.n_spatial();
    DensitySample cur;
    bool have = false;
    std::size_t col = 0;
    while (std::getline(in, line)) {
      std::istringstream ls(line);
      std::string cell;
      double v[6];
      int c = 0;
      while (std::getline(ls, cell, ',') && c < 6) v[c++] = std::stod(cell);
      if (c != 6) continue;
      if (!have || v[0] != cur.t) {
        if (have) hist.samples.push_back(cur);
        cur = DensitySample{};
        cur.t = v[0];
        cur.rho_hat.assign(ns, complex(0, 0));
        cur.force_hat.assign(ns, complex(0, 0));
        cur.out_of_band.assign(ns, 0);
        col = 0;
        have = true;
      }
      if (col < ns) {
        cur.rho_hat[col] = complex(v[2], v[3]);
        cur.force_hat[col] = complex(v[4], 0.0);
        cur.out_of_band[col] = static_cast<char>(v[5]);
        ++col;
      }
    }
    if (have) hist.samples.push_back(cur);
  }
  if (hist.samples.size() < 4)
    throw config_error("diagnose: density history too short");

  json rep;
  rep["run_dir"] = run_dir;

  // Seed norms (finite for s > 4) and their refined-quadrature drift.
  auto norms = initial_data_norms(sc.seed, sc.epsilon, s_norm, 1);
  auto norms4 = initial_data_norms(sc.seed, sc.epsilon, s_norm, 4);
  rep["initial_l2t_l2k"] = norms.l2t_l2k;
  rep["initial_linf_l2t"] = norms.linf_l2t;
  rep["initial_norm_refinement_drift"] =
      std::abs(norms.l2t_l2k - norms4.l2t_l2k) /
      std::max(norms4.l2t_l2k, 1e-300);

  // Dispersive decay exponent of the weighted density sum.
  auto disp = dispersive_decay_check(sim, hist, alpha, gamma, sigma1);
  rep["dispersive_exponent"] = disp.exponent;
  rep["dispersive_residual"] = disp.residual;
  rep["dispersive_empty"] = disp.empty;

  // Bootstrap controls sampled at the final state.
  BootstrapSpec bspec;
  bspec.epsilon = std::max(sc.epsilon, 1e-300);
  auto boot = bootstrap_norms(sim, {snap.state}, hist, bspec);
  rep["bootstrap_controls"] = boot.controls;
  rep["bootstrap_ratio_eps2"] = boot.ratio_eps2;
  rep["bootstrap_in"] = boot.in_bootstrap;

  // Per-mode decay fits for the tracked modes (nonzero k, in band).
  CsvWriter csv({"k", "power_rate", "power_residual", "exp_rate",
                 "exp_residual", "envelope_constant"});
  std::size_t ns = sc.n_spatial();
  for (std::size_t m = 1; m < ns / 2; ++m) {
    double km = sim.k_vector(m).norm();
    std::vector<double> ts, ys;
    for (const auto& smp : hist.samples) {
      if (smp.out_of_band[m]) continue;
      ts.push_back(smp.t);
      ys.push_back(std::abs(smp.rho_hat[m]));
    }
    if (ts.size() < 8) continue;
    auto pw = decay_fit(ts, ys, decay_model::power);
    auto ex = decay_fit(ts, ys, decay_model::exponential);
    if (!pw || !ex) continue;
    csv.row({km, pw->rate, pw->residual, ex->rate, ex->residual,
             envelope_constant(ts, ys, km, 4.0)});
  }
  atomic_write(fs::path(opts.out_dir) / "decay.csv", csv.str());
  atomic_write(fs::path(opts.out_dir) / "diagnose.json", rep.dump(2) + "\n");
  write_manifest(opts, "diagnose", cfg);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Landau damping toolkit (screened Vlasov, unconfined)"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string sub;
  const std::pair<const char*, const char*> subs[] = {
      {"stability", "dispersion sweep and stability margin"},
      {"volterra", "linear damping solves and the C_LD constant"},
      {"echo-kernel", "reaction-kernel row/column sums and regime verdict"},
      {"simulate", "pseudo-spectral run in gliding coordinates"},
      {"diagnose", "norms, decay fits and bootstrap controls of a run"}};
  for (const auto& [name, desc] : subs) {
    auto* cmd = app.add_subcommand(name, desc);
    cmd->add_option("--config", opts.config_path, "config file (INI-style)")
        ->required();
    cmd->add_option("--out", opts.out_dir, "output directory");
    cmd->add_option("--threads", opts.threads, "worker threads (1 = "
                                               "deterministic)");
    cmd->add_flag("--strict-regime", opts.strict_regime,
                  "enforce the certified-hypothesis ranges as hard errors");
    cmd->callback([&sub, name] { sub = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    fs::create_directories(opts.out_dir);
    Config cfg = Config::parse(slurp(opts.config_path));
    if (sub == "stability") return run_stability(opts, cfg);
    if (sub == "volterra") return run_volterra(opts, cfg);
    if (sub == "echo-kernel") return run_echo_kernel(opts, cfg);
    if (sub == "simulate") return run_simulate(opts, cfg);
    if (sub == "diagnose") return run_diagnose(opts, cfg);
    std::fprintf(stderr, "unknown subcommand\n");
    return 2;
  } catch (const accuracy_error& e) {
    std::fprintf(stderr, "accuracy error: %s\n", e.what());
    return 3;
  } catch (const error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
