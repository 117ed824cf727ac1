#ifndef LANDAU_DIAGNOSTICS_HPP
#define LANDAU_DIAGNOSTICS_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "landau/core.hpp"
#include "landau/quadrature.hpp"
#include "landau/simulator.hpp"

namespace landau {

// Density-side multipliers: A_s(t,k) = |k|^{1/2} <k,kt>^s and the analytic
// weight e^{lambda <k,kt>}.
struct WeightSpec {
  enum class kind_t { sobolev, analytic } kind = kind_t::sobolev;
  double s = 4.0;       // sobolev exponent
  double lambda = 0.1;  // analytic radius
  bool half_power = true;

  void validate() const {
    if (kind == kind_t::sobolev && s < 0.0)
      throw config_error("weight: s must be >= 0");
    if (kind == kind_t::analytic && !(lambda > 0.0))
      throw config_error("weight: lambda must be > 0");
  }
};

inline double a_multiplier(const WeightSpec& spec, double t, double kmag) {
  double br = kkt_bracket(kmag, t);
  double half = spec.half_power ? std::sqrt(kmag) : 1.0;
  if (spec.kind == WeightSpec::kind_t::analytic)
    return half * std::exp(spec.lambda * br);
  return half * std::pow(br, spec.s);
}

struct BootstrapSpec {
  double sigma1 = 11.0, sigma2 = 17.0, sigma3 = 23.0, sigma4 = 29.0;
  double sigma_bar = 35.0;
  int moment_order = 2;  // M
  double delta = 0.1;
  double k1 = 1.0, k2 = 1.0, k3 = 1.0, k4 = 1.0, k5 = 1.0;
  double epsilon = 1e-3;

  void validate() const {
    if (!(sigma1 >= 11.0 && sigma2 > sigma1 && sigma3 > sigma2 &&
          sigma4 > sigma3 && sigma_bar > sigma4))
      throw config_error("bootstrap: need sigma_bar>s4>s3>s2>s1>=11");
    if (!(delta > 0.0 && delta < 0.5))
      throw config_error("bootstrap: delta must lie in (0,1/2)");
    if (moment_order < 0 || moment_order > 4)
      throw config_error("bootstrap: moment order out of range");
    if (!(epsilon > 0.0)) throw config_error("bootstrap: epsilon must be > 0");
  }
};

struct BootstrapReport {
  // controls in order: weighted-gradient energy / <t>^5, A_{s4} density L^2,
  // low-derivative energy, A_{s2} density Chemin-Lerner, pointwise <.>^{s1}
  std::array<double, 5> controls{};
  std::array<double, 5> ratio_eps2{};  // control / (4 K_i eps^2)
  std::array<double, 5> ratio_eps{};   // control / (4 K_i eps)
  double time_quadrature_error = 0.0;  // relative, on the L^2_t control
  bool in_bootstrap = true;            // all eps^2 ratios <= 1
};

namespace detail {

// H^sigma_M norm squared of a state: sum over |a| <= M of the squared
// weighted L^2 norm of v^a g, with an optional extra Fourier multiplier.
// Physical L^2 measure dz dv via the collocation Parseval identity.
template <typename Mult>
double hsm_norm_sq(const Simulator& sim, const DistributionState& st,
                   double sigma, int mom, Mult&& extra) {
  const auto& cfg = sim.config();
  if (cfg.d != 1)
    throw config_error("diagnostics: state norms implemented for d = 1");
  std::size_t nz = cfg.n_z, nv = cfg.n_v;
  const auto& vg = sim.velocity_grid();
  // Parseval for the collocation map: sum |u(z_i,v_j)|^2 dz dv equals
  // L * 2 v_max times the squared coefficient sum.
  double measure = cfg.l_box * 2.0 * cfg.v_max;
  double total = 0.0;
  std::vector<complex> row(nv), cc(nv);
  for (int a = 0; a <= mom; ++a) {
    for (std::size_t m = 0; m < nz; ++m) {
      vec3 k = sim.k_vector(m);
      // v^a in collocation, back to the eta lattice
      for (std::size_t n = 0; n < nv; ++n) row[n] = st.g_hat[m * nv + n];
      sim.velocity_collocation(row.data(), cc);
      for (std::size_t j = 0; j < nv; ++j)
        cc[j] *= std::pow(vg[j], static_cast<double>(a));
      sim.velocity_decollocation(cc);
      for (std::size_t n = 0; n < nv; ++n) {
        vec3 eta = sim.eta_vector(n);
        double w = std::pow(jbracket2(k, eta), sigma) * extra(st.t, k, eta);
        total += w * w * std::norm(cc[n]) * measure;
      }
    }
  }
  return total;
}

inline double trapezoid(const std::vector<double>& ts,
                        const std::vector<double>& ys) {
  double acc = 0.0;
  for (std::size_t i = 1; i < ts.size(); ++i)
    acc += 0.5 * (ys[i] + ys[i - 1]) * (ts[i] - ts[i - 1]);
  return acc;
}

}  // namespace detail

inline BootstrapReport bootstrap_norms(
    const Simulator& sim, const std::vector<DistributionState>& states,
    const DensityHistory& hist, const BootstrapSpec& spec) {
  spec.validate();
  if (states.empty() || hist.samples.size() < 2)
    throw config_error("bootstrap: missing state or history samples");
  const auto& cfg = sim.config();
  BootstrapReport rep;

  // (a) sup_t <t>^{-5} || <t grad_z, grad_v> g ||^2_{H^{s4}_M}
  // (c) sup_t || |grad_z|^delta g ||^2_{H^{s3}_M}
  // (e) sup_{t,k,eta} <k,eta>^{s1} |g_hat|
  for (const auto& st : states) {
    double a = detail::hsm_norm_sq(
        sim, st, spec.sigma4, spec.moment_order,
        [](double t, const vec3& k, const vec3& eta) {
          return jbracket2(t * k, eta);
        });
    rep.controls[0] =
        std::max(rep.controls[0], a / std::pow(jbracket(st.t), 5.0));
    double c = detail::hsm_norm_sq(
        sim, st, spec.sigma3, spec.moment_order,
        [&](double, const vec3& k, const vec3&) {
          return std::pow(k.norm(), spec.delta);
        });
    rep.controls[2] = std::max(rep.controls[2], c);
    for (std::size_t m = 0; m < cfg.n_spatial(); ++m)
      for (std::size_t n = 0; n < cfg.n_velocity(); ++n) {
        double br = jbracket2(sim.k_vector(m), sim.eta_vector(n));
        rep.controls[4] = std::max(
            rep.controls[4], std::pow(br, spec.sigma1) *
                                 std::abs(st.g_hat[m * cfg.n_velocity() + n]));
      }
  }

  // (b) || A_{s4} rho ||^2_{L^2_t L^2_k}  and  (d) Chemin-Lerner order:
  // time L^2 first, then sup over k.
  std::size_t nk = hist.samples.front().rho_hat.size();
  std::vector<double> ts;
  for (const auto& s : hist.samples) ts.push_back(s.t);
  WeightSpec w4{WeightSpec::kind_t::sobolev, spec.sigma4, 0.0, true};
  WeightSpec w2{WeightSpec::kind_t::sobolev, spec.sigma2, 0.0, true};
  double l2l2 = 0.0, l2l2_coarse = 0.0, cl = 0.0;
  for (std::size_t m = 0; m < nk; ++m) {
    double km = sim.k_vector(m).norm();
    std::vector<double> y4, y2;
    for (const auto& s : hist.samples) {
      double r = std::abs(s.rho_hat[m]);
      double a4 = a_multiplier(w4, s.t, km) * r;
      y4.push_back(a4 * a4);
      double a2 = a_multiplier(w2, s.t, km) * r;
      y2.push_back(a2 * a2);
    }
    double tk = detail::trapezoid(ts, y4);
    l2l2 += tk * std::pow(cfg.dk(), cfg.d);
    cl = std::max(cl, std::sqrt(detail::trapezoid(ts, y2)));
    // half-sampled quadrature for the reported time-resolution error
    std::vector<double> ts2, y42;
    for (std::size_t i = 0; i < ts.size(); i += 2) {
      ts2.push_back(ts[i]);
      y42.push_back(y4[i]);
    }
    if (ts2.back() != ts.back()) {
      ts2.push_back(ts.back());
      y42.push_back(y4.back());
    }
    l2l2_coarse += detail::trapezoid(ts2, y42) * std::pow(cfg.dk(), cfg.d);
  }
  rep.controls[1] = l2l2;
  rep.controls[3] = cl;
  if (l2l2 > 0.0)
    rep.time_quadrature_error = std::abs(l2l2 - l2l2_coarse) / l2l2;

  double e = spec.epsilon;
  std::array<double, 5> ks{spec.k1, spec.k2, spec.k3, spec.k4, spec.k5};
  for (int i = 0; i < 5; ++i) {
    rep.ratio_eps2[i] = rep.controls[i] / (4.0 * ks[i] * e * e);
    rep.ratio_eps[i] = rep.controls[i] / (4.0 * ks[i] * e);
    if (rep.ratio_eps2[i] > 1.0) rep.in_bootstrap = false;
  }
  return rep;
}

struct InitialDataNorms {
  double l2t_l2k = 0.0;   // || A_s rho_0 ||_{L^2_t L^2_k}
  double linf_l2t = 0.0;  // || A_s rho_0 ||_{L^infty_k L^2_t}
};

// rho_0(t,k) = h_in_hat(k, kt). With u = |k| t the squared L^2_{t,k} mass is
// the (k,u) integral of <k,u>^{2s} |h_in_hat|^2 (the |k|^{1/2} prefactor
// cancels the Jacobian), taken over k in R^d with d = 1 here. `refine`
// multiplies the number of composite Gauss panels (refine=4 serves as the
// oracle resolution).
inline InitialDataNorms initial_data_norms(const SeedSpec& seed,
                                           double epsilon, double s,
                                           int refine = 1) {
  if (!(s > 4.0))
    throw config_error("initial data norms: the A_s bounds need s > 4");
  if (refine < 1) throw config_error("initial data norms: refine >= 1");
  double k_hi = 1.0, u_hi = 1.0;
  for (const auto& p : seed.pulses) {
    k_hi = std::max(k_hi, p.k_center.norm() + 10.0 * p.k_width);
    u_hi = std::max(u_hi, p.eta_center.norm() + 10.0 * p.eta_width);
  }
  int nk = 48 * refine, nu = 48 * refine, panels = 4;
  auto gl = gauss_legendre(nk);
  auto glu = gauss_legendre(nu);
  InitialDataNorms out;
  double total = 0.0;
  auto u_integral = [&](double k) {
    double acc = 0.0;
    for (int p = 0; p < panels; ++p) {
      double a = u_hi * p / panels, b = u_hi * (p + 1) / panels;
      for (int i = 0; i < nu; ++i) {
        double u = 0.5 * (a + b) + 0.5 * (b - a) * glu.nodes[i];
        double w = 0.5 * (b - a) * glu.weights[i];
        double br = jbracket2(k, u);
        // both signs of eta along the ray k sign
        double sgn = (k >= 0.0) ? 1.0 : -1.0;
        double h = std::abs(
            seed_hat(seed, epsilon, vec3(k), vec3(sgn * u)));
        acc += w * std::pow(br, 2.0 * s) * h * h;
      }
    }
    return acc;
  };
  double best_k = 0.0, best_ui = -1.0;
  for (int p = 0; p < panels; ++p) {
    double a = k_hi * p / panels, b = k_hi * (p + 1) / panels;
    for (int i = 0; i < nk; ++i) {
      double k = 0.5 * (a + b) + 0.5 * (b - a) * gl.nodes[i];
      double w = 0.5 * (b - a) * gl.weights[i];
      double ui = u_integral(k);
      total += 2.0 * w * ui;  // even in k
      if (ui > best_ui) {
        best_ui = ui;
        best_k = k;
      }
    }
  }
  out.l2t_l2k = std::sqrt(total);
  // polish the sup over k with a golden-section search around the best
  // quadrature node, so linf_l2t does not depend on node placement
  {
    double h = k_hi / (panels * nk);
    double lo = std::max(0.0, best_k - 2.0 * h);
    double hi = std::min(k_hi, best_k + 2.0 * h);
    double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = u_integral(x1), f2 = u_integral(x2);
    for (int it = 0; it < 80 && hi - lo > 1e-12; ++it) {
      if (f1 < f2) {
        lo = x1; x1 = x2; f1 = f2;
        x2 = lo + gr * (hi - lo); f2 = u_integral(x2);
      } else {
        hi = x2; x2 = x1; f2 = f1;
        x1 = hi - gr * (hi - lo); f1 = u_integral(x1);
      }
    }
    best_ui = std::max(best_ui, std::max(f1, f2));
    out.linf_l2t = std::sqrt(best_ui);
  }
  return out;
}

struct DecayFit {
  double rate = 0.0;
  double residual = 0.0;  // rms of the log-space fit residuals
  std::size_t n_used = 0;
};

enum class decay_model { power, exponential };

// Least-squares fit of log y against log<t> (power) or t (exponential).
inline std::optional<DecayFit> decay_fit(const std::vector<double>& ts,
                                         const std::vector<double>& ys,
                                         decay_model model) {
  std::vector<double> xs, ls;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (!(ys[i] > 0.0)) continue;
    xs.push_back(model == decay_model::power ? std::log(jbracket(ts[i]))
                                             : ts[i]);
    ls.push_back(std::log(ys[i]));
  }
  if (xs.size() < 2) return std::nullopt;
  double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i]; sy += ls[i]; sxx += xs[i] * xs[i]; sxy += xs[i] * ls[i];
  }
  DecayFit fit;
  double denom = n * sxx - sx * sx;
  if (denom == 0.0) return std::nullopt;
  fit.rate = (n * sxy - sx * sy) / denom;
  double icept = (sy - fit.rate * sx) / n;
  double rss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double r = ls[i] - (icept + fit.rate * xs[i]);
    rss += r * r;
  }
  fit.residual = std::sqrt(rss / n);
  fit.n_used = xs.size();
  return fit;
}

// Least admissible C with |rho(t,k)| <= C <k,kt>^{-s} along a fixed mode.
inline double envelope_constant(const std::vector<double>& ts,
                                const std::vector<double>& ys, double kmag,
                                double s) {
  double c = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i)
    c = std::max(c, ys[i] * std::pow(kkt_bracket(kmag, ts[i]), s));
  return c;
}

struct DispersiveDecayResult {
  double exponent = 0.0;
  double residual = 0.0;
  std::size_t n_used = 0;
  bool empty = false;  // zero density: nothing to fit
};

// I(t) = sum_k dk^d |k|^alpha <k,kt>^gamma |rho_hat(t,k)|, fitted against
// <t> on the second half of the run. Hypothesis: alpha < sigma1 - gamma - d.
inline DispersiveDecayResult dispersive_decay_check(
    const Simulator& sim, const DensityHistory& hist, double alpha,
    double gamma, double sigma1) {
  const auto& cfg = sim.config();
  if (!(alpha < sigma1 - gamma - cfg.d))
    throw config_error(
        "dispersive decay: need alpha < sigma1 - gamma - d");
  std::vector<double> ts, is;
  double meas = std::pow(cfg.dk(), cfg.d);
  for (const auto& s : hist.samples) {
    double acc = 0.0;
    for (std::size_t m = 0; m < s.rho_hat.size(); ++m) {
      double km = sim.k_vector(m).norm();
      if (km == 0.0) continue;
      acc += meas * std::pow(km, alpha) *
             std::pow(kkt_bracket(km, s.t), gamma) * std::abs(s.rho_hat[m]);
    }
    ts.push_back(s.t);
    is.push_back(acc);
  }
  DispersiveDecayResult res;
  std::size_t half = ts.size() / 2;
  std::vector<double> t2(ts.begin() + half, ts.end());
  std::vector<double> i2(is.begin() + half, is.end());
  auto fit = decay_fit(t2, i2, decay_model::power);
  if (!fit) {
    res.empty = true;
    return res;
  }
  if (fit->n_used < 8)
    throw accuracy_error("dispersive decay: fewer than 8 usable times");
  res.exponent = fit->rate;
  res.residual = fit->residual;
  res.n_used = fit->n_used;
  return res;
}

}  // namespace landau

#endif
