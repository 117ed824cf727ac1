#ifndef LANDAU_SIMULATOR_HPP
#define LANDAU_SIMULATOR_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "landau/core.hpp"
#include "landau/fft.hpp"
#include "landau/model.hpp"

namespace landau {

// Initial data in gliding Fourier variables: sums of separable Gaussian
// bumps, mirrored so that h_in is real, with the k=0 column removed
// (mean-zero seed).
struct SeedPulse {
  double amplitude = 1.0;
  vec3 k_center;
  vec3 eta_center;
  double k_width = 1.0;
  double eta_width = 1.0;
};

struct SeedSpec {
  std::vector<SeedPulse> pulses;
};

inline complex seed_hat(const SeedSpec& seed, double epsilon, const vec3& k,
                        const vec3& eta) {
  if (k.norm() < 1e-14) return {0.0, 0.0};
  double acc = 0.0;
  for (const auto& p : seed.pulses) {
    double dk2 = (k - p.k_center).norm2();
    double de2 = (eta - p.eta_center).norm2();
    double mk2 = (k + p.k_center).norm2();
    double me2 = (eta + p.eta_center).norm2();
    double wk2 = 2.0 * p.k_width * p.k_width;
    double we2 = 2.0 * p.eta_width * p.eta_width;
    acc += p.amplitude * (std::exp(-dk2 / wk2 - de2 / we2) +
                          std::exp(-mk2 / wk2 - me2 / we2));
  }
  return {epsilon * acc, 0.0};
}

enum class sim_mode { free_transport, linearized, nonlinear };

struct SimConfig {
  int d = 1;
  double l_box = 8.0 * pi;   // spatial period per axis; k lattice (2pi/L)Z^d
  std::size_t n_z = 64;      // spatial modes per axis
  std::size_t n_v = 64;      // velocity points per axis
  double v_max = 6.0;        // velocity cutoff; eta lattice (pi/v_max)Z^d
  double dt = 0.02;
  double t_end = 10.0;
  double epsilon = 1e-3;
  sim_mode mode = sim_mode::linearized;
  double cfl_limit = 4.0;    // bound on dt * k_max * v_max
  Equilibrium eq = Equilibrium::maxwellian(1, 1.0, 1.0);
  Potential pot = Potential::screened(1.0);
  SeedSpec seed;

  double dk() const { return two_pi / l_box; }
  double dv() const { return 2.0 * v_max / static_cast<double>(n_v); }
  double deta() const { return pi / v_max; }
  double k_max() const { return dk() * static_cast<double>(n_z / 2); }
  double eta_max() const { return deta() * static_cast<double>(n_v / 2); }

  std::size_t n_spatial() const {
    std::size_t n = 1;
    for (int a = 0; a < d; ++a) n *= n_z;
    return n;
  }
  std::size_t n_velocity() const {
    std::size_t n = 1;
    for (int a = 0; a < d; ++a) n *= n_v;
    return n;
  }

  void validate() const {
    if (d < 1 || d > 3) throw config_error("sim: d must be 1, 2 or 3");
    if (!is_pow2(n_z) || !is_pow2(n_v) || n_z < 4 || n_v < 4)
      throw config_error("sim: N_z and N_v must be powers of two (>= 4)");
    if (!(l_box > 0.0) || !(v_max > 0.0))
      throw config_error("sim: L_box and v_max must be > 0");
    if (!(dt > 0.0) || !(t_end > 0.0))
      throw config_error("sim: dt and T_end must be > 0");
    if (!(epsilon >= 0.0)) throw config_error("sim: epsilon must be >= 0");
    if (mode == sim_mode::nonlinear && d != 1)
      throw config_error("sim: nonlinear runs are d=1 only");
    if (dt * k_max() * v_max > cfl_limit)
      throw config_error("sim: dt * k_max * v_max exceeds the CFL limit");
    if (eq.dim != d) throw config_error("sim: equilibrium dimension mismatch");
    if (seed.pulses.empty() && epsilon > 0.0)
      throw config_error("sim: empty seed with nonzero epsilon");
  }

  // Gaussian-tail check: the seed's velocity profile at the domain edge.
  bool velocity_boundary_ok() const {
    for (const auto& p : seed.pulses) {
      double w = p.eta_width;  // g decays in v like exp(-w^2 v^2 / 2)
      if (std::exp(-0.5 * w * w * v_max * v_max) > 1e-13) return false;
    }
    return true;
  }
};

struct DistributionState {
  double t = 0.0;
  std::vector<complex> g_hat;  // flattened (k lattice) x (eta lattice)
};

struct DensitySample {
  double t = 0.0;
  std::vector<complex> rho_hat;   // per spatial mode, FFT order
  std::vector<complex> force_hat; // first force component, -i k_0 W rho
  std::vector<char> out_of_band;  // |kt| beyond the eta lattice: value 0
};

struct DensityHistory {
  std::vector<DensitySample> samples;
  double out_of_band_fraction = 0.0;  // over all recorded (t,k)
  bool horizon_warning = false;       // fraction above 1/2
};

class Simulator {
 public:
  explicit Simulator(SimConfig cfg) : cfg_(std::move(cfg)) {
    cfg_.validate();
    ns_ = cfg_.n_spatial();
    nv_ = cfg_.n_velocity();
    k_of_.resize(ns_);
    for (std::size_t m = 0; m < ns_; ++m) k_of_[m] = k_vector(m);
    eta_of_.resize(nv_);
    for (std::size_t n = 0; n < nv_; ++n) eta_of_[n] = eta_vector(n);
    vgrid_.resize(cfg_.n_v);
    for (std::size_t j = 0; j < cfg_.n_v; ++j)
      vgrid_[j] = -cfg_.v_max + cfg_.dv() * static_cast<double>(j);
  }

  const SimConfig& config() const { return cfg_; }

  vec3 k_vector(std::size_t flat) const {
    vec3 k;
    k.dim = cfg_.d;
    for (int a = cfg_.d - 1; a >= 0; --a) {
      std::size_t idx = flat % cfg_.n_z;
      flat /= cfg_.n_z;
      k[a] = fft_freq(idx, cfg_.n_z, cfg_.dk());
    }
    return k;
  }

  vec3 eta_vector(std::size_t flat) const {
    vec3 e;
    e.dim = cfg_.d;
    for (int a = cfg_.d - 1; a >= 0; --a) {
      std::size_t idx = flat % cfg_.n_v;
      flat /= cfg_.n_v;
      e[a] = fft_freq(idx, cfg_.n_v, cfg_.deta());
    }
    return e;
  }

  DistributionState initial_state() const {
    DistributionState st;
    st.t = 0.0;
    st.g_hat.resize(ns_ * nv_);
    for (std::size_t m = 0; m < ns_; ++m)
      for (std::size_t n = 0; n < nv_; ++n) {
        complex val = seed_hat(cfg_.seed, cfg_.epsilon, k_of_[m], eta_of_[n]);
        if (cfg_.mode == sim_mode::nonlinear && !in_dealias_band(m, n))
          val = 0.0;
        st.g_hat[m * nv_ + n] = val;
      }
    return st;
  }

  // rho_hat(t,k) = g_hat(t,k,kt) by trigonometric interpolation along the
  // eta axes: per spatial mode, inverse-transform eta to the velocity
  // collocation points and re-evaluate the exponential sum at eta = kt.
  DensitySample extract_density(const DistributionState& st) const {
    DensitySample out;
    out.t = st.t;
    out.rho_hat.assign(ns_, complex(0.0, 0.0));
    out.force_hat.assign(ns_, complex(0.0, 0.0));
    out.out_of_band.assign(ns_, 0);
    std::vector<complex> row(nv_);
    for (std::size_t m = 0; m < ns_; ++m) {
      const vec3& k = k_of_[m];
      bool in_band = true;
      for (int a = 0; a < cfg_.d; ++a)
        if (std::abs(k[a] * st.t) > cfg_.eta_max()) in_band = false;
      if (!in_band) {
        out.out_of_band[m] = 1;
        continue;
      }
      velocity_collocation(&st.g_hat[m * nv_], row);
      complex acc(0.0, 0.0);
      if (cfg_.d == 1) {
        // phase recurrence for e^{-i k v_j t}
        complex ph = std::polar(1.0, -k[0] * st.t * vgrid_[0]);
        complex step = std::polar(1.0, -k[0] * st.t * cfg_.dv());
        for (std::size_t j = 0; j < cfg_.n_v; ++j) {
          acc += row[j] * ph;
          ph *= step;
        }
      } else {
        for (std::size_t j = 0; j < nv_; ++j) {
          double phase = 0.0;
          std::size_t rem = j;
          for (int a = cfg_.d - 1; a >= 0; --a) {
            phase -= k[a] * st.t * vgrid_[rem % cfg_.n_v];
            rem /= cfg_.n_v;
          }
          acc += row[j] * std::polar(1.0, phase);
        }
      }
      out.rho_hat[m] = acc;
      out.force_hat[m] =
          complex(0.0, -1.0) * k[0] * potential_hat(cfg_.pot, k) * acc;
    }
    return out;
  }

  // One classical RK4 step. Free mode leaves the state untouched.
  void step(DistributionState& st) const {
    if (cfg_.mode == sim_mode::free_transport) {
      st.t += cfg_.dt;
      return;
    }
    std::size_t n = st.g_hat.size();
    std::vector<complex> k1(n), k2(n), k3(n), k4(n), tmp(n);
    double h = cfg_.dt;
    rhs(st.t, st.g_hat, k1);
    for (std::size_t i = 0; i < n; ++i)
      tmp[i] = st.g_hat[i] + 0.5 * h * k1[i];
    rhs(st.t + 0.5 * h, tmp, k2);
    for (std::size_t i = 0; i < n; ++i)
      tmp[i] = st.g_hat[i] + 0.5 * h * k2[i];
    rhs(st.t + 0.5 * h, tmp, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = st.g_hat[i] + h * k3[i];
    rhs(st.t + h, tmp, k4);
    for (std::size_t i = 0; i < n; ++i)
      st.g_hat[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    st.t += h;
    for (std::size_t i = 0; i < n; i += 97)
      if (!std::isfinite(st.g_hat[i].real()) ||
          !std::isfinite(st.g_hat[i].imag()))
        throw accuracy_error("sim: divergence detected, last valid t = " +
                             std::to_string(st.t - h));
  }

  DensityHistory run(std::size_t sample_every,
                     const std::function<void(const DistributionState&)>&
                         on_sample = nullptr) const {
    DistributionState st = initial_state();
    DensityHistory hist;
    auto steps = static_cast<std::size_t>(
        std::llround(cfg_.t_end / cfg_.dt));
    std::size_t band_hits = 0, band_total = 0;
    auto record = [&] {
      hist.samples.push_back(extract_density(st));
      const auto& s = hist.samples.back();
      for (char f : s.out_of_band) band_hits += (f != 0);
      band_total += s.out_of_band.size();
      if (on_sample) on_sample(st);
    };
    record();
    for (std::size_t i = 1; i <= steps; ++i) {
      step(st);
      if (i % sample_every == 0 || i == steps) record();
    }
    hist.out_of_band_fraction =
        band_total ? static_cast<double>(band_hits) /
                         static_cast<double>(band_total)
                   : 0.0;
    hist.horizon_warning = hist.out_of_band_fraction > 0.5;
    final_state_ = st;
    return hist;
  }

  const DistributionState& final_state() const { return final_state_; }

  // d/dt g_hat. Linear part: -rho_hat(k) W(k) k.(eta - tk) f0_hat(eta - tk).
  // Nonlinear part (d=1): collocation product of F(t, z + tv) with
  // (d_v - t d_z)g, dealiased by the 2/3 rule.
  void rhs(double t, const std::vector<complex>& g,
           std::vector<complex>& out) const {
    DistributionState view;
    view.t = t;
    view.g_hat = g;  // density extraction is the only reader
    DensitySample dens = extract_density(view);
    for (std::size_t m = 0; m < ns_; ++m) {
      const vec3& k = k_of_[m];
      double what = potential_hat(cfg_.pot, k);
      complex rho = dens.rho_hat[m];
      bool dead = (k.norm() < 1e-14) || (what == 0.0) ||
                  (rho == complex(0.0, 0.0));
      for (std::size_t n = 0; n < nv_; ++n) {
        if (dead) {
          out[m * nv_ + n] = 0.0;
          continue;
        }
        vec3 shifted = eta_of_[n] - t * k;
        double kdot = dot(k, shifted);
        out[m * nv_ + n] =
            -rho * what * kdot * fourier_equilibrium(cfg_.eq, shifted);
      }
    }
    if (cfg_.mode == sim_mode::nonlinear) add_nonlinear(t, g, dens, out);
  }

  // Inverse transform of one eta row to velocity collocation values c_j with
  // g_hat(k,eta) = sum_j c_j e^{-i eta v_j}; the offset v_0 = -v_max shows up
  // as the (-1)^n phase before the FFT.
  void velocity_collocation(const complex* row_hat,
                            std::vector<complex>& c) const {
    for (std::size_t n = 0; n < nv_; ++n) {
      int par = 0;
      std::size_t rem = n;
      for (int a = 0; a < cfg_.d; ++a) {
        std::size_t ni = rem % cfg_.n_v;
        rem /= cfg_.n_v;
        std::size_t half = cfg_.n_v / 2;
        par += static_cast<int>((ni <= half) ? ni : cfg_.n_v - ni);
      }
      c[n] = (par % 2 == 0) ? row_hat[n] : -row_hat[n];
    }
    std::vector<std::size_t> shape(static_cast<std::size_t>(cfg_.d),
                                   cfg_.n_v);
    for (int a = 0; a < cfg_.d; ++a) fft_axis(c, shape, a, +1);
    double scale = 1.0 / static_cast<double>(nv_);
    for (auto& x : c) x *= scale;
  }

  // exact inverse of velocity_collocation (d=1)
  void velocity_decollocation(std::vector<complex>& c) const {
    fft_inplace(c, -1);
    std::size_t half = cfg_.n_v / 2;
    for (std::size_t n = 0; n < cfg_.n_v; ++n) {
      std::size_t sn = (n <= half) ? n : cfg_.n_v - n;
      if (sn % 2 == 1) c[n] = -c[n];
    }
  }

  const std::vector<double>& velocity_grid() const { return vgrid_; }

 private:
  bool in_dealias_band(std::size_t m_flat, std::size_t n_flat) const {
    for (int a = 0; a < cfg_.d; ++a) {
      std::size_t mi = m_flat % cfg_.n_z;
      m_flat /= cfg_.n_z;
      std::size_t half = cfg_.n_z / 2;
      std::size_t signed_m = (mi <= half) ? mi : cfg_.n_z - mi;
      if (3 * signed_m > cfg_.n_z) return false;
    }
    for (int a = 0; a < cfg_.d; ++a) {
      std::size_t ni = n_flat % cfg_.n_v;
      n_flat /= cfg_.n_v;
      std::size_t half = cfg_.n_v / 2;
      std::size_t signed_n = (ni <= half) ? ni : cfg_.n_v - ni;
      if (3 * signed_n > cfg_.n_v) return false;
    }
    return true;
  }

  void add_nonlinear(double t, const std::vector<complex>& g,
                     const DensitySample& dens,
                     std::vector<complex>& out) const {
    std::size_t nz = cfg_.n_z, nv = cfg_.n_v;
    // G = (d_v - t d_z)g in collocation, z still spectral: rows over k.
    std::vector<complex> bigG(nz * nv), bigU(nz * nv);
    std::vector<complex> row(nv);
    for (std::size_t m = 0; m < nz; ++m) {
      double km = k_of_[m][0];
      for (std::size_t n = 0; n < nv; ++n)
        row[n] = complex(0.0, eta_of_[n][0] - t * km) * g[m * nv + n];
      std::vector<complex> cc(nv);
      velocity_collocation(row.data(), cc);
      for (std::size_t j = 0; j < nv; ++j) bigG[m * nv + j] = cc[j];
    }
    // u(z, v_j) = sum_m F_hat(k_m) e^{i k_m (z + t v_j)}: per-v phase
    // modulation of the force coefficients, then inverse FFT in z below.
    for (std::size_t m = 0; m < nz; ++m) {
      complex fm = dens.out_of_band[m] ? complex(0.0, 0.0)
                                       : dens.force_hat[m];
      double km = k_of_[m][0];
      complex ph = std::polar(1.0, km * t * vgrid_[0]);
      complex stepph = std::polar(1.0, km * t * cfg_.dv());
      for (std::size_t j = 0; j < nv; ++j) {
        bigU[m * nv + j] = fm * ph;
        ph *= stepph;
      }
    }
    // to z collocation (columns are contiguous stride nv)
    std::vector<std::size_t> shape{nz, nv};
    fft_axis(bigG, shape, 0, +1);
    fft_axis(bigU, shape, 0, +1);
    // product (the 1/nz of the z inverse cancels against the forward below)
    for (std::size_t i = 0; i < nz * nv; ++i) bigG[i] *= -bigU[i];
    fft_axis(bigG, shape, 0, -1);
    double zscale = 1.0 / static_cast<double>(nz);
    std::vector<complex> cc(nv);
    for (std::size_t m = 0; m < nz; ++m) {
      for (std::size_t j = 0; j < nv; ++j)
        cc[j] = bigG[m * nv + j] * zscale;
      velocity_decollocation(cc);
      for (std::size_t n = 0; n < nv; ++n) {
        if (!in_dealias_band(m, n)) continue;
        // The quadratic term is divergence-free in (z,v); its grid mean is
        // pinned to zero rather than left to quadrature residue.
        if (m == 0 && n == 0) continue;
        out[m * nv + n] += cc[n];
      }
    }
  }

  SimConfig cfg_;
  std::size_t ns_ = 0, nv_ = 0;
  std::vector<vec3> k_of_;
  std::vector<vec3> eta_of_;
  std::vector<double> vgrid_;
  mutable DistributionState final_state_;
};

struct ScatteringReport {
  std::vector<complex> h_inf;
  double tail_bound = 0.0;
  double forcing_decay_rate = 0.0;  // power-law fit of the RHS magnitude
};

// h_inf = g_in + time integral of the right-hand side; with the history on
// [0, T_end] this is the final state plus a tail bound from the fitted decay
// of the recorded forcing magnitude.
inline ScatteringReport scattering_state(const DensityHistory& hist,
                                         const DistributionState& final_state,
                                         const SimConfig& cfg) {
  ScatteringReport rep;
  rep.h_inf = final_state.g_hat;
  if (cfg.mode == sim_mode::free_transport) return rep;
  std::vector<double> ts, mags;
  for (const auto& s : hist.samples) {
    if (s.t <= 0.0) continue;
    double m = 0.0;
    for (const auto& f : s.force_hat) m += std::abs(f);
    ts.push_back(s.t);
    mags.push_back(m);
  }
  if (ts.size() < 8)
    throw accuracy_error("scattering: too few history samples");
  std::size_t half = ts.size() / 2;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t cnt = 0;
  for (std::size_t i = half; i < ts.size(); ++i) {
    if (mags[i] <= 0.0) continue;
    double x = std::log(jbracket(ts[i])), y = std::log(mags[i]);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
    ++cnt;
  }
  if (cnt < 4) {
    rep.tail_bound = 0.0;  // forcing is numerically zero
    return rep;
  }
  double denom = static_cast<double>(cnt) * sxx - sx * sx;
  double slope = (static_cast<double>(cnt) * sxy - sx * sy) / denom;
  rep.forcing_decay_rate = slope;
  if (slope >= -1.0 + 1e-9)
    throw accuracy_error(
        "scattering: forcing not decaying at T_end, horizon inconclusive");
  double T = ts.back();
  // integral of C t^slope over [T, inf)
  rep.tail_bound = mags.back() * T / (-slope - 1.0);
  return rep;
}

}  // namespace landau

#endif
