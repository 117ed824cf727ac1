#ifndef LANDAU_DISPERSION_HPP
#define LANDAU_DISPERSION_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "landau/core.hpp"
#include "landau/model.hpp"
#include "landau/quadrature.hpp"

namespace landau {

// Probe grid for the stability sweep. omega_samples are real frequencies;
// only pairs with tail_cut_m <= omega/|k| <= tail_cut_M are evaluated, the
// outer ranges being covered by the small-ratio bound and the large-ratio
// asymptotics.
struct DispersionGrid {
  std::vector<double> omega_samples;
  std::vector<double> kmag_samples;
  double tail_cut_m = 0.05;
  double tail_cut_M = 50.0;
  struct {
    double step = 0.0;     // 0 = automatic panel sizing
    double horizon = 0.0;  // 0 = automatic (grown until the tail is negligible)
  } time_quadrature;

  void validate() const {
    if (!(tail_cut_m > 0.0) || !(tail_cut_M > tail_cut_m) ||
        !std::isfinite(tail_cut_M))
      throw config_error("dispersion grid: need 0 < m < M < inf");
    for (double k : kmag_samples)
      if (!(k > 0.0))
        throw config_error("dispersion grid: kmag samples must be positive");
  }

  // Log-spaced ratio coverage for each |k| in the band [m, M].
  static DispersionGrid standard(std::vector<double> kmags,
                                 int ratios_per_k = 96, double m = 0.05,
                                 double M = 50.0) {
    DispersionGrid g;
    g.kmag_samples = std::move(kmags);
    g.tail_cut_m = m;
    g.tail_cut_M = M;
    double kmin = *std::min_element(g.kmag_samples.begin(),
                                    g.kmag_samples.end());
    double kmax = *std::max_element(g.kmag_samples.begin(),
                                    g.kmag_samples.end());
    double lo = std::log(m * kmin), hi = std::log(M * kmax);
    for (int i = 0; i < ratios_per_k * 3; ++i) {
      double x = lo + (hi - lo) * i / double(ratios_per_k * 3 - 1);
      g.omega_samples.push_back(std::exp(x));
    }
    g.validate();
    return g;
  }
};

struct StabilityReport {
  double kappa = 0.0;            // min |L - 1| over the probed band
  double kappa_certified = 0.0;  // min(kappa, 1/2 off-band floor)
  double argmin_omega = 0.0;
  double argmin_kmag = 0.0;
  double method_agreement = 0.0;  // max |L_time - c*L_penrose| / (1 + |L|)
  bool winding_ok = true;
  bool cross_validation_ok = true;
  bool unstable_flag = false;
  double small_data_margin = 0.0;
  double convention_constant = 0.0;
};

namespace detail {

// Integration horizon in u = |k| t for int_0^inf e^{-i r u} f0rad_hat(u) u^p du:
// grow until the integrand envelope falls below tail_tol of its peak.
inline double radial_fourier_horizon(const Equilibrium& eq, int p,
                                     double tail_tol, double user_horizon) {
  auto env = [&](double u) {
    return std::fabs(fourier_equilibrium(eq, u)) * std::pow(u, p);
  };
  double peak = 0.0;
  double band = std::numeric_limits<double>::infinity();
  if (eq.kind == equilibrium_kind::tabulated) {
    const auto& rg = eq.table->radius;
    double drm = rg.back() - rg.front();
    for (std::size_t i = 1; i < rg.size(); ++i)
      drm = std::min(drm, rg[i] - rg[i - 1]);
    band = pi / drm;
  }
  double U = 1.0;
  double cap = std::min(band, 1e6);
  while (U < cap) {
    for (int s = 1; s <= 8; ++s) peak = std::max(peak, env(U * s / 8.0));
    if (env(U) <= tail_tol * peak && U > 2.0) break;
    U *= 1.5;
  }
  U = std::min(U, cap);
  if (user_horizon > 0.0) {
    double achieved = env(std::min(user_horizon, cap)) / std::max(peak, 1e-300);
    if (achieved > tail_tol)
      throw accuracy_error(
          "dispersion_time: quadrature horizon too short, achieved tail bound " +
          std::to_string(achieved));
    U = std::min(user_horizon, cap);
  } else if (env(U) > tail_tol * std::max(peak, 1e-300) && peak > 0.0) {
    throw accuracy_error(
        "dispersion_time: integrand tail not resolvable (achieved " +
        std::to_string(env(U) / peak) + ")");
  }
  return U;
}

}  // namespace detail

// Time-domain route: L(i omega, k) = -int_0^infty e^{-i omega t}
// f0_hat(kt) W_hat(k) |k|^2 t dt, reduced to u = |k| t.
inline complex dispersion_time(const Equilibrium& eq, const Potential& pot,
                               double omega, const vec3& k,
                               double horizon = 0.0, double max_panel = 0.5) {
  double km = k.norm();
  if (!(km > 0.0)) throw domain_error("dispersion_time: |k| must be > 0");
  double what = potential_hat(pot, k);
  if (what == 0.0 || eq.kind == equilibrium_kind::zero) return {0.0, 0.0};
  double r = omega / km;
  double U = detail::radial_fourier_horizon(eq, 1, 1e-12, horizon);
  auto f = [&](double u) -> complex {
    double ph = -r * u;
    return complex(std::cos(ph), std::sin(ph)) * fourier_equilibrium(eq, u) * u;
  };
  auto I = integrate_oscillatory(f, 0.0, U, r, max_panel);
  return -what * I.value;
}

inline complex dispersion_time(const Equilibrium& eq, const Potential& pot,
                               double omega, double kmag,
                               double horizon = 0.0, double max_panel = 0.5) {
  vec3 k(kmag, 0.0, 0.0);
  k.dim = eq.dim;
  return dispersion_time(eq, pot, omega, k, horizon, max_panel);
}

// Principal value int m'(r)/(r-u) dr via singularity subtraction:
//   pv = int [m'(r) - m'(u)]/(r-u) dr + m'(u) log((hi-u)/(u-lo)),
// with the first integrand smooth (it tends to m''(u) at r = u).
inline double penrose_principal_value(const Equilibrium& eq, double u) {
  auto mprime = [&](double r) { return marginal(eq, r).derivative; };
  double R;
  if (eq.kind == equilibrium_kind::tabulated)
    R = eq.max_table_radius();
  else
    R = std::fabs(u) + 14.0 * std::sqrt(eq.theta);
  double lo = -R, hi = R;
  if (!(u > lo && u < hi)) {
    return integrate_adaptive([&](double r) { return mprime(r) / (r - u); },
                              lo, hi, 1e-10)
        .value;
  }
  double mu = mprime(u);
  auto smooth = [&](double r) {
    double d = r - u;
    if (std::fabs(d) < 1e-7) {
      // Removable limit m''(u), by symmetric difference to dodge cancellation.
      double h = 1e-6;
      return (mprime(u + h) - mprime(u - h)) / (2.0 * h);
    }
    return (mprime(r) - mu) / d;
  };
  double total = integrate_adaptive(smooth, lo, u, 1e-10).value +
                 integrate_adaptive(smooth, u, hi, 1e-10).value;
  total += mu * std::log((hi - u) / (u - lo));
  return total;
}

// Penrose split route (stated without the Fourier convention constant; route
// agreement applies the measured constant).
inline complex dispersion_penrose(const Equilibrium& eq, const Potential& pot,
                                  double omega, const vec3& k) {
  double km = k.norm();
  if (!(km > 0.0)) throw domain_error("dispersion_penrose: |k| must be > 0");
  if (eq.kind == equilibrium_kind::tabulated && !eq.table->radial)
    throw domain_error("dispersion_penrose: needs a radially symmetric f0");
  double what = potential_hat(pot, k);
  if (what == 0.0 || eq.kind == equilibrium_kind::zero) return {0.0, 0.0};
  double u = omega / km;
  double pv = penrose_principal_value(eq, u);
  double im = -pi * marginal(eq, u).derivative;
  return what * complex(pv, im);
}

inline complex dispersion_penrose(const Equilibrium& eq, const Potential& pot,
                                  double omega, double kmag) {
  vec3 k(kmag, 0.0, 0.0);
  k.dim = eq.dim;
  return dispersion_penrose(eq, pot, omega, k);
}

// Leading large-ratio behaviour: Re L ~ W_hat (2pi)^{-d} mass (|k|/omega)^2.
inline complex large_ratio_asymptotics(const Equilibrium& eq,
                                       const Potential& pot, const vec3& k,
                                       double omega, double tail_cut_M = 50.0) {
  double km = k.norm();
  if (!(km > 0.0)) throw domain_error("large_ratio_asymptotics: |k| = 0");
  if (eq.kind == equilibrium_kind::zero) return {0.0, 0.0};
  double ratio = std::fabs(omega) / km;
  if (ratio <= tail_cut_M)
    throw domain_error(
        "large_ratio_asymptotics: called inside the non-asymptotic band");
  double what = potential_hat(pot, k);
  double lead = what * std::pow(two_pi, -eq.dim) * eq.mass / (ratio * ratio);
  return {lead, 0.0};
}

// ||W||_{L^1} by radial quadrature of the physical-space kernel.
inline double potential_l1_norm(const Potential& pot) {
  switch (pot.kind) {
    case potential_kind::zero:
      return 0.0;
    case potential_kind::screened_coulomb: {
      double sa = std::sqrt(pot.alpha);
      // 4pi r^2 * e^{-sa r} / (4pi r) = r e^{-sa r}
      auto I = integrate_semi_infinite(
          [&](double r) { return r * std::exp(-sa * r); }, 0.0, 1e-12, 0.0,
          2.0 / sa);
      return I.value;
    }
    case potential_kind::tabulated:
      throw domain_error("potential_l1_norm: tabulated potentials unsupported");
  }
  return 0.0;
}

// Smallness margin of the sufficient condition: ||W||_L1 * ||f0||_{H^{3/2+}_2}.
// The "+" is realized at 3/2 + 0.01.
inline double small_data_check(const Equilibrium& eq, const Potential& pot) {
  if (eq.kind == equilibrium_kind::zero) return 0.0;
  return potential_l1_norm(pot) * equilibrium_hsigma_norm(eq, 1.5 + 0.01, 2);
}

// Least C on the grid with |k|^j |d_omega^j L| <= C ||W||_L1 ||f0||_{H^{j+3/2+zeta}_2}.
inline double derivative_bound_check(const Equilibrium& eq,
                                     const Potential& pot, int j,
                                     double zeta_surplus,
                                     const DispersionGrid& grid) {
  if (j < 0) throw config_error("derivative_bound_check: j >= 0 required");
  if (eq.kind == equilibrium_kind::zero) return 0.0;
  grid.validate();
  double rhs = potential_l1_norm(pot) *
               equilibrium_hsigma_norm(eq, j + 1.5 + zeta_surplus, 2);
  if (!(rhs > 0.0)) return 0.0;
  double U = detail::radial_fourier_horizon(eq, j + 1, 1e-12,
                                            grid.time_quadrature.horizon);
  double best = 0.0;
  for (double km : grid.kmag_samples) {
    for (double om : grid.omega_samples) {
      double r = om / km;
      if (r < grid.tail_cut_m || r > grid.tail_cut_M) continue;
      double what = potential_hat(pot, vec3(km, 0.0, 0.0));
      // |k|^j d^j L pulls down (-i u)^j under the reduced integral.
      auto f = [&](double u) -> complex {
        double ph = -r * u;
        return complex(std::cos(ph), std::sin(ph)) *
               fourier_equilibrium(eq, u) * std::pow(u, j + 1);
      };
      auto I = integrate_oscillatory(f, 0.0, U, r);
      best = std::max(best, std::fabs(what) * std::abs(I.value) / rhs);
    }
  }
  return best;
}

// Full stability sweep: kappa, winding, route agreement, smallness margin.
inline StabilityReport stability_margin(const Equilibrium& eq,
                                        const Potential& pot,
                                        const DispersionGrid& grid,
                                        unsigned threads = 1) {
  grid.validate();
  StabilityReport rep;

  // Fix the convention constant once at the reference probe.
  {
    complex lt = dispersion_time(eq, pot, 1.0, 1.0);
    complex lp = dispersion_penrose(eq, pot, 1.0, 1.0);
    double den = std::norm(lp);
    rep.convention_constant =
        (den > 1e-30) ? (lt.real() * lp.real() + lt.imag() * lp.imag()) / den
                      : std::pow(two_pi, -eq.dim);
  }

  struct probe_out {
    double dist = std::numeric_limits<double>::infinity();
    double omega = 0.0, kmag = 0.0;
    double agreement = 0.0;
    bool winding_ok = true;
  };
  std::vector<probe_out> per_k(grid.kmag_samples.size());

  parallel_for(grid.kmag_samples.size(), threads, [&](std::size_t ik) {
    double km = grid.kmag_samples[ik];
    probe_out out;
    out.kmag = km;
    std::vector<complex> band_vals;
    std::vector<double> band_omegas;
    std::size_t count = 0;
    for (double om : grid.omega_samples) {
      double r = om / km;
      if (r < grid.tail_cut_m || r > grid.tail_cut_M) continue;
      complex lt = dispersion_time(eq, pot, om, km,
                                   grid.time_quadrature.horizon,
                                   grid.time_quadrature.step > 0.0
                                       ? grid.time_quadrature.step
                                       : 0.5);
      band_vals.push_back(lt);
      band_omegas.push_back(om);
      double dist = std::abs(lt - complex(1.0, 0.0));
      if (dist < out.dist) {
        out.dist = dist;
        out.omega = om;
      }
      if (count % 4 == 0) {
        complex lp = dispersion_penrose(eq, pot, om, km);
        out.agreement = std::max(
            out.agreement, std::abs(lt - rep.convention_constant * lp) /
                               (1.0 + std::abs(lt)));
      }
      ++count;
    }
    // Winding of 1 - L along omega in (-inf, inf), using conjugate symmetry
    // and that L -> 0 at the band edges (closure through 1).
    if (!band_vals.empty()) {
      std::vector<complex> path;
      path.emplace_back(1.0, 0.0);
      for (std::size_t i = band_vals.size(); i-- > 0;)
        path.push_back(complex(1.0, 0.0) - std::conj(band_vals[i]));
      for (const auto& v : band_vals)
        path.push_back(complex(1.0, 0.0) - v);
      path.emplace_back(1.0, 0.0);
      double wind = 0.0;
      for (std::size_t i = 1; i < path.size(); ++i)
        wind += std::arg(path[i] / path[i - 1]);
      out.winding_ok = std::fabs(wind) < pi;
    }
    per_k[ik] = out;
  });

  rep.kappa = std::numeric_limits<double>::infinity();
  for (const auto& o : per_k) {
    if (o.dist < rep.kappa) {
      rep.kappa = o.dist;
      rep.argmin_omega = o.omega;
      rep.argmin_kmag = o.kmag;
    }
    rep.method_agreement = std::max(rep.method_agreement, o.agreement);
    rep.winding_ok = rep.winding_ok && o.winding_ok;
  }
  if (!std::isfinite(rep.kappa)) rep.kappa = 1.0;  // empty band
  if (eq.kind == equilibrium_kind::zero ||
      pot.kind == potential_kind::zero)
    rep.kappa = 1.0;  // L == 0 identically
  rep.kappa_certified = std::min(rep.kappa, 0.5);
  rep.cross_validation_ok = rep.method_agreement <= 1e-6;
  rep.unstable_flag = !rep.winding_ok;
  try {
    rep.small_data_margin = small_data_check(eq, pot);
  } catch (const domain_error&) {
    rep.small_data_margin = std::numeric_limits<double>::quiet_NaN();
  }
  return rep;
}

}  // namespace landau

#endif
