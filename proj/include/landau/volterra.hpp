#ifndef LANDAU_VOLTERRA_HPP
#define LANDAU_VOLTERRA_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "landau/core.hpp"
#include "landau/fft.hpp"
#include "landau/model.hpp"

namespace landau {

// K^0(t,k) = -f0_hat(kt) W_hat(k) |k|^2 t. Real-valued for radial real f0.
inline complex kernel_k0(const Equilibrium& eq, const Potential& pot, double t,
                         const vec3& k) {
  if (t < 0.0) throw domain_error("kernel_k0: t >= 0 required");
  double km = k.norm();
  double what = potential_hat(pot, k);
  if (what == 0.0 || km == 0.0) return {0.0, 0.0};
  return {-fourier_equilibrium(eq, km * t) * what * km * km * t, 0.0};
}

inline complex kernel_k0(const Equilibrium& eq, const Potential& pot, double t,
                         double kmag) {
  vec3 k(kmag, 0.0, 0.0);
  k.dim = eq.dim;
  return kernel_k0(eq, pot, t, k);
}

// Per-mode linear problem phi = H + K0 * phi on a uniform time grid.
// The grid horizon may exceed T* (for horizon studies); the forcing is
// extended by zero beyond T*.
struct VolterraProblem {
  vec3 k;
  double dt = 0.0;
  double t_star = 0.0;           // forcing support bound
  std::vector<complex> forcing;  // H(t_j, k), t_j = j dt
  std::vector<complex> kernel;   // K0(t_j, k)
  double weight_alpha = 0.0;     // |k|^alpha exponent in the A-weight
  int weight_s = 0;              // <k, kt>^s exponent

  double horizon() const {
    return dt * static_cast<double>(forcing.size() - 1);
  }

  void validate() const {
    if (!(dt > 0.0)) throw config_error("volterra: dt must be > 0");
    if (forcing.size() != kernel.size() || forcing.size() < 2)
      throw config_error("volterra: forcing/kernel sample mismatch");
    if (!(t_star > 0.0)) throw config_error("volterra: T* must be > 0");
  }
};

inline VolterraProblem make_volterra_problem(
    const Equilibrium& eq, const Potential& pot, const vec3& k, double dt,
    double t_star, double horizon,
    const std::function<complex(double)>& forcing_of_t, double weight_alpha,
    int weight_s) {
  VolterraProblem p;
  p.k = k;
  p.dt = dt;
  p.t_star = t_star;
  p.weight_alpha = weight_alpha;
  p.weight_s = weight_s;
  auto n = static_cast<std::size_t>(std::llround(horizon / dt)) + 1;
  p.forcing.resize(n);
  p.kernel.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    double t = dt * static_cast<double>(j);
    p.forcing[j] = (t < t_star) ? forcing_of_t(t) : complex(0.0, 0.0);
    p.kernel[j] = kernel_k0(eq, pot, t, k);
  }
  return p;
}

struct DampingSolution {
  std::vector<complex> phi;
  double weighted_l2 = 0.0;          // || |k|^a <k,kt>^s phi ||_{L^2_t}
  double forcing_weighted_l2 = 0.0;  // same weight on H
  double cld_ratio = 0.0;
};

namespace detail {

inline double a_weight(const VolterraProblem& p, double t) {
  double km = p.k.norm();
  return std::pow(km, p.weight_alpha) *
         std::pow(kkt_bracket(km, t), p.weight_s);
}

inline DampingSolution finish_solution(const VolterraProblem& p,
                                       std::vector<complex> phi) {
  DampingSolution s;
  s.phi = std::move(phi);
  double acc_phi = 0.0, acc_h = 0.0;
  std::size_t n = s.phi.size();
  for (std::size_t j = 0; j < n; ++j) {
    double w = a_weight(p, p.dt * static_cast<double>(j));
    double tz = (j == 0 || j + 1 == n) ? 0.5 : 1.0;  // trapezoid in t
    acc_phi += tz * w * w * std::norm(s.phi[j]);
    acc_h += tz * w * w * std::norm(p.forcing[j]);
  }
  s.weighted_l2 = std::sqrt(acc_phi * p.dt);
  s.forcing_weighted_l2 = std::sqrt(acc_h * p.dt);
  s.cld_ratio = (s.forcing_weighted_l2 > 0.0)
                    ? s.weighted_l2 / s.forcing_weighted_l2
                    : 0.0;
  return s;
}

}  // namespace detail

// Product-trapezoidal marching (order 2).
inline DampingSolution solve_time(const VolterraProblem& p) {
  p.validate();
  double kmax = 0.0;
  for (const auto& kv : p.kernel) kmax = std::max(kmax, std::abs(kv));
  if (p.dt * kmax >= 0.5)
    throw config_error("volterra: dt * max|K0| >= 1/2, refine the time step");
  std::size_t n = p.forcing.size();
  std::vector<complex> phi(n);
  phi[0] = p.forcing[0];
  for (std::size_t m = 1; m < n; ++m) {
    complex conv = 0.5 * p.kernel[m] * phi[0];
    for (std::size_t j = 1; j < m; ++j) conv += p.kernel[m - j] * phi[j];
    phi[m] = (p.forcing[m] + p.dt * conv) /
             (1.0 - 0.5 * p.dt * p.kernel[0]);
  }
  return detail::finish_solution(p, std::move(phi));
}

// Frequency-domain route: zero-extend, FFT, divide by 1 - K0_tilde(omega),
// invert. The padded horizon is >= 4x the sample horizon to keep circular
// wrap-around below ~1e-8. Solves the same discrete system as solve_time
// (the trapezoid endpoint correction is folded into the forcing), so the two
// routes agree up to wrap-around on any common grid.
inline DampingSolution solve_frequency(const VolterraProblem& p,
                                       double kappa_floor = 1e-3) {
  p.validate();
  std::size_t n = p.forcing.size();
  std::size_t npad = 1;
  while (npad < 4 * n) npad <<= 1;

  std::vector<complex> hw(npad, complex(0.0, 0.0));
  std::vector<complex> kw(npad, complex(0.0, 0.0));
  for (std::size_t j = 0; j < n; ++j) {
    // Trapezoid correction: H' = H - (dt/2) H(0) K.
    hw[j] = p.forcing[j] - 0.5 * p.dt * p.forcing[0] * p.kernel[j];
    kw[j] = p.kernel[j];
  }
  fft_inplace(hw, -1);
  fft_inplace(kw, -1);
  for (std::size_t m = 0; m < npad; ++m) {
    // denom = 1 - L(i omega_m, k) in its discrete realization.
    complex denom = 1.0 + 0.5 * p.dt * p.kernel[0] - p.dt * kw[m];
    if (std::abs(denom) < kappa_floor)
      throw accuracy_error(
          "volterra: |1 - L(i omega, k)| below the kappa floor; stability "
          "condition (L) violated or nearly so");
    hw[m] /= denom;
  }
  fft_inplace(hw, +1);
  std::vector<complex> phi(n);
  for (std::size_t j = 0; j < n; ++j)
    phi[j] = hw[j] / static_cast<double>(npad);
  return detail::finish_solution(p, std::move(phi));
}

// Shipped forcing families.
enum class forcing_family { a_weighted_bump, gaussian_t };

// Bump matching the initial-data shape rho_0(t,k) = h_in_hat(k, kt):
// Gaussian in k times Gaussian in kt.
inline std::function<complex(double)> make_forcing(forcing_family fam,
                                                   const vec3& k) {
  double km = k.norm();
  switch (fam) {
    case forcing_family::a_weighted_bump:
      return [km](double t) -> complex {
        double kt = km * t;
        return std::exp(-km * km / 2.0) * std::exp(-kt * kt / 8.0);
      };
    case forcing_family::gaussian_t:
      return [](double t) -> complex {
        double u = t - 5.0;
        return std::exp(-u * u / 2.0);
      };
  }
  return [](double) { return complex(0.0, 0.0); };
}

struct DampingConstantReport {
  std::vector<double> kmags;
  std::vector<double> ratios;  // cld per k
  double sup_ratio = 0.0;
};

// Empirical C_LD: sup over k of the weighted output/input L^2_t ratio.
inline DampingConstantReport damping_constant(
    const Equilibrium& eq, const Potential& pot, forcing_family fam,
    double weight_alpha, int weight_s, const std::vector<double>& kgrid,
    double dt, double t_star, unsigned threads = 1) {
  DampingConstantReport rep;
  rep.kmags = kgrid;
  rep.ratios.assign(kgrid.size(), 0.0);
  parallel_for(kgrid.size(), threads, [&](std::size_t i) {
    vec3 k(kgrid[i], 0.0, 0.0);
    k.dim = eq.dim;
    auto p = make_volterra_problem(eq, pot, k, dt, t_star, t_star,
                                   make_forcing(fam, k), weight_alpha,
                                   weight_s);
    rep.ratios[i] = solve_time(p).cld_ratio;
  });
  for (double r : rep.ratios) rep.sup_ratio = std::max(rep.sup_ratio, r);
  return rep;
}

}  // namespace landau

#endif
