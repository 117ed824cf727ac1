#ifndef LANDAU_ECHO_HPP
#define LANDAU_ECHO_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "landau/core.hpp"
#include "landau/quadrature.hpp"

namespace landau {

// Two-point reaction kernel
//   Kbar(t,tau,k,l) = C |k|^{1/2} |l|^{1/2} <tau> / ( <l>^2 <k-l, kt-l tau>^beta )
// with beta = sigma_1 - 1 and the paired bracket
// <a,b> = (1 + |a|^2 + |b|^2)^{1/2}.
struct EchoParams {
  double beta = 12.0;     // bracket exponent, sigma_1 - 1
  double zeta = 0.9;      // resonant-cylinder shrink rate, in (4/5, 1)
  double prefactor = 1.0;
  double t_star = 40.0;   // time horizon for column sums
  int dim = 3;

  double b() const { return 1.0 / beta; }  // cylinder radius exponent

  // The summability estimates are only proved for beta > 10; smaller beta is
  // allowed for exploratory runs but is flagged.
  bool regime_ok() const { return beta > 10.0; }

  void validate(bool strict_regime = false) const {
    if (!(beta > 0.0)) throw config_error("echo: beta must be > 0");
    if (!(zeta > 0.8 && zeta < 1.0))
      throw config_error("echo: zeta must lie in (4/5, 1)");
    if (!(t_star > 0.0)) throw config_error("echo: T* must be > 0");
    if (dim != 3) throw config_error("echo: continuum sums require dim == 3");
    if (strict_regime && !regime_ok())
      throw config_error("echo: beta <= 10 outside the certified regime");
  }
};

inline double kernel_bound(const EchoParams& par, double t, double tau,
                           const vec3& k, const vec3& l) {
  if (tau < 0.0 || tau > t) throw domain_error("echo: need 0 <= tau <= t");
  vec3 dk = k - l;
  vec3 dphase = t * k - tau * l;
  double br = std::sqrt(1.0 + dk.norm2() + dphase.norm2());
  double lb = jbracket(l.norm());
  return par.prefactor * std::sqrt(k.norm()) * std::sqrt(l.norm()) *
         jbracket(tau) / (lb * lb * std::pow(br, par.beta));
}

// Resonant cylinder around the k axis: |l_perp| < (1+tau)^{-zeta} |k|^{1/b}...
// radius in l_perp at reaction time tau.
inline double resonant_radius(const EchoParams& par, double tau, double kmag) {
  return std::pow(1.0 + tau, -par.zeta) * std::pow(kmag, par.b());
}

inline bool resonant_region(const EchoParams& par, double tau, const vec3& k,
                            const vec3& l) {
  double km = k.norm();
  if (km == 0.0) return false;
  double lpar = dot(k, l) / km;
  vec3 lperp = l - (lpar / km) * k;
  return lperp.norm() < resonant_radius(par, tau, km);
}

// Predicted echo time for a mode pair: the phase kt - l tau is stationary at
// t = (l . k_hat) tau / |k|. Empty when no constructive alignment exists.
inline std::optional<double> echo_time_prediction(const vec3& l, double tau,
                                                  const vec3& k) {
  double km = k.norm();
  if (km == 0.0) throw domain_error("echo: k must be nonzero");
  double t = dot(k, l) * tau / (km * km);
  if (t <= tau) return std::nullopt;
  return t;
}

enum class schur_method { oracle, decomposed };

struct SchurZones {
  double total = 0.0;
  double early = 0.0;      // tau < min(1, horizon)
  double resonant = 0.0;   // inside the shrinking cylinder
  double nonresonant = 0.0;
};

namespace detail {

// Axisymmetric reduction: with k along the axis and l = (lpar, rho) in
// cylindrical coordinates, |k-l|^2 = (km-lpar)^2 + rho^2 and
// |kt - l tau|^2 = (km t - lpar tau)^2 + rho^2 tau^2.
inline double row_integrand(const EchoParams& par, double t, double km,
                            double tau, double lpar, double rho) {
  double lm = std::hypot(lpar, rho);
  double a2 = 1.0 + (km - lpar) * (km - lpar) + rho * rho +
              (km * t - lpar * tau) * (km * t - lpar * tau) +
              rho * rho * tau * tau;
  double lb = 1.0 + lm * lm;
  return par.prefactor * std::sqrt(km) * std::sqrt(lm) * jbracket(tau) /
         (lb * std::pow(a2, par.beta / 2.0)) * two_pi * rho;
}

// Same reduction around the l axis for column sums: k = (kpar, krho),
// |k-l|^2 = (kpar-lm)^2 + krho^2, |kt - l tau|^2 = (kpar t - lm tau)^2 +
// krho^2 t^2.
inline double col_integrand(const EchoParams& par, double tau, double lm,
                            double t, double kpar, double krho) {
  double kmag = std::hypot(kpar, krho);
  double a2 = 1.0 + (kpar - lm) * (kpar - lm) + krho * krho +
              (kpar * t - lm * tau) * (kpar * t - lm * tau) +
              krho * krho * t * t;
  double lb = 1.0 + lm * lm;
  return par.prefactor * std::sqrt(kmag) * std::sqrt(lm) * jbracket(tau) /
         (lb * std::pow(a2, par.beta / 2.0)) * two_pi * krho;
}

// l-integral of the row integrand over the slab rho in [rho_lo, rho_hi)
// (rho_hi < 0 means infinity). The bracket argument is exactly radial after
// recentering and rescaling:
//   (km-lpar)^2 + (km t - lpar tau)^2 = A* + (1+tau^2)(lpar - l*)^2,
//   rho^2 + rho^2 tau^2              = (1+tau^2) rho^2,
// with l* = km (1 + t tau)/(1+tau^2) and A* = km^2 (t-tau)^2/(1+tau^2).
// In polar coordinates (q, w) = sqrt(1+tau^2) (lpar - l*, rho) the power
// becomes (1 + A* + r^2)^{-beta/2}, leaving a smooth angular factor.
// Antiderivatives for the closed-form angular integrals. With c = cos(phi)
// the squared mode magnitude along the polar circle is exactly a + b c, so
// angular integrals of sin(phi) X(sqrt(a + b c)) reduce to integrals of X
// in u = a + b c.
//   quarter_log_primitive:  d/du [.] = u^{1/4} / (1 + u)   (row weight)
//   five_quarter_primitive: d/du [.] = u^{1/4}             (column weight)
inline double quarter_log_primitive(double u) {
  double y = std::pow(std::max(u, 0.0), 0.25);
  double r2 = std::sqrt(2.0);
  double f4 = (std::log((y * y + r2 * y + 1.0) / (y * y - r2 * y + 1.0)) +
               2.0 * std::atan(r2 * y + 1.0) + 2.0 * std::atan(r2 * y - 1.0)) /
              (4.0 * r2);
  return 4.0 * y - 4.0 * f4;
}

inline double five_quarter_primitive(double u) {
  return 0.8 * std::pow(std::max(u, 0.0), 1.25);
}

// Integral of sin(phi) X(sqrt(a + b cos(phi))) over the phi set where
// sin(phi) lies in [sin_lo, sin_hi) intersected with cos(phi) in [cmin, cmax],
// given the primitive P of X in u. Both mirror branches of (0, pi) included.
template <class Primitive>
inline double angular_weight(double a, double b, double sin_lo, double sin_hi,
                             double cmin, double cmax, Primitive P) {
  if (sin_hi <= sin_lo) return 0.0;
  double c_lo = std::sqrt(std::max(0.0, 1.0 - sin_lo * sin_lo));
  double c_hi = std::sqrt(std::max(0.0, 1.0 - sin_hi * sin_hi));
  // Branch phi in (0, pi/2]: c in [c_hi, c_lo]; mirror: c in [-c_lo, -c_hi].
  double seg[2][2] = {{c_hi, c_lo}, {-c_lo, -c_hi}};
  double total = 0.0;
  for (auto& sg : seg) {
    double lo = std::max(sg[0], cmin), hi = std::min(sg[1], cmax);
    if (hi <= lo) continue;
    if (b > 1e-12 * (1.0 + std::fabs(a))) {
      total += (P(a + b * hi) - P(a + b * lo)) / b;
    } else {
      // Degenerate circle: the magnitude is constant across the arc, so the
      // weight is X(sqrt(a)) recovered as a difference quotient of P.
      double du = 1e-8 * (1.0 + std::fabs(a));
      total += (hi - lo) * (P(a + du) - P(a)) / du;
    }
  }
  return total;
}

inline double row_lpar_integral(const EchoParams& par, double t, double km,
                                double tau, double rho_lo, double rho_hi,
                                double tol) {
  double s2 = 1.0 + tau * tau;
  double s = std::sqrt(s2);
  double lstar = km * (1.0 + t * tau) / s2;
  double D = 1.0 + km * km * (t - tau) * (t - tau) / s2;  // 1 + A*
  double pref = par.prefactor * two_pi * std::sqrt(km) * jbracket(tau) /
                (s2 * s);
  // Angular weight sin(phi) |l|^{1/2} / <l>^2 with
  // |l|^2 = l*^2 + r^2/s^2 + 2 l* (r/s) cos(phi): closed form in u = |l|^2.
  auto f = [&](double r) {
    if (r <= 0.0) return 0.0;
    double a = lstar * lstar + (r / s) * (r / s);
    double b = 2.0 * lstar * r / s;
    double sin_lo = std::min(1.0, s * rho_lo / r);
    double sin_hi = (rho_hi < 0.0) ? 1.0 : std::min(1.0, s * rho_hi / r);
    double ang = angular_weight(a, b, sin_lo, sin_hi, -1.0, 1.0,
                                quarter_log_primitive);
    return r * r * std::pow(D + r * r, -par.beta / 2.0) * ang;
  };
  return pref *
         integrate_semi_infinite(f, 0.0, tol, 1e-16, std::sqrt(D)).value;
}

// Direct Cartesian nesting over (lpar, |l_perp|) used by the row oracle.
inline double row_rho_integral(const EchoParams& par, double t, double km,
                               double tau, double lpar, double tol) {
  auto f = [&](double rho) {
    return row_integrand(par, t, km, tau, lpar, rho);
  };
  double s2 = 1.0 + tau * tau;
  double a_here = 1.0 + (km - lpar) * (km - lpar) +
                  (km * t - lpar * tau) * (km * t - lpar * tau);
  return integrate_semi_infinite(f, 0.0, tol, 1e-14, std::sqrt(a_here / s2))
      .value;
}

inline double row_l_direct(const EchoParams& par, double t, double km,
                           double tau, double tol) {
  double s2 = 1.0 + tau * tau;
  double lstar = km * (1.0 + t * tau) / s2;
  double width = std::sqrt((1.0 + km * km * (t - tau) * (t - tau) / s2) / s2);
  auto f = [&](double y) {
    return row_rho_integral(par, t, km, tau, lstar + y, tol * 0.3);
  };
  double scale = std::max(width, 1.0 + std::fabs(lstar));
  return integrate_real_line(f, tol, 1e-14, scale).value;
}

// t-slice of the column sum: integral over the k slab krho in [lo, hi)
// (hi < 0 means infinity), optionally clipped to the frequency cylinder
// |kpar| <= k_window, krho <= k_window. Exact radial structure:
//   (kpar-lm)^2 + (kpar t - lm tau)^2 = B* + (1+t^2)(kpar - k*)^2,
// k* = lm (1 + t tau)/(1+t^2), B* = lm^2 (t-tau)^2/(1+t^2), and the
// krho^2 (1+t^2) term completes a circle in (q, w) = sqrt(1+t^2)
// (kpar - k*, krho). The angular weight sin(phi) |k|^{1/2} integrates in
// closed form since |k|^2 = k*^2 + r^2/(1+t^2) + 2 k* (r/s) cos(phi).
inline double col_kslab_integral(const EchoParams& par, double tau, double lm,
                                 double t, double rho_lo, double rho_hi,
                                 double k_window, double tol) {
  double s2 = 1.0 + t * t;
  double s = std::sqrt(s2);
  double kstar = lm * (1.0 + t * tau) / s2;
  double D = 1.0 + lm * lm * (t - tau) * (t - tau) / s2;
  double lb = 1.0 + lm * lm;
  double pref = par.prefactor * two_pi * std::sqrt(lm) * jbracket(tau) /
                (lb * s2 * s);
  if (k_window >= 0.0)
    rho_hi = (rho_hi < 0.0) ? k_window : std::min(rho_hi, k_window);
  auto f = [&](double r) {
    if (r <= 0.0) return 0.0;
    double a = kstar * kstar + (r / s) * (r / s);
    double b = 2.0 * kstar * r / s;
    double sin_lo = std::min(1.0, s * rho_lo / r);
    double sin_hi = (rho_hi < 0.0) ? 1.0 : std::min(1.0, s * rho_hi / r);
    double cmin = -1.0, cmax = 1.0;
    if (k_window >= 0.0) {
      cmin = std::max(cmin, (-k_window - kstar) * s / r);
      cmax = std::min(cmax, (k_window - kstar) * s / r);
    }
    double ang = angular_weight(a, b, sin_lo, sin_hi, cmin, cmax,
                                five_quarter_primitive);
    return r * r * std::pow(D + r * r, -par.beta / 2.0) * ang;
  };
  return pref *
         integrate_semi_infinite(f, 0.0, tol, 1e-16, std::sqrt(D)).value;
}

// Direct Cartesian nesting over (kpar, krho) used by the column oracle.
inline double col_krho_integral(const EchoParams& par, double tau, double lm,
                                double t, double kpar, double lo, double hi,
                                double k_window, double tol) {
  auto f = [&](double krho) {
    return col_integrand(par, tau, lm, t, kpar, krho);
  };
  if (k_window >= 0.0) hi = (hi < 0.0) ? k_window : std::min(hi, k_window);
  double s2 = 1.0 + t * t;
  double a_here = 1.0 + (kpar - lm) * (kpar - lm) +
                  (kpar * t - lm * tau) * (kpar * t - lm * tau);
  if (hi < 0.0)
    return integrate_semi_infinite(f, lo, tol, 1e-14,
                                   std::sqrt(a_here / s2))
        .value;
  if (hi <= lo) return 0.0;
  return integrate_adaptive(f, lo, hi, tol, 1e-14).value;
}

inline double col_kpar_integral(const EchoParams& par, double tau, double lm,
                                double t, double krho_lo, double krho_hi,
                                double k_window, double tol) {
  double s2 = 1.0 + t * t;
  double kstar = lm * (1.0 + t * tau) / s2;
  double width = std::sqrt((1.0 + lm * lm * (t - tau) * (t - tau) / s2) / s2);
  auto f = [&](double y) {
    return col_krho_integral(par, tau, lm, t, kstar + y, krho_lo, krho_hi,
                             k_window, tol * 0.3);
  };
  if (k_window >= 0.0)
    return integrate_adaptive(f, -k_window - kstar, k_window - kstar, tol,
                              1e-14)
        .value;
  double scale = std::max(width, 1.0 + std::fabs(kstar));
  return integrate_real_line(f, tol, 1e-14, scale).value;
}

}  // namespace detail

// Row sum: integral over tau in [0, t] and l in R^3 of Kbar(t,tau,k,l).
// oracle: single straightforward nested quadrature of the full kernel.
// decomposed: early / resonant / non-resonant zones evaluated separately;
// their exact integrals must reassemble the oracle (zone additivity).
inline SchurZones row_sum_zones(const EchoParams& par, double t, double kmag,
                                schur_method method, double rel_tol = 1e-4) {
  par.validate();
  if (!(t > 0.0) || !(kmag > 0.0))
    throw domain_error("echo: row sum needs t > 0 and |k| > 0");
  SchurZones z;
  if (method == schur_method::oracle) {
    auto f = [&](double tau) {
      return detail::row_l_direct(par, t, kmag, tau, rel_tol * 0.3);
    };
    z.total = integrate_adaptive(f, 0.0, t, rel_tol, 1e-14).value;
    return z;
  }
  double t_early = std::min(1.0, t);
  auto f_early = [&](double tau) {
    return detail::row_lpar_integral(par, t, kmag, tau, 0.0, -1.0,
                                     rel_tol * 0.3);
  };
  z.early = integrate_adaptive(f_early, 0.0, t_early, rel_tol, 1e-14).value;
  if (t > 1.0) {
    auto f_res = [&](double tau) {
      double r = resonant_radius(par, tau, kmag);
      return detail::row_lpar_integral(par, t, kmag, tau, 0.0, r,
                                       rel_tol * 0.3);
    };
    auto f_non = [&](double tau) {
      double r = resonant_radius(par, tau, kmag);
      return detail::row_lpar_integral(par, t, kmag, tau, r, -1.0,
                                       rel_tol * 0.3);
    };
    z.resonant = integrate_adaptive(f_res, t_early, t, rel_tol, 1e-14).value;
    z.nonresonant =
        integrate_adaptive(f_non, t_early, t, rel_tol, 1e-14).value;
  }
  z.total = z.early + z.resonant + z.nonresonant;
  return z;
}

inline double row_sum(const EchoParams& par, double t, double kmag,
                      schur_method method, double rel_tol = 1e-4) {
  return row_sum_zones(par, t, kmag, method, rel_tol).total;
}

// Column sum: integral over t in [tau, T*] and k in R^3 of Kbar(t,tau,k,l).
// The dual zone split uses the cylinder radius at the reaction time tau.
// k_window < 0 integrates over all of R^3; a nonnegative window clips the
// k domain to the cylinder around span(l) of half-length and radius k_window
// (used by the horizon-doubling study to exhaust the frequency domain).
inline SchurZones column_sum_zones(const EchoParams& par, double tau,
                                   double lmag, schur_method method,
                                   double rel_tol = 1e-4,
                                   double k_window = -1.0) {
  par.validate();
  if (tau < 0.0 || tau >= par.t_star || !(lmag > 0.0))
    throw domain_error("echo: column sum needs 0 <= tau < T* and |l| > 0");
  SchurZones z;
  double T = par.t_star;
  if (method == schur_method::oracle) {
    auto f = [&](double t) {
      return detail::col_kpar_integral(par, tau, lmag, t, 0.0, -1.0,
                                       k_window, rel_tol * 0.3);
    };
    z.total = integrate_adaptive(f, tau, T, rel_tol, 1e-14).value;
    return z;
  }
  double t_early = std::min(tau + 1.0, T);
  auto f_early = [&](double t) {
    return detail::col_kslab_integral(par, tau, lmag, t, 0.0, -1.0,
                                      k_window, rel_tol * 0.3);
  };
  z.early = integrate_adaptive(f_early, tau, t_early, rel_tol, 1e-14).value;
  if (t_early < T) {
    double r = resonant_radius(par, tau, lmag);
    auto f_res = [&](double t) {
      return detail::col_kslab_integral(par, tau, lmag, t, 0.0, r,
                                        k_window, rel_tol * 0.3);
    };
    auto f_non = [&](double t) {
      return detail::col_kslab_integral(par, tau, lmag, t, r, -1.0,
                                        k_window, rel_tol * 0.3);
    };
    z.resonant = integrate_adaptive(f_res, t_early, T, rel_tol, 1e-14).value;
    z.nonresonant =
        integrate_adaptive(f_non, t_early, T, rel_tol, 1e-14).value;
  }
  z.total = z.early + z.resonant + z.nonresonant;
  return z;
}

inline double column_sum(const EchoParams& par, double tau, double lmag,
                         schur_method method, double rel_tol = 1e-4,
                         double k_window = -1.0) {
  return column_sum_zones(par, tau, lmag, method, rel_tol, k_window).total;
}

struct LatticeRowSum {
  double value = 0.0;      // sum over 0 < |l| <= cutoff of int_0^t Kbar dtau
  double resonant = 0.0;   // contribution of l colinear with k
  double tail_bound = 0.0; // rigorous bound on the discarded |l| > cutoff part
  std::size_t terms = 0;
};

// Periodic-box analogue: l ranges over the integer lattice. The resonant
// share is carried by the modes aligned with k (the only ones whose phase
// bracket collapses at the echo time), and exceeds the continuum share where
// the thin cylinder carries little volume.
inline LatticeRowSum lattice_row_sum(const EchoParams& par, double t,
                                     const vec3& k, int cutoff,
                                     double rel_tol = 1e-6) {
  par.validate();
  if (!(t > 0.0) || !(k.norm() > 0.0) || cutoff < 1)
    throw domain_error("echo: lattice row sum needs t > 0, k != 0, cutoff >= 1");
  LatticeRowSum out;
  double km = k.norm();
  for (int a = -cutoff; a <= cutoff; ++a)
    for (int b = -cutoff; b <= cutoff; ++b)
      for (int c = -cutoff; c <= cutoff; ++c) {
        if (a == 0 && b == 0 && c == 0) continue;
        vec3 l(static_cast<double>(a), static_cast<double>(b),
               static_cast<double>(c));
        if (l.norm() > static_cast<double>(cutoff) + 1e-12) continue;
        auto f = [&](double tau) { return kernel_bound(par, t, tau, k, l); };
        double term = integrate_adaptive(f, 0.0, t, rel_tol, 1e-300).value;
        out.value += term;
        ++out.terms;
        vec3 cross(k[1] * l[2] - k[2] * l[1], k[2] * l[0] - k[0] * l[2],
                   k[0] * l[1] - k[1] * l[0]);
        if (cross.norm() < 1e-12 * km * l.norm()) out.resonant += term;
      }
  // |l| > cutoff and cutoff >= 2|k|: the bracket dominates |l|/2, the tau
  // integral is below (t^2/2 + t), and each radial shell holds O(n^2) sites.
  double L = static_cast<double>(cutoff);
  if (L >= 2.0 * km && par.beta > 7.0 / 2.0) {
    double shells = 0.0;
    for (double n = L + 1.0; ; n += 1.0) {
      double add = 6.0 * n * n * std::pow(n, 0.5) /
                   ((n * n) * std::pow(n / 2.0, par.beta));
      shells += add;
      if (add < 1e-16 * shells || n > L + 4096.0) break;
    }
    out.tail_bound = par.prefactor * std::sqrt(km) * (0.5 * t * t + t) *
                     shells;
  } else {
    out.tail_bound = std::numeric_limits<double>::infinity();
  }
  return out;
}

// Horizon-doubling study. The summability statements take suprema over an
// unbounded domain (all times up to T*, all of frequency space), so each
// doubling step enlarges every truncated direction at once:
//   row part:    sup of row_sum(t, k) over probe times t <= T and the |k|
//                probe list (the time integral itself stops at t);
//   column part: column_sum(tau, l) with T* = T and the k integration
//                clipped to the window |k| <= T.
// A bounded operator shows ratios -> 1 under doubling; when summability
// fails the exhaustion grows without stabilizing.
struct SchurSweep {
  std::vector<double> horizons;        // doubling schedule, e.g. 10,20,40,80
  std::vector<double> row_values;      // row_sup per horizon (running sup)
  std::vector<double> col_values;      // column sum per horizon
  std::vector<double> row_ratios;      // successive-doubling ratios
  std::vector<double> col_ratios;
  bool stabilized = false;   // every doubling ratio within 10% of 1
  bool growing = false;      // column part monotone, final/initial > 2
  bool regime_flagged = false;
};

inline SchurSweep schur_horizon_sweep(const EchoParams& par,
                                      const std::vector<double>& horizons,
                                      const std::vector<double>& row_kmags,
                                      double col_lmag = 1.0,
                                      double col_tau = 1.0,
                                      double rel_tol = 1e-3,
                                      unsigned threads = 1) {
  if (horizons.size() < 2)
    throw config_error("echo sweep: need at least two horizons");
  for (std::size_t i = 1; i < horizons.size(); ++i)
    if (!(horizons[i] > horizons[i - 1]))
      throw config_error("echo sweep: horizons must increase");
  SchurSweep sw;
  sw.horizons = horizons;
  sw.regime_flagged = !par.regime_ok();

  const std::size_t nh = horizons.size(), nk = row_kmags.size();
  std::vector<double> rows(nh * nk, 0.0);
  std::vector<double> cols(nh, 0.0);
  parallel_for(nh * nk + nh, threads, [&](std::size_t j) {
    if (j < nh * nk) {
      std::size_t ih = j / nk, ik = j % nk;
      rows[j] = row_sum(par, horizons[ih], row_kmags[ik],
                        schur_method::decomposed, rel_tol);
    } else {
      std::size_t ih = j - nh * nk;
      EchoParams loc = par;
      loc.t_star = horizons[ih];
      cols[ih] = column_sum(loc, col_tau, col_lmag,
                            schur_method::decomposed, rel_tol, horizons[ih]);
    }
  });
  sw.row_values.assign(nh, 0.0);
  double run = 0.0;
  for (std::size_t ih = 0; ih < nh; ++ih) {
    for (std::size_t ik = 0; ik < nk; ++ik)
      run = std::max(run, rows[ih * nk + ik]);
    sw.row_values[ih] = run;
  }
  sw.col_values = cols;
  sw.stabilized = true;
  for (std::size_t i = 1; i < nh; ++i) {
    double rr = sw.row_values[i] / sw.row_values[i - 1];
    double cr = sw.col_values[i] / sw.col_values[i - 1];
    sw.row_ratios.push_back(rr);
    sw.col_ratios.push_back(cr);
    if (!(std::fabs(rr - 1.0) <= 0.1 && std::fabs(cr - 1.0) <= 0.1))
      sw.stabilized = false;
  }
  bool monotone = true;
  for (std::size_t i = 1; i < nh; ++i)
    if (!(sw.col_values[i] > sw.col_values[i - 1])) monotone = false;
  sw.growing = monotone && sw.col_values.back() > 2.0 * sw.col_values.front();
  return sw;
}

}  // namespace landau

#endif
