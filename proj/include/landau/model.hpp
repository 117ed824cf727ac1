#ifndef LANDAU_MODEL_HPP
#define LANDAU_MODEL_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "landau/core.hpp"
#include "landau/fft.hpp"
#include "landau/quadrature.hpp"

namespace landau {

// Natural cubic spline on strictly increasing nodes. Tabulated equilibria
// interpolate with this; the derivative comes from the interpolant.
class cubic_spline {
 public:
  cubic_spline() = default;
  cubic_spline(std::vector<double> x, std::vector<double> y)
      : x_(std::move(x)), y_(std::move(y)) {
    std::size_t n = x_.size();
    if (n < 3 || y_.size() != n)
      throw config_error("spline: need >= 3 samples on a common grid");
    for (std::size_t i = 1; i < n; ++i)
      if (!(x_[i] > x_[i - 1]))
        throw config_error("spline: nodes must be strictly increasing");
    m_.assign(n, 0.0);
    std::vector<double> a(n, 0.0), b(n, 1.0), c(n, 0.0), r(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      double h0 = x_[i] - x_[i - 1];
      double h1 = x_[i + 1] - x_[i];
      a[i] = h0 / 6.0;
      b[i] = (h0 + h1) / 3.0;
      c[i] = h1 / 6.0;
      r[i] = (y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0;
    }
    for (std::size_t i = 1; i < n; ++i) {
      double w = a[i] / b[i - 1];
      b[i] -= w * c[i - 1];
      r[i] -= w * r[i - 1];
    }
    m_[n - 1] = r[n - 1] / b[n - 1];
    for (std::size_t i = n - 1; i-- > 0;)
      m_[i] = (r[i] - c[i] * m_[i + 1]) / b[i];
  }

  double min_x() const { return x_.front(); }
  double max_x() const { return x_.back(); }

  double operator()(double xq) const { return eval(xq).first; }
  double derivative(double xq) const { return eval(xq).second; }

 private:
  std::pair<double, double> eval(double xq) const {
    if (xq < x_.front() || xq > x_.back())
      throw domain_error("spline: query outside tabulated range");
    auto it = std::upper_bound(x_.begin(), x_.end(), xq);
    std::size_t i = std::min<std::size_t>(
        x_.size() - 2, static_cast<std::size_t>(
                           std::max<std::ptrdiff_t>(0, it - x_.begin() - 1)));
    double h = x_[i + 1] - x_[i];
    double A = (x_[i + 1] - xq) / h;
    double B = (xq - x_[i]) / h;
    double v = A * y_[i] + B * y_[i + 1] +
               ((A * A * A - A) * m_[i] + (B * B * B - B) * m_[i + 1]) *
                   (h * h) / 6.0;
    double dv = (y_[i + 1] - y_[i]) / h -
                (3.0 * A * A - 1.0) / 6.0 * h * m_[i] +
                (3.0 * B * B - 1.0) / 6.0 * h * m_[i + 1];
    return {v, dv};
  }

  std::vector<double> x_, y_;
  std::vector<double> m_;
};

// ---------------------------------------------------------------------------
// Equilibrium f^0
// ---------------------------------------------------------------------------

enum class equilibrium_kind { maxwellian, zero, tabulated };

struct radial_table {
  std::vector<double> radius;
  std::vector<double> value;       // f^0(r)
  std::vector<double> derivative;  // (f^0)'(r), on the same grid
  bool radial = true;
};

struct Equilibrium {
  equilibrium_kind kind = equilibrium_kind::maxwellian;
  int dim = 3;
  double theta = 1.0;  // temperature, maxwellian only
  double mass = 1.0;   // \int f^0 dv
  double decay_exponent = 4.0;
  std::optional<radial_table> table;

  // Interpolants built lazily-by-constructor for tabulated profiles.
  cubic_spline value_spline;
  cubic_spline deriv_spline;

  static Equilibrium maxwellian(int d, double theta, double mass) {
    if (d < 1 || d > 3) throw config_error("equilibrium: dimension must be 1..3");
    if (!(theta > 0.0)) throw config_error("equilibrium: theta must be > 0");
    if (!(mass > 0.0)) throw config_error("equilibrium: mass must be > 0");
    Equilibrium e;
    e.kind = equilibrium_kind::maxwellian;
    e.dim = d;
    e.theta = theta;
    e.mass = mass;
    return e;
  }

  static Equilibrium zero(int d = 3) {
    Equilibrium e;
    e.kind = equilibrium_kind::zero;
    e.dim = d;
    e.mass = 0.0;
    return e;
  }

  static Equilibrium tabulated(int d, radial_table t) {
    if (t.radius.size() != t.value.size() ||
        t.radius.size() != t.derivative.size())
      throw config_error(
          "equilibrium: tabulated profile needs f0 and its radial derivative "
          "on a common grid");
    for (double v : t.value)
      if (v < 0.0) throw config_error("equilibrium: tabulated f0 must be >= 0");
    Equilibrium e;
    e.kind = equilibrium_kind::tabulated;
    e.dim = d;
    e.table = t;
    e.value_spline = cubic_spline(t.radius, t.value);
    e.deriv_spline = cubic_spline(t.radius, t.derivative);
    // Mass from the radial profile.
    double surf = (d == 1) ? 2.0 : (d == 2 ? two_pi : 2.0 * two_pi);
    auto integ = integrate_adaptive(
        [&](double r) {
          return e.value_spline(r) * std::pow(r, d - 1);
        },
        t.radius.front(), t.radius.back(), 1e-10);
    e.mass = surf * integ.value;
    if (!(e.mass > 0.0))
      throw config_error("equilibrium: tabulated profile has nonpositive mass");
    return e;
  }

  // Pointwise value at |v| = r.
  double value_at_radius(double r) const {
    switch (kind) {
      case equilibrium_kind::zero:
        return 0.0;
      case equilibrium_kind::maxwellian:
        return mass * std::pow(two_pi * theta, -0.5 * dim) *
               std::exp(-r * r / (2.0 * theta));
      case equilibrium_kind::tabulated:
        return value_spline(std::fabs(r));
    }
    return 0.0;
  }

  double max_table_radius() const {
    return table ? table->radius.back() : 0.0;
  }
};

// f^0_hat(eta) with the (2pi)^{-d} forward convention.
inline double fourier_equilibrium(const Equilibrium& eq, const vec3& eta) {
  double em = eta.norm();
  if (!std::isfinite(em)) throw domain_error("fourier_equilibrium: eta not finite");
  switch (eq.kind) {
    case equilibrium_kind::zero:
      return 0.0;
    case equilibrium_kind::maxwellian:
      return eq.mass * std::pow(two_pi, -eq.dim) *
             std::exp(-eq.theta * em * em / 2.0);
    case equilibrium_kind::tabulated: {
      const auto& t = *eq.table;
      double dr_min = t.radius.back() - t.radius.front();
      for (std::size_t i = 1; i < t.radius.size(); ++i)
        dr_min = std::min(dr_min, t.radius[i] - t.radius[i - 1]);
      if (em > pi / dr_min)
        throw domain_error(
            "fourier_equilibrium: eta outside the resolvable band of the "
            "tabulated profile");
      double r0 = t.radius.front(), r1 = t.radius.back();
      int d = eq.dim;
      auto I = integrate_oscillatory(
          [&](double r) -> double {
            double f = eq.value_spline(r);
            if (d == 1) return 2.0 * f * std::cos(r * em);
            if (d == 2) return two_pi * f * std::cyl_bessel_j(0.0, r * em) * r;
            double s = (em * r < 1e-8) ? 1.0 : std::sin(em * r) / (em * r);
            return 2.0 * two_pi * f * s * r * r;
          },
          r0, r1, em);
      return std::pow(two_pi, -d) * I.value;
    }
  }
  return 0.0;
}

inline double fourier_equilibrium(const Equilibrium& eq, double eta_mag) {
  vec3 eta(eta_mag, 0.0, 0.0);
  eta.dim = eq.dim;
  return fourier_equilibrium(eq, eta);
}

// Hyperplane marginal f^0_k(r) = \int_{v . khat = r} f^0 and its derivative.
// Radial symmetry makes the direction irrelevant.
struct marginal_value {
  double value = 0.0;
  double derivative = 0.0;
};

inline marginal_value marginal(const Equilibrium& eq, double r) {
  switch (eq.kind) {
    case equilibrium_kind::zero:
      return {0.0, 0.0};
    case equilibrium_kind::maxwellian: {
      double v = eq.mass * std::pow(two_pi * eq.theta, -0.5) *
                 std::exp(-r * r / (2.0 * eq.theta));
      return {v, -(r / eq.theta) * v};
    }
    case equilibrium_kind::tabulated: {
      if (!eq.table->radial)
        throw domain_error("marginal: unsupported non-radial equilibrium");
      double ar = std::fabs(r);
      double R = eq.max_table_radius();
      if (ar >= R) return {0.0, 0.0};
      if (eq.dim == 1) {
        double sgn = (r >= 0.0) ? 1.0 : -1.0;
        return {eq.value_spline(ar), sgn * eq.deriv_spline(ar)};
      }
      if (eq.dim == 3) {
        // 2pi * int_{|r|}^{R} f(s) s ds ; derivative -2pi f(|r|) r.
        auto I = integrate_adaptive(
            [&](double s) { return eq.value_spline(s) * s; }, ar, R, 1e-11);
        return {two_pi * I.value, -two_pi * eq.value_spline(ar) * r};
      }
      // d = 2: line integral through the disk.
      double wmax = std::sqrt(std::max(0.0, R * R - ar * ar));
      auto I = integrate_adaptive(
          [&](double w) { return eq.value_spline(std::hypot(r, w)); }, -wmax,
          wmax, 1e-10);
      auto Id = integrate_adaptive(
          [&](double w) {
            double s = std::hypot(r, w);
            return (s > 0.0) ? eq.deriv_spline(s) * r / s : 0.0;
          },
          -wmax, wmax, 1e-10);
      return {I.value, Id.value};
    }
  }
  return {0.0, 0.0};
}

// ---------------------------------------------------------------------------
// Interaction potential W
// ---------------------------------------------------------------------------

enum class potential_kind { screened_coulomb, zero, tabulated };

struct Potential {
  potential_kind kind = potential_kind::screened_coulomb;
  double alpha = 1.0;  // screening parameter, > 0
  double admissibility_constant = 0.0;
  bool nonneg_flag = true;
  std::optional<cubic_spline> what_table;  // radial |k| -> W_hat

  static Potential screened(double alpha) {
    if (!(alpha > 0.0))
      throw config_error("potential: screening alpha must be > 0");
    Potential p;
    p.kind = potential_kind::screened_coulomb;
    p.alpha = alpha;
    p.admissibility_constant = std::max(1.0 / alpha, 1.0);
    p.nonneg_flag = true;
    return p;
  }

  static Potential zero() {
    Potential p;
    p.kind = potential_kind::zero;
    p.admissibility_constant = 0.0;
    p.nonneg_flag = true;
    return p;
  }

  static Potential tabulated(std::vector<double> kmag,
                             std::vector<double> what) {
    Potential p;
    p.kind = potential_kind::tabulated;
    p.what_table = cubic_spline(kmag, what);
    p.nonneg_flag = true;
    p.admissibility_constant = 0.0;
    for (std::size_t i = 0; i < kmag.size(); ++i) {
      if (what[i] < 0.0) p.nonneg_flag = false;
      double b = jbracket(kmag[i]);
      p.admissibility_constant =
          std::max(p.admissibility_constant, std::fabs(what[i]) * b * b);
    }
    return p;
  }
};

inline double potential_hat(const Potential& pot, const vec3& k) {
  double km = k.norm();
  if (!std::isfinite(km)) throw domain_error("potential_hat: k not finite");
  switch (pot.kind) {
    case potential_kind::zero:
      return 0.0;
    case potential_kind::screened_coulomb:
      return 1.0 / (pot.alpha + km * km);
    case potential_kind::tabulated:
      return (*pot.what_table)(km);
  }
  return 0.0;
}

inline double potential_hat(const Potential& pot, double kmag) {
  return potential_hat(pot, vec3(kmag, 0.0, 0.0));
}

// ---------------------------------------------------------------------------
// Weighted Sobolev norm ||h||_{H^sigma_M} on uniform grids
// ---------------------------------------------------------------------------

namespace detail {

// Forward DFT coefficients, FFT when the length is a power of two,
// direct sum otherwise.
inline std::vector<complex> dft(const std::vector<complex>& in) {
  std::size_t n = in.size();
  std::vector<complex> out(in);
  if (is_pow2(n)) {
    fft_inplace(out, -1);
    return out;
  }
  for (std::size_t m = 0; m < n; ++m) {
    complex acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      double ang = -two_pi * static_cast<double>(m) *
                   static_cast<double>(j) / static_cast<double>(n);
      acc += in[j] * complex(std::cos(ang), std::sin(ang));
    }
    out[m] = acc;
  }
  return out;
}

inline void check_uniform(const std::vector<double>& grid) {
  if (grid.size() < 2) return;
  double d0 = grid[1] - grid[0];
  for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
    double d = grid[i + 1] - grid[i];
    if (std::fabs(d - d0) > 1e-9 * std::max(1.0, std::fabs(d0)))
      throw domain_error("weighted_sobolev_norm: unsupported non-uniform grid");
  }
}

}  // namespace detail

// ||h||_{H^sigma_M} = sum_{|a| <= M} ||<grad>^sigma (v^a h)||_{L^2} for a
// function of v alone, sampled on a uniform grid (periodic extension).
inline double weighted_sobolev_norm_v(const std::vector<complex>& h,
                                      const std::vector<double>& vgrid,
                                      double sigma, int M) {
  if (sigma < 0.0 || M < 0)
    throw config_error("weighted_sobolev_norm: sigma >= 0 and M >= 0 required");
  if (h.size() != vgrid.size() || h.size() < 2)
    throw config_error("weighted_sobolev_norm: samples/grid size mismatch");
  detail::check_uniform(vgrid);
  std::size_t n = h.size();
  double dv = vgrid[1] - vgrid[0];
  double length = dv * static_cast<double>(n);
  double deta = two_pi / length;
  double total = 0.0;
  std::vector<complex> w(n);
  for (int a = 0; a <= M; ++a) {
    for (std::size_t j = 0; j < n; ++j)
      w[j] = h[j] * std::pow(vgrid[j], a);
    auto c = detail::dft(w);
    double s2 = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
      double eta = fft_freq(m, n, deta);
      s2 += std::pow(jbracket(eta), 2.0 * sigma) * std::norm(c[m]);
    }
    total += std::sqrt(s2 * dv / static_cast<double>(n));
  }
  return total;
}

// Same norm for h(z,v) on a uniform tensor grid, row-major (z outer).
// Moments are taken in v; <grad> acts in both variables.
inline double weighted_sobolev_norm_zv(const std::vector<complex>& h,
                                       const std::vector<double>& zgrid,
                                       const std::vector<double>& vgrid,
                                       double sigma, int M) {
  if (sigma < 0.0 || M < 0)
    throw config_error("weighted_sobolev_norm: sigma >= 0 and M >= 0 required");
  std::size_t nz = zgrid.size(), nv = vgrid.size();
  if (h.size() != nz * nv)
    throw config_error("weighted_sobolev_norm: samples/grid size mismatch");
  detail::check_uniform(zgrid);
  detail::check_uniform(vgrid);
  double dz = zgrid[1] - zgrid[0], dv = vgrid[1] - vgrid[0];
  double dk = two_pi / (dz * static_cast<double>(nz));
  double deta = two_pi / (dv * static_cast<double>(nv));
  double total = 0.0;
  std::vector<complex> w(nz * nv);
  std::vector<std::size_t> shape{nz, nv};
  for (int a = 0; a <= M; ++a) {
    for (std::size_t i = 0; i < nz; ++i)
      for (std::size_t j = 0; j < nv; ++j)
        w[i * nv + j] = h[i * nv + j] * std::pow(vgrid[j], a);
    if (!is_pow2(nz) || !is_pow2(nv))
      throw domain_error("weighted_sobolev_norm: grid sizes must be powers of two");
    fft_axis(w, shape, 0, -1);
    fft_axis(w, shape, 1, -1);
    double s2 = 0.0;
    for (std::size_t i = 0; i < nz; ++i) {
      double k = fft_freq(i, nz, dk);
      for (std::size_t j = 0; j < nv; ++j) {
        double eta = fft_freq(j, nv, deta);
        s2 += std::pow(1.0 + k * k + eta * eta, sigma) * std::norm(w[i * nv + j]);
      }
    }
    total += std::sqrt(s2 * dz * dv / static_cast<double>(nz * nv));
  }
  return total;
}

// Continuum H^sigma_M norm of the equilibrium itself (Fourier-side tensor
// quadrature; maxwellian only). Used by the dispersion-side hypothesis checks.
inline double equilibrium_hsigma_norm(const Equilibrium& eq, double sigma,
                                      int M) {
  if (eq.kind == equilibrium_kind::zero) return 0.0;
  if (eq.kind != equilibrium_kind::maxwellian)
    throw domain_error("equilibrium_hsigma_norm: maxwellian only");
  int d = eq.dim;
  double th = eq.theta;
  double amp = eq.mass * std::pow(two_pi, -d);
  // D^a f0_hat for |a| <= 2 in closed form (Gaussian derivatives).
  auto dfh = [&](const std::array<int, 3>& a, const vec3& eta) -> double {
    double g = amp * std::exp(-th * eta.norm2() / 2.0);
    int order = a[0] + a[1] + a[2];
    if (order == 0) return g;
    if (order == 1) {
      for (int i = 0; i < 3; ++i)
        if (a[i] == 1) return -th * eta[i] * g;
    }
    // order 2
    for (int i = 0; i < 3; ++i) {
      if (a[i] == 2) return (th * th * eta[i] * eta[i] - th) * g;
      for (int j = i + 1; j < 3; ++j)
        if (a[i] == 1 && a[j] == 1) return th * th * eta[i] * eta[j] * g;
    }
    throw config_error("equilibrium_hsigma_norm: M <= 2 supported");
  };

  std::vector<std::array<int, 3>> alphas;
  for (int a0 = 0; a0 <= M; ++a0)
    for (int a1 = 0; a1 <= (d > 1 ? M : 0); ++a1)
      for (int a2 = 0; a2 <= (d > 2 ? M : 0); ++a2)
        if (a0 + a1 + a2 <= M) alphas.push_back({a0, a1, a2});

  // Fixed tensor Gauss-Legendre over [-R, R]^d; the integrand is a Gaussian
  // times slowly varying weights, fully resolved at this node count.
  double R = std::sqrt(2.0 * 60.0 / th);
  static const gl_rule rule = gauss_legendre(96);
  int n = static_cast<int>(rule.nodes.size());
  auto node = [&](int i) { return R * rule.nodes[i]; };
  auto wt = [&](int i) { return R * rule.weights[i]; };

  double total = 0.0;
  for (const auto& a : alphas) {
    double I = 0.0;
    if (d == 1) {
      for (int i = 0; i < n; ++i) {
        vec3 eta(node(i));
        double f = dfh(a, eta);
        I += wt(i) * std::pow(jbracket(eta), 2.0 * sigma) * f * f;
      }
    } else if (d == 2) {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          vec3 eta(node(i), node(j));
          double f = dfh(a, eta);
          I += wt(i) * wt(j) * std::pow(jbracket(eta), 2.0 * sigma) * f * f;
        }
    } else {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double partial = 0.0;
          for (int l = 0; l < n; ++l) {
            vec3 eta(node(i), node(j), node(l));
            double f = dfh(a, eta);
            partial += wt(l) * std::pow(jbracket(eta), 2.0 * sigma) * f * f;
          }
          I += wt(i) * wt(j) * partial;
        }
    }
    total += std::pow(two_pi, 0.5 * d) * std::sqrt(std::max(0.0, I));
  }
  return total;
}

}  // namespace landau

#endif
