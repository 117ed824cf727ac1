#ifndef LANDAU_QUADRATURE_HPP
#define LANDAU_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>

#include "landau/core.hpp"

namespace landau {

namespace detail {

// Gauss-Kronrod 7-15 nodes/weights on [-1,1] (Kronrod extension of G7).
inline constexpr double gk_nodes[15] = {
    -0.991455371120813, -0.949107912342759, -0.864864423359769,
    -0.741531185599394, -0.586087235467691, -0.405845151377397,
    -0.207784955007898, 0.0,                0.207784955007898,
    0.405845151377397,  0.586087235467691,  0.741531185599394,
    0.864864423359769,  0.949107912342759,  0.991455371120813};
inline constexpr double gk_wk[15] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728, 0.204432940075298,
    0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529};
inline constexpr double gk_wg[7] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469, 0.381830050505119, 0.279705391489277,
    0.129484966168870};

template <typename T>
double absval(T x) {
  if constexpr (std::is_same_v<T, complex>) {
    return std::abs(x);
  } else {
    return std::fabs(x);
  }
}

}  // namespace detail

template <typename T>
struct quad_result {
  T value{};
  double abs_error = 0.0;
};

// One GK15 panel on [a,b]; error estimate from the G7/K15 difference.
template <typename F>
auto gk15(F&& f, double a, double b) {
  using T = decltype(f(0.0));
  double h = 0.5 * (b - a);
  double c = 0.5 * (a + b);
  T k{};
  T g{};
  for (int i = 0; i < 15; ++i) {
    T fv = f(c + h * detail::gk_nodes[i]);
    k += detail::gk_wk[i] * fv;
    if (i % 2 == 1) g += detail::gk_wg[i / 2] * fv;
  }
  quad_result<T> r;
  r.value = h * k;
  double diff = detail::absval<T>(h * (k - g));
  r.abs_error = std::pow(200.0 * diff, 1.5);
  if (!std::isfinite(r.abs_error)) r.abs_error = diff;
  return r;
}

// Adaptive bisection on [a,b]. Tolerance is rel_tol * |I| + abs_tol,
// distributed across subintervals.
template <typename F>
auto integrate_adaptive(F&& f, double a, double b, double rel_tol = 1e-9,
                        double abs_tol = 0.0, int max_depth = 40,
                        int min_depth = 2) {
  using T = decltype(f(0.0));

  struct rec_t {
    const std::remove_reference_t<F>& fn;
    double rel, abs;
    int maxd, mind;
    double span, scale;  // full interval length, |I| estimate for the floor
    mutable long budget = 1L << 18;  // hard cap on panel evaluations
    T go(double lo, double hi, const quad_result<T>& whole, int depth,
         double* err_out) const {
      double mid = 0.5 * (lo + hi);
      auto left = gk15(fn, lo, mid);
      auto right = gk15(fn, mid, hi);
      T two = left.value + right.value;
      double disc = detail::absval<T>(two - whole.value);
      // Tolerance has a global floor: subintervals carrying a negligible
      // share of the total must not be refined to max depth chasing a
      // vanishing local relative target.
      double share = (hi - lo) / span;
      double tol = std::max({abs * share, rel * detail::absval<T>(two),
                             rel * scale * share, 1e-16 * scale});
      budget -= 2;
      if (depth >= mind &&
          (disc <= tol || depth >= maxd || budget <= 0 ||
           (hi - lo) < 1e-300)) {
        *err_out += disc;
        return two;
      }
      double e1 = 0.0, e2 = 0.0;
      T v = go(lo, mid, left, depth + 1, &e1) +
            go(mid, hi, right, depth + 1, &e2);
      *err_out += e1 + e2;
      return v;
    }
  };

  auto whole = gk15(f, a, b);
  rec_t rec{f,         rel_tol,
            abs_tol,   max_depth,
            min_depth, b - a,
            detail::absval<T>(whole.value)};
  quad_result<T> out;
  out.value = rec.go(a, b, whole, 0, &out.abs_error);
  // second pass with the refined magnitude if the first panel badly
  // underestimated the true size
  double better = detail::absval<T>(out.value);
  if (better > 4.0 * rec.scale && better > 0.0) {
    rec.scale = better;
    out = quad_result<T>{};
    out.value = rec.go(a, b, whole, 0, &out.abs_error);
  }
  return out;
}

// Integral over [a, inf) via the rational map t = a + scale*x/(1-x).
template <typename F>
auto integrate_semi_infinite(F&& f, double a, double rel_tol = 1e-9,
                             double abs_tol = 0.0, double scale = 1.0,
                             int max_depth = 40) {
  auto g = [&](double x) {
    double om = 1.0 - x;
    double t = a + scale * x / om;
    return f(t) * (scale / (om * om));
  };
  return integrate_adaptive(g, 0.0, 1.0, rel_tol, abs_tol, max_depth, 4);
}

// Integral over all of R via t = scale*x/(1-x^2), x in (-1,1).
template <typename F>
auto integrate_real_line(F&& f, double rel_tol = 1e-9, double abs_tol = 0.0,
                         double scale = 1.0, int max_depth = 40) {
  auto g = [&](double x) {
    double om = 1.0 - x * x;
    double t = scale * x / om;
    double jac = scale * (1.0 + x * x) / (om * om);
    return f(t) * jac;
  };
  return integrate_adaptive(g, -1.0, 1.0, rel_tol, abs_tol, max_depth, 4);
}

// Composite GK15 with panels short enough to resolve e^{i*freq*t}:
// panel length <= min(max_panel, 3/(1+|freq|)) keeps each panel well under
// one oscillation, where GK15 is effectively exact.
template <typename F>
auto integrate_oscillatory(F&& f, double a, double b, double freq,
                           double max_panel = 0.5) {
  using T = decltype(f(0.0));
  double panel = std::min(max_panel, 3.0 / (1.0 + std::fabs(freq)));
  auto n = static_cast<std::size_t>(std::ceil((b - a) / panel));
  n = std::max<std::size_t>(n, 1);
  double h = (b - a) / static_cast<double>(n);
  quad_result<T> out;
  for (std::size_t i = 0; i < n; ++i) {
    auto p = gk15(f, a + h * static_cast<double>(i),
                  a + h * static_cast<double>(i + 1));
    out.value += p.value;
    out.abs_error += p.abs_error;
  }
  return out;
}

// Gauss-Legendre nodes/weights on [-1,1] via Newton iteration on P_n.
struct gl_rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

inline gl_rule gauss_legendre(int n) {
  gl_rule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.weights[i] = w;
    r.weights[n - 1 - i] = w;
  }
  return r;
}

}  // namespace landau

#endif
