#ifndef LANDAU_CORE_HPP
#define LANDAU_CORE_HPP

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace landau {

using complex = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Error hierarchy. Numerical-accuracy failures are kept distinct from
// configuration mistakes so the CLI can map them to different exit codes.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct config_error : error {
  using error::error;
};
struct accuracy_error : error {
  using error::error;
};
struct domain_error : error {
  using error::error;
};

// Small fixed-size frequency/velocity vector, dimension known at runtime.
struct vec3 {
  std::array<double, 3> c{0.0, 0.0, 0.0};
  int dim = 3;

  vec3() = default;
  vec3(double x, double y, double z) : c{x, y, z}, dim(3) {}
  explicit vec3(double x) : c{x, 0.0, 0.0}, dim(1) {}
  vec3(double x, double y) : c{x, y, 0.0}, dim(2) {}

  double& operator[](int i) { return c[i]; }
  double operator[](int i) const { return c[i]; }

  double norm2() const { return c[0] * c[0] + c[1] * c[1] + c[2] * c[2]; }
  double norm() const { return std::sqrt(norm2()); }

  friend vec3 operator*(double s, const vec3& v) {
    vec3 r = v;
    for (auto& x : r.c) x *= s;
    return r;
  }
  friend vec3 operator-(const vec3& a, const vec3& b) {
    vec3 r = a;
    for (int i = 0; i < 3; ++i) r.c[i] -= b.c[i];
    return r;
  }
  friend vec3 operator+(const vec3& a, const vec3& b) {
    vec3 r = a;
    for (int i = 0; i < 3; ++i) r.c[i] += b.c[i];
    return r;
  }
  friend double dot(const vec3& a, const vec3& b) {
    return a.c[0] * b.c[0] + a.c[1] * b.c[1] + a.c[2] * b.c[2];
  }
};

// Japanese bracket <v> = (1+|v|^2)^{1/2}.
inline double jbracket(double x) { return std::sqrt(1.0 + x * x); }
inline double jbracket(const vec3& v) { return std::sqrt(1.0 + v.norm2()); }

// Two-argument bracket <a,b> = (1 + |a|^2 + |b|^2)^{1/2}.
inline double jbracket2(double a, double b) {
  return std::sqrt(1.0 + a * a + b * b);
}
inline double jbracket2(const vec3& a, const vec3& b) {
  return std::sqrt(1.0 + a.norm2() + b.norm2());
}

// <k, kt> for scalar |k| and time t.
inline double kkt_bracket(double kmag, double t) {
  return std::sqrt(1.0 + kmag * kmag * (1.0 + t * t));
}

// Deterministic data-parallel map: results land in pre-assigned slots, so
// the output is identical for any thread count.
template <typename F>
void parallel_for(std::size_t n, unsigned threads, F&& body) {
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  unsigned nt = std::min<std::size_t>(threads, n);
  std::vector<std::thread> pool;
  pool.reserve(nt);
  for (unsigned w = 0; w < nt; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += nt) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace landau

#endif
