#ifndef LANDAU_FFT_HPP
#define LANDAU_FFT_HPP

#include <cstddef>
#include <vector>

#include "landau/core.hpp"

namespace landau {

inline bool is_pow2(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

// Iterative radix-2 Cooley-Tukey. sign = -1 forward (e^{-i...}), +1 inverse.
// No normalization; callers attach the physically meaningful prefactors.
inline void fft_inplace(complex* a, std::size_t n, int sign) {
  if (!is_pow2(n)) throw domain_error("fft: length must be a power of two");
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    double ang = sign * two_pi / static_cast<double>(len);
    complex wl(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      complex w(1.0);
      for (std::size_t j = 0; j < len / 2; ++j) {
        complex u = a[i + j];
        complex v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
        w *= wl;
      }
    }
  }
}

inline void fft_inplace(std::vector<complex>& a, int sign) {
  fft_inplace(a.data(), a.size(), sign);
}

// Transform along one axis of a flattened row-major multi-dimensional array.
// shape[axis] must be a power of two.
inline void fft_axis(std::vector<complex>& data,
                     const std::vector<std::size_t>& shape, std::size_t axis,
                     int sign) {
  std::size_t n = shape[axis];
  std::size_t stride = 1;
  for (std::size_t d = axis + 1; d < shape.size(); ++d) stride *= shape[d];
  std::size_t outer = 1;
  for (std::size_t d = 0; d < axis; ++d) outer *= shape[d];
  std::vector<complex> buf(n);
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t s = 0; s < stride; ++s) {
      complex* base = data.data() + o * n * stride + s;
      if (stride == 1) {
        fft_inplace(base, n, sign);
      } else {
        for (std::size_t i = 0; i < n; ++i) buf[i] = base[i * stride];
        fft_inplace(buf.data(), n, sign);
        for (std::size_t i = 0; i < n; ++i) base[i * stride] = buf[i];
      }
    }
  }
}

// FFT-order frequency for index j on an n-point grid with spacing `dfreq`:
// j in [0, n/2) maps to j*dfreq, j in [n/2, n) maps to (j-n)*dfreq.
inline double fft_freq(std::size_t j, std::size_t n, double dfreq) {
  std::ptrdiff_t jj = static_cast<std::ptrdiff_t>(j);
  if (j >= n / 2) jj -= static_cast<std::ptrdiff_t>(n);
  return static_cast<double>(jj) * dfreq;
}

}  // namespace landau

#endif
