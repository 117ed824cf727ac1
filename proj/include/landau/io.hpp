#ifndef LANDAU_IO_HPP
#define LANDAU_IO_HPP

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "landau/core.hpp"
#include "landau/simulator.hpp"

namespace landau {

// Write-to-temp then rename: readers never observe a partial file.
inline void atomic_write(const std::filesystem::path& path,
                         const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw error("io: cannot open " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw error("io: short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

// Locale-independent formatting: '.' decimal separator always.
inline std::string fmt_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (i) out_ << ',';
      out_ << header[i];
    }
    out_ << '\n';
    cols_ = header.size();
  }

  void row(const std::vector<double>& vals) {
    if (vals.size() != cols_) throw error("csv: column count mismatch");
    for (std::size_t i = 0; i < vals.size(); ++i) {
      if (i) out_ << ',';
      out_ << fmt_double(vals[i]);
    }
    out_ << '\n';
  }

  std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_;
  std::size_t cols_ = 0;
};

// Flat binary state snapshot, little-endian, fixed header then raw
// re/im pairs over the (k, eta) lattice.
inline void write_snapshot(const std::filesystem::path& path,
                           const SimConfig& cfg,
                           const DistributionState& st) {
  std::ostringstream out(std::ios::binary);
  auto put_u32 = [&](std::uint32_t v) {
    char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out.write(b, 4);
  };
  auto put_f64 = [&](double v) {
    std::uint64_t u;
    static_assert(sizeof u == sizeof v);
    std::memcpy(&u, &v, 8);
    char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((u >> (8 * i)) & 0xff);
    out.write(b, 8);
  };
  out.write("LDSNAP01", 8);
  put_u32(static_cast<std::uint32_t>(cfg.d));
  put_u32(static_cast<std::uint32_t>(cfg.n_z));
  put_u32(static_cast<std::uint32_t>(cfg.n_v));
  put_u32(0);  // reserved
  put_f64(cfg.l_box);
  put_f64(cfg.v_max);
  put_f64(st.t);
  for (const auto& z : st.g_hat) {
    put_f64(z.real());
    put_f64(z.imag());
  }
  atomic_write(path, out.str());
}

struct Snapshot {
  int d = 0;
  std::size_t n_z = 0, n_v = 0;
  double l_box = 0.0, v_max = 0.0;
  DistributionState state;
};

inline Snapshot read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error("io: cannot open " + path.string());
  auto get_u32 = [&] {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t(b[i]) << (8 * i);
    return v;
  };
  auto get_f64 = [&] {
    unsigned char b[8];
    in.read(reinterpret_cast<char*>(b), 8);
    std::uint64_t u = 0;
    for (int i = 0; i < 8; ++i) u |= std::uint64_t(b[i]) << (8 * i);
    double v;
    std::memcpy(&v, &u, 8);
    return v;
  };
  char magic[8];
  in.read(magic, 8);
  if (!in || std::string(magic, 8) != "LDSNAP01")
    throw error("io: bad snapshot magic in " + path.string());
  Snapshot s;
  s.d = static_cast<int>(get_u32());
  s.n_z = get_u32();
  s.n_v = get_u32();
  get_u32();
  s.l_box = get_f64();
  s.v_max = get_f64();
  s.state.t = get_f64();
  std::size_t n = 1;
  for (int a = 0; a < s.d; ++a) n *= s.n_z;
  for (int a = 0; a < s.d; ++a) n *= s.n_v;
  s.state.g_hat.resize(n);
  for (auto& z : s.state.g_hat) {
    double re = get_f64();
    double im = get_f64();
    z = complex(re, im);
  }
  if (!in) throw error("io: truncated snapshot " + path.string());
  return s;
}

}  // namespace landau

#endif
