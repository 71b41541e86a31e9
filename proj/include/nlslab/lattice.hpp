#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace nlslab {

// Frequency lattice {j in Z^d : |j|_inf <= K}, stored as a full cube so the
// index map stays FFT-friendly.  pad controls the dense-grid resolution used
// for alias-free products: grid side = pad_factor*(2K+1) per axis.
struct LatticeSpec {
  int d = 1;
  int K = 1;
  int pad_factor = 4;

  bool operator==(const LatticeSpec&) const = default;

  int grid_n() const { return pad_factor * (2 * K + 1); }
  // Largest cutoff whose cube embeds unambiguously in the dense grid.
  int grid_kcap() const {
    const int n = grid_n();
    return (n % 2 == 0) ? n / 2 - 1 : (n - 1) / 2;
  }
};

inline void validate(const LatticeSpec& s) {
  if (s.d < 1 || s.d > 3) throw std::invalid_argument("lattice: d must be 1, 2 or 3");
  if (s.K < 1) throw std::invalid_argument("lattice: K must be >= 1");
  if (s.pad_factor < 2) throw std::invalid_argument("lattice: pad_factor must be >= 2");
}

// A mode is a d-vector of integers; components beyond d are kept at zero.
using Mode = std::array<int, 3>;

inline std::int64_t cube_side(int k) { return 2 * std::int64_t(k) + 1; }

inline std::int64_t cube_size(int d, int k) {
  std::int64_t n = 1;
  for (int a = 0; a < d; ++a) n *= cube_side(k);
  return n;
}

inline std::int64_t mode_index(int d, int k, const Mode& j) {
  std::int64_t idx = 0;
  for (int a = 0; a < d; ++a) idx = idx * cube_side(k) + (j[a] + k);
  return idx;
}

inline Mode mode_at(int d, int k, std::int64_t idx) {
  Mode j{0, 0, 0};
  for (int a = d - 1; a >= 0; --a) {
    j[a] = int(idx % cube_side(k)) - k;
    idx /= cube_side(k);
  }
  return j;
}

inline bool in_cube(int d, int k, const Mode& j) {
  for (int a = 0; a < d; ++a)
    if (j[a] < -k || j[a] > k) return false;
  return true;
}

inline std::int64_t mode_norm2_sq(const Mode& j) {
  std::int64_t s = 0;
  for (int a = 0; a < 3; ++a) s += std::int64_t(j[a]) * j[a];
  return s;
}

inline double mode_abs(const Mode& j) { return std::sqrt(double(mode_norm2_sq(j))); }

// <j> = sqrt(1+|j|^2); used by the paraproduct cutoff and by <D>^m weights.
inline double jap(const Mode& j) { return std::sqrt(1.0 + double(mode_norm2_sq(j))); }

// Weighted bracket max{R,|j|}; R > 1 keeps it an increasing function of s
// when raised to powers.
inline double jjap(const Mode& j, double R) { return std::max(R, mode_abs(j)); }

}  // namespace nlslab
