#pragma once

#include "nlslab/field.hpp"

namespace nlslab {

// Parameters of the weighted norm |u|_{s,R}^2 = sum_j max{R,|j|}^{2s} |u^(j)|^2.
// R > 1 is required so the weight is nondecreasing in s.
struct NormParams {
  double s = 0.0;
  double R = 2.0;
};

inline void validate(const NormParams& n) {
  if (!(n.R > 1.0)) throw std::invalid_argument("norm: R must be > 1");
  if (n.s < 0.0) throw std::invalid_argument("norm: s must be >= 0");
}

inline cplx inner_l2(const FourierField& u, const FourierField& v) {
  require_same_root(u, v, "inner_l2");
  cplx acc(0.0);
  const int k = std::min(u.kcur, v.kcur);
  for (std::int64_t i = 0; i < cube_size(u.spec.d, k); ++i) {
    Mode j = mode_at(u.spec.d, k, i);
    acc += u.at(j) * std::conj(v.at(j));
  }
  return acc;
}

inline double norm_l2(const FourierField& u) {
  double acc = 0.0;
  for (const auto& c : u.a) acc += std::norm(c);
  return std::sqrt(acc);
}

// |j|^s with the convention 0^s := 0, so the s = 0 multiplier kills the mean.
inline double halfwave_sym(const Mode& j, double s) {
  const std::int64_t n2 = mode_norm2_sq(j);
  return (n2 == 0) ? 0.0 : std::pow(double(n2), 0.5 * s);
}

// Sobolev norm in the sum form ||u||_{L2} + ||(sqrt(-Lap))^s u||_{L2}.
inline double norm_hs_sum(const FourierField& u, double s) {
  double l2 = 0.0, hw = 0.0;
  for (std::int64_t i = 0; i < u.size(); ++i) {
    const double m = std::norm(u.a[i]);
    l2 += m;
    const double w = halfwave_sym(mode_at(u.spec.d, u.kcur, i), s);
    hw += w * w * m;
  }
  return std::sqrt(l2) + std::sqrt(hw);
}

inline double norm_weighted(const FourierField& u, double s, double R) {
  validate(NormParams{s, R});
  double acc = 0.0;
  for (std::int64_t i = 0; i < u.size(); ++i) {
    const double w = std::pow(jjap(mode_at(u.spec.d, u.kcur, i), R), s);
    acc += w * w * std::norm(u.a[i]);
  }
  return std::sqrt(acc);
}

inline double norm_weighted(const FourierField& u, const NormParams& n) {
  return norm_weighted(u, n.s, n.R);
}

// Fourier multiplier op(m)u with a real symbol m(j).
template <class Sym>
FourierField apply_multiplier(const FourierField& u, Sym&& sym) {
  FourierField r = u;
  for (std::int64_t i = 0; i < u.size(); ++i)
    r.a[i] = u.a[i] * sym(mode_at(u.spec.d, u.kcur, i));
  return r;
}

inline FourierField apply_laplacian(const FourierField& u) {
  return apply_multiplier(u, [](const Mode& j) { return -double(mode_norm2_sq(j)); });
}

// <D>^m with <j> = sqrt(1+|j|^2); the smoothing operators always use this
// bracket, never the weighted one.
inline FourierField apply_jap_pow(const FourierField& u, double m) {
  return apply_multiplier(u, [m](const Mode& j) { return std::pow(jap(j), m); });
}

inline FourierField apply_jjap_pow(const FourierField& u, double p, double R) {
  return apply_multiplier(u, [p, R](const Mode& j) { return std::pow(jjap(j, R), p); });
}

// Sharp frequency ball projector; the boundary |j| = N is kept by the
// low-pass side.  N is measured in the Euclidean norm.
inline FourierField project_low(const FourierField& u, double N) {
  const double n2 = N * N;
  return apply_multiplier(u, [n2](const Mode& j) { return double(mode_norm2_sq(j)) <= n2 ? 1.0 : 0.0; });
}

inline FourierField project_high(const FourierField& u, double N) {
  const double n2 = N * N;
  return apply_multiplier(u, [n2](const Mode& j) { return double(mode_norm2_sq(j)) > n2 ? 1.0 : 0.0; });
}

}  // namespace nlslab
