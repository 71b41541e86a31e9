#pragma once

#include <map>

#include "nlslab/cutoff.hpp"
#include "nlslab/grid.hpp"
#include "nlslab/norms.hpp"

namespace nlslab {

// Paraproduct T_a h: the (a-frequency v = j-k, h-frequency k) pair enters the
// output mode j with weight chi_eps(|v|/<k>), so a only contributes
// frequencies well below the h frequency it multiplies.
//
// Kernel sums are exact rearrangements of finite double sums; they need no
// dense grid and carry no padding precondition.

// The bump kills symbol frequencies |v| >= (8/5) eps <k>, so the output
// support only exceeds the input one by that reach; allocating the full
// convolution cube would overflow the grid under repeated application.
// Largest symbol frequency with nonzero weight against any input mode
// |k|_inf <= kh: the bump vanishes once |v| >= (8/5) eps <k>.
inline int para_symbol_reach(int d, double eps, int kh) {
  const double reach = 1.6 * eps * std::sqrt(1.0 + double(d) * double(kh) * double(kh));
  return int(std::ceil(reach));
}

inline int para_support_cap(int d, double eps, int ka, int kh) {
  return std::min(ka + kh, kh + para_symbol_reach(d, eps, kh));
}

// Reach bound seen from the output side, for the transposed kernel.
inline int para_adjoint_support_cap(int d, double eps, int ka, int kv) {
  int kb = kv;
  for (int it = 0; it < 64; ++it) {
    const double reach = 1.6 * eps * std::sqrt(1.0 + double(d) * double(kb) * double(kb));
    const int nb = kv + int(std::ceil(reach));
    if (nb >= ka + kv) return ka + kv;
    if (nb <= kb) return kb;
    kb = nb;
  }
  return ka + kv;
}

inline FourierField paraproduct_bruteforce(const FourierField& a, const FourierField& h,
                                           double eps) {
  validate(CutoffSpec{eps});
  require_same_root(a, h, "paraproduct");
  FourierField out = make_field(a.spec, para_support_cap(a.spec.d, eps, a.kcur, h.kcur));
  const int d = a.spec.d;
  for (std::int64_t ih = 0; ih < h.size(); ++ih) {
    const cplx ch = h.a[ih];
    if (ch == cplx(0.0)) continue;
    const Mode k = mode_at(d, h.kcur, ih);
    const double cap = jap(k);
    for (std::int64_t ia = 0; ia < a.size(); ++ia) {
      const cplx ca = a.a[ia];
      if (ca == cplx(0.0)) continue;
      const Mode v = mode_at(d, a.kcur, ia);
      const double w = cutoff_chi_eps(eps, mode_abs(v) / cap);
      if (w == 0.0) continue;
      out.ref({v[0] + k[0], v[1] + k[1], v[2] + k[2]}) += w * ca * ch;
    }
  }
  return out;
}

namespace detail {
inline int fft_pow2_at_least(int m) {
  int n = 1;
  while (n < m) n *= 2;
  return n;
}
}  // namespace detail

// Accelerated path: h-modes are binned by the exact value of |k|^2, which
// fixes the kernel weight as a function of v alone, so each bin contributes
// one plain convolution evaluated on a one-off FFT grid.
inline FourierField paraproduct_shells(const FourierField& a, const FourierField& h,
                                       double eps) {
  validate(CutoffSpec{eps});
  require_same_root(a, h, "paraproduct");
  const int d = a.spec.d;
  const int kout = para_support_cap(d, eps, a.kcur, h.kcur);
  std::map<std::int64_t, std::vector<std::int64_t>> shells;
  for (std::int64_t ih = 0; ih < h.size(); ++ih)
    if (h.a[ih] != cplx(0.0)) shells[mode_norm2_sq(mode_at(d, h.kcur, ih))].push_back(ih);

  DenseGrid g(d, detail::fft_pow2_at_least(2 * kout + 2));
  FourierField out = make_field(a.spec, kout);
  // The cutoff zeroes the symbol beyond its reach, so the weighted copy can
  // live on a cube that fits the one-off grid even when a itself is larger.
  FourierField wa = make_field(a.spec, std::min(a.kcur, kout - h.kcur));
  FourierField hs = make_field(a.spec, h.kcur);
  FourierField term = make_field(a.spec, 0);
  for (const auto& [k2, idx] : shells) {
    const double cap = std::sqrt(1.0 + double(k2));
    bool any = false;
    for (std::int64_t ia = 0; ia < wa.size(); ++ia) {
      const Mode m = mode_at(d, wa.kcur, ia);
      const double w = cutoff_chi_eps(eps, mode_abs(m) / cap);
      wa.a[ia] = w * a.at(m);
      any = any || (wa.a[ia] != cplx(0.0));
    }
    if (!any) continue;
    std::fill(hs.a.begin(), hs.a.end(), cplx(0.0));
    for (std::int64_t ih : idx) hs.a[ih] = h.a[ih];
    g.synthesize(wa);
    std::vector<cplx> va = g.values();
    g.synthesize(hs);
    auto& b = g.values();
    for (std::int64_t i = 0; i < g.total(); ++i) b[i] *= va[i];
    g.analyze_into(term, kout);
    for (std::int64_t i = 0; i < out.size(); ++i) out.a[i] += term.a[i];
  }
  return out;
}

inline FourierField paraproduct(const FourierField& a, const FourierField& h, double eps) {
  if (std::max(a.kcur, h.kcur) > 64) return paraproduct_shells(a, h, eps);
  return paraproduct_bruteforce(a, h, eps);
}

// Conjugate-transpose of the T_a kernel; the cutoff argument follows the
// output frequency.  (T_a h, v) = (h, adjoint(a) v) holds by rearrangement.
inline FourierField paraproduct_adjoint(const FourierField& a, const FourierField& v,
                                        double eps) {
  validate(CutoffSpec{eps});
  require_same_root(a, v, "paraproduct_adjoint");
  FourierField out =
      make_field(a.spec, para_adjoint_support_cap(a.spec.d, eps, a.kcur, v.kcur));
  const int d = a.spec.d;
  for (std::int64_t iv = 0; iv < v.size(); ++iv) {
    const cplx cv = v.a[iv];
    if (cv == cplx(0.0)) continue;
    const Mode j = mode_at(d, v.kcur, iv);
    for (std::int64_t ia = 0; ia < a.size(); ++ia) {
      const cplx ca = a.a[ia];
      if (ca == cplx(0.0)) continue;
      const Mode m = mode_at(d, a.kcur, ia);
      const Mode k{j[0] - m[0], j[1] - m[1], j[2] - m[2]};
      const double w = cutoff_chi_eps(eps, mode_abs(m) / jap(k));
      if (w == 0.0) continue;
      out.ref(k) += w * std::conj(ca) * cv;
    }
  }
  return out;
}

// Difference of two paraproducts with nested cutoffs.  The kernel is
// supported where the two bumps disagree, i.e. on comparable frequencies,
// which is what makes it regularizing.
inline FourierField regularizing_remainder(const FourierField& a, const FourierField& h,
                                           double eps1, double eps2) {
  validate(CutoffSpec{eps1});
  validate(CutoffSpec{eps2});
  if (!(eps2 <= eps1))
    throw std::invalid_argument("regularizing_remainder: need 0 < eps2 <= eps1 < 1/4");
  require_same_root(a, h, "regularizing_remainder");
  FourierField out = make_field(a.spec, para_support_cap(a.spec.d, eps1, a.kcur, h.kcur));
  const int d = a.spec.d;
  for (std::int64_t ih = 0; ih < h.size(); ++ih) {
    const cplx ch = h.a[ih];
    if (ch == cplx(0.0)) continue;
    const Mode k = mode_at(d, h.kcur, ih);
    const double cap = jap(k);
    for (std::int64_t ia = 0; ia < a.size(); ++ia) {
      const cplx ca = a.a[ia];
      if (ca == cplx(0.0)) continue;
      const Mode v = mode_at(d, a.kcur, ia);
      const double x = mode_abs(v) / cap;
      const double w = cutoff_chi_eps(eps1, x) - cutoff_chi_eps(eps2, x);
      if (w == 0.0) continue;
      out.ref({v[0] + k[0], v[1] + k[1], v[2] + k[2]}) += w * ca * ch;
    }
  }
  return out;
}

struct BonyDecomposition {
  FourierField t_ab;       // T_a b
  FourierField t_ba;       // T_b a
  FourierField remainder;  // balanced frequencies
};

// a b = T_a b + T_b a + remainder, an exact partition of the convolution:
// the three kernel weights sum to one for every frequency split.
inline BonyDecomposition bony_decompose(const FourierField& a, const FourierField& b,
                                        double eps) {
  validate(CutoffSpec{eps});
  require_same_root(a, b, "bony_decompose");
  BonyDecomposition r{paraproduct(a, b, eps), paraproduct(b, a, eps),
                      make_field(a.spec, a.kcur + b.kcur)};
  const int d = a.spec.d;
  for (std::int64_t ia = 0; ia < a.size(); ++ia) {
    const cplx ca = a.a[ia];
    if (ca == cplx(0.0)) continue;
    const Mode v = mode_at(d, a.kcur, ia);
    for (std::int64_t ib = 0; ib < b.size(); ++ib) {
      const cplx cb = b.a[ib];
      if (cb == cplx(0.0)) continue;
      const Mode w = mode_at(d, b.kcur, ib);
      const double psi = cutoff_psi(eps, v, w);
      if (psi == 0.0) continue;
      r.remainder.ref({v[0] + w[0], v[1] + w[1], v[2] + w[2]}) += psi * ca * cb;
    }
  }
  return r;
}

// Frequency-truncated paraproducts T_a (P_N h) and T_a (P_N^perp h).
inline FourierField paraproduct_low(const FourierField& a, const FourierField& h, double eps,
                                    double N) {
  return paraproduct(a, project_low(h, N), eps);
}

inline FourierField paraproduct_high(const FourierField& a, const FourierField& h, double eps,
                                     double N) {
  return paraproduct(a, project_high(h, N), eps);
}

// Commutator [W^q, T_a] with the weighted multiplier W = max{R,|D|}: the
// kernel picks up the weight difference between output and input frequency.
inline FourierField commutator_weighted(double q, const FourierField& a, const FourierField& h,
                                        double eps, double R) {
  validate(CutoffSpec{eps});
  require_same_root(a, h, "commutator_weighted");
  FourierField out = make_field(a.spec, para_support_cap(a.spec.d, eps, a.kcur, h.kcur));
  const int d = a.spec.d;
  for (std::int64_t ih = 0; ih < h.size(); ++ih) {
    const cplx ch = h.a[ih];
    if (ch == cplx(0.0)) continue;
    const Mode k = mode_at(d, h.kcur, ih);
    const double cap = jap(k);
    const double wk = std::pow(jjap(k, R), q);
    for (std::int64_t ia = 0; ia < a.size(); ++ia) {
      const cplx ca = a.a[ia];
      if (ca == cplx(0.0)) continue;
      const Mode v = mode_at(d, a.kcur, ia);
      const double w = cutoff_chi_eps(eps, mode_abs(v) / cap);
      if (w == 0.0) continue;
      const Mode j{v[0] + k[0], v[1] + k[1], v[2] + k[2]};
      out.ref(j) += (std::pow(jjap(j, R), q) - wk) * w * ca * ch;
    }
  }
  return out;
}

}  // namespace nlslab
