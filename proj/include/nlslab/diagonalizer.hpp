#pragma once

#include "nlslab/paralin.hpp"

namespace nlslab {

class ContractionError : public std::runtime_error {
 public:
  explicit ContractionError(const std::string& msg) : std::runtime_error(msg) {}
};

// Parameters of the change of variables that removes the conjugate coupling
// above frequency N.  eps is the paraproduct cutoff; (s, R) fix the weighted
// norm in which the inverse's series is monitored.
struct DiagParams {
  int N = 8;
  double eps = 0.1;
  double s = 2.0;
  double R = 2.0;
};

inline void validate(const DiagParams& d) {
  validate(CutoffSpec{d.eps});
  validate(NormParams{d.s, d.R});
  if (d.N < 1) throw std::invalid_argument("diagonalizer: N must be >= 1");
}

struct PairField {
  FourierField plus, minus;
};

inline PairField pair_add(const PairField& x, const PairField& y) {
  return {add(x.plus, y.plus), add(x.minus, y.minus)};
}
inline PairField pair_sub(const PairField& x, const PairField& y) {
  return {sub(x.plus, y.plus), sub(x.minus, y.minus)};
}
inline double pair_norm(const PairField& x, double s, double R) {
  return std::hypot(norm_weighted(x.plus, s, R), norm_weighted(x.minus, s, R));
}

// One off-diagonal block: f -> T_c^{>N} <D>^{-2} f.  The smoothing multiplier
// always uses <j>^2 = 1 + |j|^2, never the weighted bracket.
inline FourierField half_generator(const FourierField& c, const FourierField& f,
                                   const DiagParams& prm) {
  return paraproduct_high(c, apply_jap_pow(f, -2.0), prm.eps, double(prm.N));
}

// Off-diagonal generator acting on a pair.
inline PairField gmap_apply(const FourierField& c, const PairField& V, const DiagParams& prm) {
  validate(prm);
  return {half_generator(c, V.minus, prm), half_generator(conj_field(c), V.plus, prm)};
}

inline PairField phi_apply(const FourierField& c, const PairField& V, const DiagParams& prm) {
  return pair_add(V, gmap_apply(c, V, prm));
}

inline PairField gamma_apply(const FourierField& c, const PairField& V, const DiagParams& prm) {
  return pair_sub(V, gmap_apply(c, V, prm));
}

// Inverse of I + G by the geometric series of G^2 applied to (I - G)V.
// G^2 is block diagonal and four orders smoothing, so the series contracts
// once N clears the size of c; the guard enforces geometric decay.
inline PairField phi_inverse_apply(const FourierField& c, const PairField& V,
                                   const DiagParams& prm, double tol = 1e-13,
                                   int max_iter = 64) {
  validate(prm);
  // Every pass of the correction series widens its support by the kernel
  // reach, so on a fixed dense grid the iterate is first projected onto the
  // largest cube whose image under two generator applications the grid can
  // still hold; the series then inverts the grid-realized map.  The
  // projection never increases a weighted norm, so the contraction bound
  // for the series is unchanged.
  const int d = c.spec.d;
  const int cap = c.spec.grid_kcap();
  int keep = cap;
  while (keep > 0 && para_support_cap(d, prm.eps, c.kcur,
                                      para_support_cap(d, prm.eps, c.kcur, keep)) > cap)
    --keep;
  if (keep <= 0)
    throw std::invalid_argument(
        "phi_inverse_apply: dense grid cannot hold a single generator pass");
  PairField y = gamma_apply(c, V, prm);
  PairField z = y;
  PairField term = y;
  const double base = pair_norm(y, prm.s, prm.R);
  if (base == 0.0) return z;
  double prev = base;
  for (int it = 0; it < max_iter; ++it) {
    const PairField in{restrict_modes(term.plus, keep), restrict_modes(term.minus, keep)};
    term = gmap_apply(c, gmap_apply(c, in, prm), prm);
    const double tn = pair_norm(term, prm.s, prm.R);
    if (tn <= tol * base) {
      if (tn > 0.0) z = pair_add(z, term);
      return z;
    }
    if (tn >= prev)
      throw ContractionError(
          "phi_inverse_apply: correction series does not contract; raise the truncation "
          "threshold N above the symbol size");
    z = pair_add(z, term);
    prev = tn;
  }
  throw ContractionError("phi_inverse_apply: series did not reach tolerance within budget");
}

// Scalar new variable w = u + T_c^{>N} <D>^{-2} conj(u), the plus component
// of (I + G) applied to (u, conj(u)).  The symbol is truncated at the kernel
// reach, beyond which its modes never receive nonzero weight; this keeps the
// construction inside the dense grid for any p the grid can multiply.
inline FourierField w_transform(const FourierField& u, int p, const DiagParams& prm) {
  validate(prm);
  DenseGrid g = DenseGrid::for_spec(u.spec);
  const int reach = para_symbol_reach(u.spec.d, prm.eps, u.kcur);
  return add(u, half_generator(symbol_c(g, u, p, reach), conj_field(u), prm));
}

// The conjugate-coupling block after the change of variables:
//   T_b h + T_c^{>N} <D>^{-2} Lap h + Lap T_c^{>N} <D>^{-2} h,  b = 2c.
// Above frequency N the three kernels cancel to one order smoother than T_b.
inline FourierField cancellation_with_symbol(const FourierField& c, const FourierField& h,
                                             const DiagParams& prm) {
  validate(prm);
  FourierField t_b = paraproduct(scale(c, 2.0), h, prm.eps);
  FourierField lap_first = half_generator(c, apply_laplacian(h), prm);
  FourierField lap_last = apply_laplacian(half_generator(c, h, prm));
  return add(t_b, add(lap_first, lap_last));
}

inline FourierField cancellation_residual(const FourierField& u, const FourierField& h, int p,
                                          const DiagParams& prm) {
  DenseGrid g = DenseGrid::for_spec(u.spec);
  return cancellation_with_symbol(symbol_c(g, u, p), h, prm);
}

// Defect of the diagonalized evolution on three consecutive states:
//   r = (w_next - w_prev) / (2 dt) - ( -i Lap w + i T_a w ) at the middle.
// What remains collects the bounded off-diagonal and smoothing corrections.
inline FourierField w_equation_residual(const FourierField& u_prev, const FourierField& u_now,
                                        const FourierField& u_next, double dt, int p,
                                        const DiagParams& prm) {
  if (!(dt > 0.0)) throw std::invalid_argument("w_equation_residual: dt must be positive");
  FourierField w_prev = w_transform(u_prev, p, prm);
  FourierField w_now = w_transform(u_now, p, prm);
  FourierField w_next = w_transform(u_next, p, prm);
  FourierField dtw = scale(sub(w_next, w_prev), 0.5 / dt);
  DenseGrid g = DenseGrid::for_spec(u_now.spec);
  FourierField a = symbol_a(g, u_now, p);
  FourierField rhs = add(scale(apply_laplacian(w_now), cplx(0.0, -1.0)),
                         scale(paraproduct(a, w_now, prm.eps), cplx(0.0, 1.0)));
  return sub(dtw, rhs);
}

}  // namespace nlslab
