#pragma once

#include "nlslab/paradiff.hpp"

namespace nlslab {

// q-fold exact product u^q (q >= 0; q = 0 is the constant 1).
inline FourierField pow_field(DenseGrid& g, const FourierField& u, int q) {
  if (q == 0) {
    FourierField one = make_field(u.spec, 0);
    one.a[0] = 1.0;
    return one;
  }
  FourierField r = u;
  for (int i = 1; i < q; ++i) r = multiply(g, r, u);
  return r;
}

// |u|^{2p} = (u conj(u))^p as an exact product; real symbol.  target_k >= 0
// truncates only the final product (earlier factors must still fit).
inline FourierField modulus_power(DenseGrid& g, const FourierField& u, int p,
                                  int target_k = -1) {
  FourierField m2 = multiply(g, u, conj_field(u), (p == 1) ? target_k : -1);
  FourierField r = m2;
  for (int i = 1; i < p; ++i) r = multiply(g, r, m2, (i == p - 1) ? target_k : -1);
  return r;
}

// Symbols of the two paraproducts extracted from |u|^{2p} u:
//   a = (p+1) |u|^{2p}   multiplies u,
//   b = p |u|^{2(p-1)} u^2  multiplies conj(u).
inline FourierField symbol_a(DenseGrid& g, const FourierField& u, int p, int target_k = -1) {
  return scale(modulus_power(g, u, p, target_k), double(p + 1));
}

inline FourierField symbol_b(DenseGrid& g, const FourierField& u, int p, int target_k = -1) {
  FourierField u2 = multiply(g, u, u, (p == 1) ? target_k : -1);
  if (p == 1) return u2;
  return scale(multiply(g, modulus_power(g, u, p - 1), u2, target_k), double(p));
}

// Generator symbol c = b / (2p) = (1/2) |u|^{2(p-1)} u^2.
inline FourierField symbol_c(DenseGrid& g, const FourierField& u, int p, int target_k = -1) {
  return scale(symbol_b(g, u, p, target_k), 0.5 / double(p));
}

inline FourierField symbol_c(const FourierField& u, int p, int target_k = -1) {
  DenseGrid g = DenseGrid::for_spec(u.spec);
  return symbol_c(g, u, p, target_k);
}

struct ParalinParts {
  FourierField sym_a, sym_b;
  FourierField para_a_u;      // T_a u
  FourierField para_b_ubar;   // T_b conj(u)
  FourierField remainder;     // |u|^{2p} u minus the two paraproducts
};

// Paralinearization of the power nonlinearity.  The remainder collects the
// balanced-frequency part and is smoothing; the decomposition itself is an
// exact identity by construction.
inline ParalinParts paralinearize_power(const FourierField& u, int p, double eps) {
  DenseGrid g = DenseGrid::for_spec(u.spec);
  ParalinParts parts{symbol_a(g, u, p), symbol_b(g, u, p), make_field(u.spec, 0),
                     make_field(u.spec, 0), make_field(u.spec, 0)};
  parts.para_a_u = paraproduct(parts.sym_a, u, eps);
  parts.para_b_ubar = paraproduct(parts.sym_b, conj_field(u), eps);
  FourierField total = power_nonlinearity(g, u, p);
  parts.remainder = sub(sub(total, parts.para_a_u), parts.para_b_ubar);
  return parts;
}

// PDE right-hand side du/dt = -i Lap u + i sign |u|^{2p} u.
inline FourierField evolution_rhs(DenseGrid& g, const FourierField& u, int p, int sign) {
  FourierField lin = scale(apply_laplacian(u), cplx(0.0, -1.0));
  FourierField nl = scale(power_nonlinearity(g, u, p), cplx(0.0, double(sign)));
  return add(lin, nl);
}

// Transport derivative of the generator symbol along the flow:
// dc/dt = (1/2) [ (p+1) u^p conj(u)^{p-1} du/dt
//               + (p-1) u^{p+1} conj(u)^{p-2} conj(du/dt) ].
inline FourierField dt_symbol_c(const FourierField& u, int p, int sign) {
  DenseGrid g = DenseGrid::for_spec(u.spec);
  FourierField ut = evolution_rhs(g, u, p, sign);
  FourierField ub = conj_field(u);
  FourierField first =
      multiply(g, multiply(g, pow_field(g, u, p), pow_field(g, ub, p - 1)), ut);
  FourierField r = scale(first, 0.5 * double(p + 1));
  if (p >= 2) {
    FourierField second =
        multiply(g, multiply(g, pow_field(g, u, p + 1), pow_field(g, ub, p - 2)),
                 conj_field(ut));
    r = add(r, scale(second, 0.5 * double(p - 1)));
  }
  return r;
}

}  // namespace nlslab
