#pragma once

#include <complex>
#include <vector>

#include <nlohmann/json.hpp>

#include "nlslab/lattice.hpp"

namespace nlslab {

using cplx = std::complex<double>;

// Truncated Fourier series on the torus, u(x) = sum_j a(j) e^{i j.x}.
// Coefficients are normalized so that a pointwise product corresponds to a
// plain coefficient convolution and (u,v)_{L2} = sum_j a_u(j) conj(a_v(j)).
//
// spec is the root lattice of the experiment; kcur is the current support
// cutoff (products enlarge it, truncation shrinks it).  kcur may exceed
// spec.K but never the dense-grid capacity.
struct FourierField {
  LatticeSpec spec;
  int kcur = 0;
  std::vector<cplx> a;

  std::int64_t size() const { return cube_size(spec.d, kcur); }
  cplx at(const Mode& j) const {
    return in_cube(spec.d, kcur, j) ? a[mode_index(spec.d, kcur, j)] : cplx(0.0);
  }
  cplx& ref(const Mode& j) { return a[mode_index(spec.d, kcur, j)]; }
};

inline FourierField make_field(const LatticeSpec& spec, int kcur = -1) {
  validate(spec);
  FourierField f;
  f.spec = spec;
  f.kcur = (kcur < 0) ? spec.K : kcur;
  if (f.kcur > spec.grid_kcap())
    throw std::invalid_argument("make_field: cutoff exceeds dense-grid capacity");
  f.a.assign(cube_size(spec.d, f.kcur), cplx(0.0));
  return f;
}

inline void require_same_root(const FourierField& u, const FourierField& v, const char* op) {
  if (!(u.spec == v.spec)) throw std::invalid_argument(std::string(op) + ": lattice spec mismatch");
}

// Coefficients of the complex conjugate field: conj(u)^(j) = conj(u^(-j)).
inline FourierField conj_field(const FourierField& u) {
  FourierField r = u;
  for (std::int64_t i = 0; i < u.size(); ++i) {
    Mode j = mode_at(u.spec.d, u.kcur, i);
    Mode mj{-j[0], -j[1], -j[2]};
    r.a[i] = std::conj(u.a[mode_index(u.spec.d, u.kcur, mj)]);
  }
  return r;
}

inline FourierField embed(const FourierField& u, int knew) {
  if (knew < u.kcur) throw std::invalid_argument("embed: target cutoff smaller than current");
  if (knew == u.kcur) return u;
  FourierField r = make_field(u.spec, knew);
  for (std::int64_t i = 0; i < u.size(); ++i)
    r.a[mode_index(u.spec.d, knew, mode_at(u.spec.d, u.kcur, i))] = u.a[i];
  return r;
}

inline FourierField restrict_modes(const FourierField& u, int knew) {
  if (knew >= u.kcur) return u;
  FourierField r = make_field(u.spec, knew);
  for (std::int64_t i = 0; i < r.size(); ++i)
    r.a[i] = u.at(mode_at(u.spec.d, knew, i));
  return r;
}

inline FourierField lincomb(cplx alpha, const FourierField& u, cplx beta, const FourierField& v) {
  require_same_root(u, v, "lincomb");
  const int k = std::max(u.kcur, v.kcur);
  FourierField r = make_field(u.spec, k);
  for (std::int64_t i = 0; i < r.size(); ++i) {
    Mode j = mode_at(u.spec.d, k, i);
    r.a[i] = alpha * u.at(j) + beta * v.at(j);
  }
  return r;
}

inline FourierField add(const FourierField& u, const FourierField& v) { return lincomb(1.0, u, 1.0, v); }
inline FourierField sub(const FourierField& u, const FourierField& v) { return lincomb(1.0, u, -1.0, v); }

inline FourierField scale(const FourierField& u, cplx alpha) {
  FourierField r = u;
  for (auto& c : r.a) c *= alpha;
  return r;
}

// --- serialization: header plus one (j, re, im) triple per stored mode ---

inline nlohmann::json to_json(const FourierField& u) {
  nlohmann::json h;
  h["format"] = "nlslab-field-v1";
  h["d"] = u.spec.d;
  h["K"] = u.spec.K;
  h["pad_factor"] = u.spec.pad_factor;
  h["kcur"] = u.kcur;
  nlohmann::json modes = nlohmann::json::array();
  for (std::int64_t i = 0; i < u.size(); ++i) {
    const cplx c = u.a[i];
    if (c == cplx(0.0)) continue;
    Mode j = mode_at(u.spec.d, u.kcur, i);
    nlohmann::json t = nlohmann::json::array();
    for (int a = 0; a < u.spec.d; ++a) t.push_back(j[a]);
    t.push_back(c.real());
    t.push_back(c.imag());
    modes.push_back(std::move(t));
  }
  h["modes"] = std::move(modes);
  return h;
}

inline FourierField field_from_json(const nlohmann::json& h) {
  if (!h.contains("format") || h.at("format") != "nlslab-field-v1")
    throw std::invalid_argument("field_from_json: unknown format");
  LatticeSpec spec{h.at("d").get<int>(), h.at("K").get<int>(), h.at("pad_factor").get<int>()};
  FourierField f = make_field(spec, h.at("kcur").get<int>());
  for (const auto& t : h.at("modes")) {
    if (int(t.size()) != spec.d + 2)
      throw std::invalid_argument("field_from_json: malformed mode triple");
    Mode j{0, 0, 0};
    for (int a = 0; a < spec.d; ++a) j[a] = t[a].get<int>();
    if (!in_cube(spec.d, f.kcur, j))
      throw std::invalid_argument("field_from_json: mode outside stated cutoff");
    f.ref(j) = cplx(t[spec.d].get<double>(), t[spec.d + 1].get<double>());
  }
  return f;
}

}  // namespace nlslab
