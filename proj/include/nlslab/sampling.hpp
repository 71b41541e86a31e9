#pragma once

#include <cmath>
#include <random>
#include <string>
#include <utility>

#include "nlslab/experiment.hpp"
#include "nlslab/norms.hpp"

namespace nlslab {

namespace detail {

// SplitMix64 finalizer: decorrelates seeds derived from one master seed.
inline std::uint64_t mix_seed(std::uint64_t x, std::uint64_t salt) {
  x += 0x9e3779b97f4a7c15ULL * (salt + 1);
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// FNV-1a over a short string, for salting seeds with an identifier.
inline std::uint64_t hash_name(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace detail

// Complex gaussian spectrum on |j|_inf <= kmax with envelope <j>^{-decay}.
inline FourierField random_spectrum(const LatticeSpec& spec, int kmax, double decay,
                                    std::mt19937_64& rng) {
  FourierField f = make_field(spec, kmax);
  std::normal_distribution<double> g(0.0, 1.0);
  for (std::int64_t i = 0; i < f.size(); ++i) {
    const Mode j = mode_at(spec.d, f.kcur, i);
    const double amp = std::pow(jap(j), -decay);
    f.a[i] = amp * cplx(g(rng), g(rng));
  }
  return f;
}

// Both smallness conditions the data must satisfy, with the quantities that
// enter them.  delta = hs1 + weighted_l2 is the radius that seeds the escape
// ball (threshold 2 delta) and the growth bounds.
struct AdmissibilityReport {
  double hs1 = 0.0;          // H^{s1} sum norm of the data
  double l2 = 0.0;           // L^2 norm of the data
  double weighted_l2 = 0.0;  // R^{s1} * l2 with R the weight floor
  double delta = 0.0;        // hs1 + weighted_l2
  double eps = 0.0;          // requested size
  bool hs1_ok = false;       // hs1 <= eps
  bool l2_ok = false;        // weighted_l2 <= eps
  std::string violation;     // empty when both conditions hold
  bool admissible() const { return hs1_ok && l2_ok; }
};

// Random initial data on the annulus j_min <= |j| <= j_max with uniformly
// random phases, normalised so the H^{s1} sum norm equals
// data.target_fraction * eps.  The report carries both smallness checks; a
// failed check is recorded, not thrown, so infeasible parameter cells can be
// reported downstream.
inline std::pair<FourierField, AdmissibilityReport> gen_initial_data(
    const ExperimentConfig& cfg) {
  validate(cfg);
  const double R = cfg.weight_floor();
  if (!(R > 1.0))
    throw std::invalid_argument(
        "data: weight floor is unset; give M (or R) a value, or pin constants first");
  const LatticeSpec spec = cfg.lattice();
  FourierField u = make_field(spec, cfg.data.j_max);
  const std::uint64_t seed =
      cfg.data.seed ? cfg.data.seed : detail::mix_seed(cfg.seed, 0x64617461ULL);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> phase(0.0, 6.283185307179586476925286766559);
  const double lo2 = double(cfg.data.j_min) * double(cfg.data.j_min);
  const double hi2 = double(cfg.data.j_max) * double(cfg.data.j_max);
  std::int64_t excited = 0;
  for (std::int64_t i = 0; i < u.size(); ++i) {
    const Mode j = mode_at(spec.d, u.kcur, i);
    const double r2 = double(mode_norm2_sq(j));
    if (r2 < lo2 || r2 > hi2) continue;
    double amp = 1.0;
    if (cfg.data.profile == DataProfile::decaying)
      amp = std::pow(jap(j), -cfg.data.decay_exponent);
    const double th = phase(rng);
    u.a[i] = amp * cplx(std::cos(th), std::sin(th));
    ++excited;
  }
  if (excited == 0)
    throw std::invalid_argument("data: the requested annulus contains no lattice modes");
  const double raw = norm_hs_sum(u, cfg.s1);
  const double target = cfg.data.target_fraction * cfg.eps;
  u = scale(u, target / raw);

  AdmissibilityReport rep;
  rep.eps = cfg.eps;
  rep.hs1 = norm_hs_sum(u, cfg.s1);
  rep.l2 = norm_l2(u);
  rep.weighted_l2 = std::pow(R, cfg.s1) * rep.l2;
  rep.delta = rep.hs1 + rep.weighted_l2;
  const double tol = 1.0 + 1e-12;
  rep.hs1_ok = rep.hs1 <= cfg.eps * tol;
  rep.l2_ok = rep.weighted_l2 <= cfg.eps * tol;
  if (!rep.hs1_ok) rep.violation += "H^{s1} norm of the data exceeds eps";
  if (!rep.l2_ok) {
    if (!rep.violation.empty()) rep.violation += "; ";
    rep.violation += "weighted L^2 norm R^{s1}||u0||_{L^2} exceeds eps (annulus sits too low)";
  }
  return {std::move(u), rep};
}

}  // namespace nlslab
