#pragma once

#include <algorithm>
#include <set>
#include <utility>

#include "nlslab/diagonalizer.hpp"
#include "nlslab/sampling.hpp"

namespace nlslab {

// Constants frozen before any certificate is evaluated: the product constant
// M_hat, the norm-equivalence constant C_hat of the change of variables, and
// the weight floor R.  The floor is frozen at 2 * M_hat; because estimating
// M_hat itself needs a floor, the estimate runs once with a provisional
// floor of 2 and once with the resulting 2 * M_hat before freezing.
struct PinnedConstants {
  double M_hat = 0.0;
  double C_hat = 0.0;
  double R = 0.0;
  int samples = 0;
  std::uint64_t seed = 0;
};

// Empirical product constant: the largest normalised ratio
//   ( |u^{q1} conj(u)^{q2}|_{s,R} / (|u|_{s0,R}^{q1+q2-1} |u|_{s,R}) )^{1/((q1+q2-1) s)}
// over random spectra with several decay envelopes and the monomial set
// {(1,1), (2,1), (2,2), (p+1, p)}.  Reported with a floor of 1.
inline double estimate_tame_constant(const ExperimentConfig& cfg, int n_samples, double R_use) {
  validate(cfg.lattice());
  validate(NormParams{cfg.s, R_use});
  if (n_samples < 1) throw std::invalid_argument("estimate: need at least one sample");
  std::set<std::pair<int, int>> pairs{{1, 1}, {2, 1}, {2, 2}, {cfg.p + 1, cfg.p}};
  int q_max = 0;
  for (const auto& [q1, q2] : pairs) q_max = std::max(q_max, q1 + q2);
  const LatticeSpec spec{cfg.d, cfg.K, std::max(cfg.pad_factor, q_max)};
  DenseGrid g = DenseGrid::for_spec(spec);
  double best = 1.0;
  for (int i = 0; i < n_samples; ++i) {
    std::mt19937_64 rng(detail::mix_seed(cfg.seed, 0x74616d65ULL + std::uint64_t(i)));
    const double decay = 0.75 * double(i % 4);
    const FourierField u = random_spectrum(spec, cfg.K, decay, rng);
    const FourierField ubar = conj_field(u);
    const double lo = norm_weighted(u, cfg.s0, R_use);
    const double hi = norm_weighted(u, cfg.s, R_use);
    for (const auto& [q1, q2] : pairs) {
      const int q = q1 + q2;
      const FourierField z = multiply(g, pow_field(g, u, q1), pow_field(g, ubar, q2));
      const double ratio = norm_weighted(z, cfg.s, R_use) / (std::pow(lo, q - 1) * hi);
      best = std::max(best, std::pow(ratio, 1.0 / ((q - 1) * cfg.s)));
    }
  }
  return best;
}

// Empirical norm-equivalence constant of the change of variables: the
// largest of (|w|_{s,R}/|u|_{s,R})^{1/(p s)} and its reciprocal analogue over
// random spectra scaled well inside the unit low-norm ball.  Floor 1.
inline double estimate_equivalence_constant(const ExperimentConfig& cfg, int n_samples,
                                            double R_use) {
  validate(NormParams{cfg.s, R_use});
  if (n_samples < 1) throw std::invalid_argument("estimate: need at least one sample");
  const LatticeSpec spec{cfg.d, cfg.K, std::max(cfg.pad_factor, 2 * cfg.p + 2)};
  const DiagParams prm{cfg.N, cfg.cutoff_eps, cfg.s, R_use};
  double best = 1.0;
  for (int i = 0; i < n_samples; ++i) {
    std::mt19937_64 rng(detail::mix_seed(cfg.seed, 0x65717569ULL + std::uint64_t(i)));
    const double decay = 1.0 + 0.5 * double(i % 3);
    FourierField u = random_spectrum(spec, cfg.K, decay, rng);
    u = scale(u, 0.4 / norm_weighted(u, cfg.s0, R_use));
    const FourierField w = w_transform(u, cfg.p, prm);
    const double nu = norm_weighted(u, cfg.s, R_use);
    const double nw = norm_weighted(w, cfg.s, R_use);
    const double ratio = std::max(nw / nu, nu / nw);
    best = std::max(best, std::pow(ratio, 1.0 / (cfg.p * cfg.s)));
  }
  return best;
}

// Freeze (M_hat, R, C_hat) for a configuration.  A positive cfg.M pins the
// product constant by fiat; otherwise it is estimated with the two-stage
// floor bootstrap.  An explicit cfg.R wins over the 2 M_hat convention.
inline PinnedConstants pin_constants(const ExperimentConfig& cfg, int n_samples = 16) {
  validate(cfg);
  PinnedConstants pc;
  pc.samples = n_samples;
  pc.seed = cfg.seed;
  if (cfg.M > 0.0) {
    pc.M_hat = cfg.M;
    pc.R = cfg.weight_floor();
  } else if (cfg.R > 0.0) {
    pc.R = cfg.R;
    pc.M_hat = estimate_tame_constant(cfg, n_samples, pc.R);
  } else {
    const double m0 = estimate_tame_constant(cfg, n_samples, 2.0);
    pc.M_hat = estimate_tame_constant(cfg, n_samples, 2.0 * m0);
    pc.R = 2.0 * pc.M_hat;
  }
  pc.C_hat = estimate_equivalence_constant(cfg, n_samples, pc.R);
  return pc;
}

}  // namespace nlslab
