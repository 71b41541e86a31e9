#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "nlslab/solver.hpp"

namespace nlslab {

// Shape of the random initial data: unit amplitudes on the excited annulus,
// or polynomially decaying ones.  Phases are always uniformly random.
enum class DataProfile { flat, decaying };

struct DataSpec {
  int j_min = 8;   // inner Euclidean radius of the excited annulus, >= 1
  int j_max = 16;  // outer radius, <= K
  DataProfile profile = DataProfile::flat;
  double decay_exponent = 2.0;   // amplitude ~ <j>^{-decay_exponent} when decaying
  double target_fraction = 1.0;  // the H^{s1} norm of the data is set to this fraction of eps
  std::uint64_t seed = 0;        // 0: derive the draw seed from the experiment seed
};

inline void validate(const DataSpec& ds, int K) {
  if (ds.j_min < 1)
    throw std::invalid_argument(
        "data: j_min must be >= 1; mass on the zero mode defeats the weighted L^2 smallness");
  if (ds.j_max < ds.j_min) throw std::invalid_argument("data: j_max must be >= j_min");
  if (ds.j_max > K) throw std::invalid_argument("data: j_max must not exceed the cutoff K");
  if (!(ds.decay_exponent >= 0.0))
    throw std::invalid_argument("data: decay_exponent must be >= 0");
  if (!(ds.target_fraction > 0.0 && ds.target_fraction <= 1.0))
    throw std::invalid_argument("data: target_fraction must lie in (0, 1]");
}

// One experiment: lattice, regularity ladder s0 < s1 < s, data size eps,
// constants (M multiplicative, R weight floor), diagonalization threshold N,
// and the time-stepping setup.  p and sign here are authoritative; they are
// copied onto the solver when a run starts.
struct ExperimentConfig {
  int d = 1;           // spatial dimension (1, 2 or 3)
  int p = 1;           // nonlinearity |u|^{2p} u
  int K = 32;          // Fourier cube cutoff |j|_inf <= K
  int pad_factor = 4;  // dense-grid oversampling per axis
  double s0 = 1.0;     // low index, must exceed d/2
  double s1 = 3.0;     // intermediate index, >= s0 + 2
  double s = 4.0;      // high index, >= s1 + 1
  double eps = 0.1;    // data size in the H^{s1} sum norm
  double M = 2.0;      // product constant; 0 requests estimation
  double R = 0.0;      // weight floor; 0 means "freeze at 2 M"
  int N = 8;           // truncation threshold of the change of variables
  double cutoff_eps = 0.1;  // relative bandwidth of the paraproduct cutoff
  int sign = +1;            // +1 defocusing, -1 focusing
  std::uint64_t seed = 1;   // master seed; every random draw derives from it
  int threads = 0;          // worker threads for scans; 0 picks hardware concurrency
  DataSpec data;
  SolverConfig solver;
  std::vector<double> eps_grid;  // lifespan scan: data sizes (empty: {eps})
  std::vector<double> s1_grid;   // lifespan scan: intermediate indices (empty: {s1})

  double weight_floor() const { return R > 0.0 ? R : 2.0 * M; }
  LatticeSpec lattice() const { return LatticeSpec{d, K, pad_factor}; }
  TelemetryParams telemetry() const {
    return TelemetryParams{s0, s1, s, weight_floor(), N, cutoff_eps};
  }
  // Solver settings with the experiment-level nonlinearity stamped on.
  SolverConfig resolved_solver() const {
    SolverConfig sc = solver;
    sc.p = p;
    sc.sign = sign;
    return sc;
  }
};

inline void validate(const ExperimentConfig& cfg) {
  validate(cfg.lattice());
  if (cfg.p < 1) throw std::invalid_argument("experiment: p must be >= 1");
  if (!(cfg.s0 > 0.5 * cfg.d))
    throw std::invalid_argument("experiment: s0 must exceed d/2 (algebra threshold)");
  if (!(cfg.s1 >= cfg.s0 + 2.0))
    throw std::invalid_argument("experiment: s1 must be at least s0 + 2");
  if (!(cfg.s >= cfg.s1 + 1.0))
    throw std::invalid_argument("experiment: s must be at least s1 + 1");
  if (!(cfg.eps > 0.0 && cfg.eps < 1.0))
    throw std::invalid_argument("experiment: eps must lie in (0, 1)");
  if (cfg.M < 0.0) throw std::invalid_argument("experiment: M must be >= 0 (0 = estimate)");
  if (cfg.M > 0.0 && !(2.0 * cfg.M > 1.0))
    throw std::invalid_argument("experiment: M must exceed 1/2 so the weight floor 2M exceeds 1");
  if (cfg.R < 0.0) throw std::invalid_argument("experiment: R must be >= 0 (0 = freeze at 2M)");
  if (cfg.R > 0.0 && !(cfg.R > 1.0))
    throw std::invalid_argument("experiment: an explicit weight floor R must exceed 1");
  if (cfg.N < 1) throw std::invalid_argument("experiment: N must be >= 1");
  validate(CutoffSpec{cfg.cutoff_eps});
  if (cfg.sign != 1 && cfg.sign != -1)
    throw std::invalid_argument("experiment: sign must be +1 or -1");
  validate(cfg.data, cfg.K);
  validate(cfg.resolved_solver());
  for (double e : cfg.eps_grid)
    if (!(e > 0.0 && e < 1.0))
      throw std::invalid_argument("experiment: eps_grid entries must lie in (0, 1)");
  for (double v : cfg.s1_grid)
    if (!(v > 0.0)) throw std::invalid_argument("experiment: s1_grid entries must be positive");
}

}  // namespace nlslab
