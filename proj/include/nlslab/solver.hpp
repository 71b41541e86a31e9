#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include "nlslab/diagonalizer.hpp"

namespace nlslab {

enum class Scheme { strang, rk4 };

inline const char* scheme_name(Scheme s) { return s == Scheme::strang ? "strang" : "rk4"; }

// Time integration of du/dt = -i Lap u + i sign |u|^{2p} u.
struct SolverConfig {
  double dt = 1e-3;
  double t_end = 1.0;
  Scheme scheme = Scheme::strang;
  int sign = 1;  // +1 or -1: the sign of the nonlinear term
  int p = 1;
  int observe_every = 1;  // record a telemetry row every this many steps
  bool dealias = true;    // project back to the base cutoff K after each step
  // Abort the run once |u|_{s0,R} exceeds this level (the run's a-priori ball).
  double guard = std::numeric_limits<double>::infinity();
  // Record (and optionally stop at) the first time |u|_{s1,R} exceeds this.
  double escape_threshold = std::numeric_limits<double>::infinity();
  bool stop_on_escape = false;
};

inline void validate(const SolverConfig& c) {
  if (!(c.dt > 0.0)) throw std::invalid_argument("solver: dt must be positive");
  if (!(c.t_end >= 0.0)) throw std::invalid_argument("solver: t_end must be nonnegative");
  if (c.sign != 1 && c.sign != -1) throw std::invalid_argument("solver: sign must be +1 or -1");
  if (c.p < 1) throw std::invalid_argument("solver: p must be >= 1");
  if (c.observe_every < 1) throw std::invalid_argument("solver: observe_every must be >= 1");
  if (c.scheme == Scheme::rk4 && !c.dealias)
    throw std::invalid_argument("solver: rk4 requires dealiasing (its vector field is defined on the truncated lattice)");
}

// Norms recorded along the trajectory; (N, cutoff_eps) parameterize the
// change of variables behind the transformed energy E_s = |w|_{s,R}^2.
struct TelemetryParams {
  double s0 = 1.0;
  double s1 = 3.0;
  double s = 4.0;
  double R = 2.0;
  int N = 8;
  double cutoff_eps = 0.1;
};

inline void validate(const TelemetryParams& t) {
  validate(NormParams{t.s0, t.R});
  if (!(t.s1 >= t.s0)) throw std::invalid_argument("telemetry: s1 must be >= s0");
  if (!(t.s >= t.s1)) throw std::invalid_argument("telemetry: s must be >= s1");
  validate(DiagParams{t.N, t.cutoff_eps, t.s, t.R});
}

struct Observation {
  double t = 0.0;
  double mass = 0.0;
  double hamiltonian = 0.0;
  double l2 = 0.0;
  double w_s0 = 0.0;  // |u|_{s0,R}
  double w_s1 = 0.0;  // |u|_{s1,R}
  double w_s = 0.0;   // |u|_{s,R}
  double hs1 = 0.0;   // ||u||_{H^{s1}} (sum form)
  double hs = 0.0;    // ||u||_{H^s}   (sum form)
  double e_s = 0.0;   // |w|_{s,R}^2 after the change of variables
  int escape_flag = 0;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<FourierField> states;
  std::vector<Observation> telemetry;
  bool aborted = false;
  std::string abort_reason;
  // First time |u|_{s1,R} exceeded the escape threshold; NaN if never.
  double escape_time = std::numeric_limits<double>::quiet_NaN();
  // First time |u|_{s0,R} exceeded the guard; NaN if never.
  double guard_time = std::numeric_limits<double>::quiet_NaN();
  double max_mass_drift = 0.0;  // max relative deviation of mass from its initial value
  double max_tail_fraction = 0.0;  // largest mass fraction above half the cutoff
  bool tail_warning = false;       // tail fraction exceeded 1e-6 at some observation
};

inline double mass(const FourierField& u) {
  double m = 0.0;
  for (const cplx& z : u.a) m += std::norm(z);
  return m;
}

// H = ||grad u||_{L2}^2 + sign/(p+1) * integral |u|^{2p+2} with the normalized
// measure; the potential term is the grid mean, exact while (2p+2) K < n.
inline double hamiltonian(DenseGrid& g, const FourierField& u, int p, int sign) {
  detail::require_product_fits(u.spec, (2 * p + 2) * u.kcur, 0, "hamiltonian");
  double grad = 0.0;
  for (std::int64_t i = 0; i < u.size(); ++i) {
    const Mode j = mode_at(u.spec.d, u.kcur, i);
    grad += double(mode_norm2_sq(j)) * std::norm(u.a[i]);
  }
  g.synthesize(u);
  const auto& b = g.values();
  double pot = 0.0;
  for (std::int64_t i = 0; i < g.total(); ++i) {
    const double m2 = std::norm(b[i]);
    double w = m2;
    for (int q = 0; q < p; ++q) w *= m2;
    pot += w;
  }
  pot /= double(g.total());
  return grad + double(sign) * pot / double(p + 1);
}

inline double hamiltonian(const FourierField& u, int p, int sign) {
  DenseGrid g = DenseGrid::for_spec(u.spec);
  return hamiltonian(g, u, p, sign);
}

namespace detail {

// Exact flow of the linear part du/dt = -i Lap u over time t: each mode
// rotates by exp(i |j|^2 t).
inline void linear_phase_inplace(FourierField& u, double t) {
  for (std::int64_t i = 0; i < u.size(); ++i) {
    const Mode j = mode_at(u.spec.d, u.kcur, i);
    u.a[i] *= std::polar(1.0, double(mode_norm2_sq(j)) * t);
  }
}

}  // namespace detail

// Exact linear propagator u -> e^{-i t Lap} u; an isometry of every norm here.
inline FourierField linear_flow(const FourierField& u, double t) {
  FourierField r = u;
  detail::linear_phase_inplace(r, t);
  return r;
}

namespace detail {

inline bool all_finite(const FourierField& u) {
  for (const cplx& z : u.a)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

}  // namespace detail

// One step of Strang splitting: half linear flow, exact pointwise nonlinear
// phase on the dense grid (|u(x)| is conserved by that sub-flow), half linear
// flow.  dealias=true projects the readback to the base cutoff K; otherwise
// the state grows up to the grid's representable cube.
inline FourierField strang_step(DenseGrid& g, const FourierField& u, double dt, int p, int sign,
                                bool dealias = true) {
  FourierField v = u;
  detail::linear_phase_inplace(v, 0.5 * dt);
  g.synthesize(v);
  auto& b = g.values();
  const double amp = double(sign) * dt;
  for (std::int64_t i = 0; i < g.total(); ++i) {
    const double m2 = std::norm(b[i]);
    double w = 1.0;
    for (int q = 0; q < p; ++q) w *= m2;
    b[i] *= std::polar(1.0, amp * w);
  }
  FourierField r = make_field(u.spec, 0);
  g.analyze_into(r, dealias ? std::min(u.spec.K, u.spec.grid_kcap()) : u.spec.grid_kcap());
  detail::linear_phase_inplace(r, 0.5 * dt);
  return r;
}

inline FourierField strang_step(const FourierField& u, double dt, int p, int sign,
                                bool dealias = true) {
  DenseGrid g = DenseGrid::for_spec(u.spec);
  return strang_step(g, u, dt, p, sign, dealias);
}

// Vector field on the truncated lattice: the power is read back only on the
// base cube, which the padded grid represents without aliasing.
inline FourierField truncated_rhs(DenseGrid& g, const FourierField& u, int p, int sign) {
  FourierField lin = scale(apply_laplacian(u), cplx(0.0, -1.0));
  FourierField nl =
      scale(power_nonlinearity(g, u, p, u.spec.K), cplx(0.0, double(sign)));
  return add(lin, nl);
}

// Classical fourth-order Runge-Kutta step on the truncated vector field.
inline FourierField rk4_step(DenseGrid& g, const FourierField& u, double dt, int p, int sign) {
  FourierField k1 = truncated_rhs(g, u, p, sign);
  FourierField k2 = truncated_rhs(g, add(u, scale(k1, 0.5 * dt)), p, sign);
  FourierField k3 = truncated_rhs(g, add(u, scale(k2, 0.5 * dt)), p, sign);
  FourierField k4 = truncated_rhs(g, add(u, scale(k3, dt)), p, sign);
  FourierField incr = add(add(k1, k4), scale(add(k2, k3), 2.0));
  return add(u, scale(incr, dt / 6.0));
}

inline FourierField rk4_step(const FourierField& u, double dt, int p, int sign) {
  DenseGrid g = DenseGrid::for_spec(u.spec);
  return rk4_step(g, u, dt, p, sign);
}

namespace detail {

// Norm telemetry sums over the full state; the Hamiltonian and transformed
// energy need grid products, so in padded (non-dealias) runs they are taken
// on the resolved core cube |j|_inf <= K, which equals the full state
// whenever dealiasing is on.
inline Observation observe(DenseGrid& g, const FourierField& u, double t, const SolverConfig& cfg,
                           const TelemetryParams& tel) {
  Observation o;
  o.t = t;
  o.mass = mass(u);
  const FourierField core =
      (u.kcur > u.spec.K) ? restrict_modes(u, u.spec.K) : u;
  o.hamiltonian = hamiltonian(g, core, cfg.p, cfg.sign);
  o.l2 = norm_l2(u);
  o.w_s0 = norm_weighted(u, tel.s0, tel.R);
  o.w_s1 = norm_weighted(u, tel.s1, tel.R);
  o.w_s = norm_weighted(u, tel.s, tel.R);
  o.hs1 = norm_hs_sum(u, tel.s1);
  o.hs = norm_hs_sum(u, tel.s);
  const DiagParams dp{tel.N, tel.cutoff_eps, tel.s, tel.R};
  const double wn = norm_weighted(w_transform(core, cfg.p, dp), tel.s, tel.R);
  o.e_s = wn * wn;
  o.escape_flag = (o.w_s1 > cfg.escape_threshold) ? 1 : 0;
  return o;
}

}  // namespace detail

// March u0 to t_end recording telemetry.  Guard/escape crossings and
// non-finite states stop or flag the run as data; they never throw.
inline Trajectory integrate(const FourierField& u0, const SolverConfig& cfg,
                            const TelemetryParams& tel) {
  validate(cfg);
  validate(tel);
  DenseGrid g = DenseGrid::for_spec(u0.spec);

  Trajectory traj;
  FourierField u = u0;

  const std::int64_t n_full = std::int64_t(std::floor(cfg.t_end / cfg.dt + 1e-12));
  const double rem = cfg.t_end - double(n_full) * cfg.dt;
  const bool partial = rem > 1e-12 * std::max(cfg.dt, cfg.t_end);
  const std::int64_t n_steps = n_full + (partial ? 1 : 0);

  const double mass0 = mass(u0);

  auto record = [&](double t) {
    Observation o = detail::observe(g, u, t, cfg, tel);
    if (mass0 > 0.0)
      traj.max_mass_drift = std::max(traj.max_mass_drift, std::abs(o.mass - mass0) / mass0);
    const double tail = mass(project_high(u, 0.5 * double(u.spec.K)));
    const double frac = (o.mass > 0.0) ? tail / o.mass : 0.0;
    traj.max_tail_fraction = std::max(traj.max_tail_fraction, frac);
    if (frac > 1e-6) traj.tail_warning = true;
    traj.times.push_back(t);
    traj.states.push_back(u);
    traj.telemetry.push_back(o);
  };

  record(0.0);
  if (std::isnan(traj.escape_time) && traj.telemetry.back().escape_flag)
    traj.escape_time = 0.0;
  if (traj.telemetry.back().w_s0 > cfg.guard) {
    traj.guard_time = 0.0;
    traj.aborted = true;
    traj.abort_reason = "initial state already outside the guard level";
    return traj;
  }
  if (cfg.stop_on_escape && traj.telemetry.back().escape_flag) {
    traj.aborted = true;
    traj.abort_reason = "initial state already beyond the escape threshold";
    return traj;
  }

  for (std::int64_t k = 1; k <= n_steps; ++k) {
    const double t = (partial && k == n_steps) ? cfg.t_end : double(k) * cfg.dt;
    const double h = (partial && k == n_steps) ? rem : cfg.dt;
    FourierField next = (cfg.scheme == Scheme::strang)
                            ? strang_step(g, u, h, cfg.p, cfg.sign, cfg.dealias)
                            : rk4_step(g, u, h, cfg.p, cfg.sign);
    if (!detail::all_finite(next)) {
      traj.aborted = true;
      traj.abort_reason = "state became non-finite; keeping the last valid state";
      break;
    }
    u = std::move(next);

    const double ws0 = norm_weighted(u, tel.s0, tel.R);
    const double ws1 = norm_weighted(u, tel.s1, tel.R);
    const bool guard_hit = ws0 > cfg.guard;
    const bool escape_hit = ws1 > cfg.escape_threshold;
    if (escape_hit && std::isnan(traj.escape_time)) traj.escape_time = t;
    if (guard_hit && std::isnan(traj.guard_time)) traj.guard_time = t;

    const bool due = (k % cfg.observe_every == 0) || k == n_steps;
    if (due || guard_hit || (escape_hit && cfg.stop_on_escape)) record(t);

    if (guard_hit) {
      traj.aborted = true;
      traj.abort_reason = "weighted norm at s0 exceeded the guard level";
      break;
    }
    if (escape_hit && cfg.stop_on_escape) {
      traj.aborted = true;
      traj.abort_reason = "weighted norm at s1 exceeded the escape threshold";
      break;
    }
  }
  return traj;
}

// CSV export, one row per observation.
inline void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_trajectory_csv: cannot open " + path);
  out << "t,mass,hamiltonian,l2,w_s0,w_s1,w_s,hs1,hs,E_s,escape_flag\n";
  char line[512];
  for (const Observation& o : traj.telemetry) {
    std::snprintf(line, sizeof line,
                  "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d\n", o.t, o.mass,
                  o.hamiltonian, o.l2, o.w_s0, o.w_s1, o.w_s, o.hs1, o.hs, o.e_s, o.escape_flag);
    out << line;
  }
}

}  // namespace nlslab
