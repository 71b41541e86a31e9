#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "nlslab/constants.hpp"
#include "nlslab/parallel.hpp"

namespace nlslab {

// Guaranteed lifetime for admissible data of size eps:
//   (1/eps)^{2p} * 2^{2p(s1-s0) - 4(2p+2)} / M^{2p s0}.
// Written with exp2 on integer-valued arguments so reference values evaluate
// exactly in floating point.
inline double t_good(int p, double s0, double s1, double eps, double M) {
  if (!(p >= 1 && eps > 0.0 && M > 0.0 && s1 > s0))
    throw std::invalid_argument("t_good: need p >= 1, eps > 0, M > 0, s1 > s0");
  return std::pow(1.0 / eps, 2.0 * p) *
         std::exp2(2.0 * p * (s1 - s0) - 4.0 * (2.0 * p + 2.0)) / std::pow(M, 2.0 * p * s0);
}

inline double t_good(const ExperimentConfig& cfg) {
  if (!(cfg.M > 0.0))
    throw std::invalid_argument("t_good: the configuration does not pin M; estimate it first");
  return t_good(cfg.p, cfg.s0, cfg.s1, cfg.eps, cfg.M);
}

// One cell of the lifespan scan: data size eps and intermediate index s1,
// integrated to a horizon beyond the guaranteed lifetime with the escape
// threshold at twice the data radius delta.  An escape, should one occur,
// is data, not an error; infeasible cells (inadmissible data or broken
// parameter ladder) are reported with their reason, never dropped.
struct LifespanCell {
  int index = 0;
  double eps = 0.0;
  double s1 = 0.0;
  double s = 0.0;
  std::uint64_t seed = 0;
  bool feasible = false;
  std::string reason;  // admissibility violation or configuration error
  double delta = 0.0;
  double escape_radius = 0.0;   // 2 delta
  double t_guaranteed = 0.0;    // closed form above
  double horizon = 0.0;         // integration end
  double dt = 0.0;
  double observed_escape = std::numeric_limits<double>::quiet_NaN();  // NaN: none
  double sup_ws1_tgood = 0.0;   // sup of |u|_{s1,R} over [0, t_guaranteed]
  double ws1_initial = 0.0;
  double max_mass_drift = 0.0;
  bool tail_warning = false;
  bool pass = false;  // no escape before t_guaranteed
};

struct LifespanTable {
  std::vector<LifespanCell> cells;
  double M_used = 0.0;
  double R_used = 0.0;
  bool all_pass = false;  // every cell feasible and passing
};

// Run the (eps_grid x s1_grid) scan.  Cells are independent and run in
// parallel; each derives its own data seed from the master seed and its
// index, so the table is deterministic for every thread count.
inline LifespanTable lifespan_scan(const ExperimentConfig& base, const PinnedConstants& pc,
                                   double horizon_factor = 1.25) {
  validate(base);
  if (!(pc.M_hat > 0.0) || !(pc.R > 1.0))
    throw std::invalid_argument("lifespan: constants must be pinned first");
  if (!(horizon_factor > 1.0))
    throw std::invalid_argument("lifespan: the horizon must exceed the guaranteed lifetime");
  const std::vector<double> eps_list =
      base.eps_grid.empty() ? std::vector<double>{base.eps} : base.eps_grid;
  const std::vector<double> s1_list =
      base.s1_grid.empty() ? std::vector<double>{base.s1} : base.s1_grid;

  LifespanTable table;
  table.M_used = pc.M_hat;
  table.R_used = pc.R;
  table.cells.resize(eps_list.size() * s1_list.size());

  parallel_for(table.cells.size(), base.threads, [&](std::size_t idx) {
    LifespanCell cell;
    cell.index = int(idx);
    cell.eps = eps_list[idx / s1_list.size()];
    cell.s1 = s1_list[idx % s1_list.size()];
    cell.seed = detail::mix_seed(base.seed, 0x9c41ULL + idx);
    ExperimentConfig cfg = base;
    cfg.eps = cell.eps;
    cfg.s1 = cell.s1;
    cfg.s = std::max(base.s, cell.s1 + 1.0);
    cell.s = cfg.s;
    cfg.M = pc.M_hat;
    cfg.R = pc.R;
    cfg.data.seed = cell.seed;
    cfg.eps_grid.clear();
    cfg.s1_grid.clear();
    try {
      validate(cfg);
      auto [u0, rep] = gen_initial_data(cfg);
      cell.delta = rep.delta;
      cell.escape_radius = 2.0 * rep.delta;
      cell.t_guaranteed = t_good(cfg.p, cfg.s0, cfg.s1, cfg.eps, pc.M_hat);
      if (!rep.admissible()) {
        cell.reason = rep.violation;
        table.cells[idx] = cell;
        return;
      }
      cell.horizon = horizon_factor * cell.t_guaranteed;
      SolverConfig sc = cfg.resolved_solver();
      sc.t_end = cell.horizon;
      sc.dt = std::min(base.solver.dt, cell.t_guaranteed / 32.0);
      cell.dt = sc.dt;
      const double steps = cell.horizon / sc.dt;
      sc.observe_every = std::max(1, int(steps / 64.0));
      sc.guard = 1.0;  // the a-priori ball of the local theory
      sc.escape_threshold = cell.escape_radius;
      sc.stop_on_escape = false;
      Trajectory traj = integrate(u0, sc, cfg.telemetry());
      cell.feasible = true;
      cell.observed_escape = traj.escape_time;
      cell.ws1_initial = traj.telemetry.front().w_s1;
      for (const Observation& o : traj.telemetry)
        if (o.t <= cell.t_guaranteed * (1.0 + 1e-12))
          cell.sup_ws1_tgood = std::max(cell.sup_ws1_tgood, o.w_s1);
      cell.max_mass_drift = traj.max_mass_drift;
      cell.tail_warning = traj.tail_warning;
      if (traj.aborted) {
        cell.pass = false;
        cell.reason = traj.abort_reason;
      } else {
        cell.pass = std::isnan(cell.observed_escape) ||
                    cell.observed_escape >= cell.t_guaranteed * (1.0 - 1e-12);
        if (!cell.pass) cell.reason = "escaped before the guaranteed lifetime";
      }
    } catch (const std::exception& e) {
      cell.feasible = false;
      cell.pass = false;
      cell.reason = e.what();
    }
    table.cells[idx] = cell;
  });

  table.all_pass = !table.cells.empty();
  for (const LifespanCell& c : table.cells)
    table.all_pass = table.all_pass && c.feasible && c.pass;
  return table;
}

}  // namespace nlslab
