#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nlslab/lattice.hpp"

namespace nlslab {

// Bump profile used by all paraproduct kernels: identically 1 on |xi| <= 5/4,
// identically 0 on |xi| >= 8/5, monotone quintic smoothstep in between.
inline double cutoff_chi(double xi) {
  constexpr double lo = 1.25, hi = 1.6;
  const double x = std::abs(xi);
  if (x <= lo) return 1.0;
  if (x >= hi) return 0.0;
  const double t = (hi - x) / (hi - lo);
  return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

struct CutoffSpec {
  double eps = 0.1;
};

inline void validate(const CutoffSpec& c) {
  if (!(c.eps > 0.0 && c.eps < 0.25))
    throw std::invalid_argument("cutoff: eps must lie in (0, 1/4)");
}

inline double cutoff_chi_eps(double eps, double xi) { return cutoff_chi(std::abs(xi) / eps); }

// Paraproduct kernel weight: the (a-frequency v, h-frequency w) pair enters
// T_a h with weight chi_eps(|v|/<w>).
inline double para_weight(double eps, const Mode& v, const Mode& w) {
  return cutoff_chi_eps(eps, mode_abs(v) / jap(w));
}

// Weight of the symmetric remainder completing the two paraproducts to a full
// product: psi(v,w) = 1 - chi_eps(|v|/<w>) - chi_eps(|w|/<v>).
inline double cutoff_psi(double eps, const Mode& v, const Mode& w) {
  return 1.0 - para_weight(eps, v, w) - para_weight(eps, w, v);
}

}  // namespace nlslab
