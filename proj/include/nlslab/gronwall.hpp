#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace nlslab {

// The two integral-inequality closures used by the energy estimates:
//   exponential:  x(t) <= M + int_0^t f x dσ          =>  x <= M exp(int f)
//   power:        x(t) <= M + (1-a)^{-1} int f x^a dσ =>  x^{1-a} <= M^{1-a} + int f
enum class GronwallKind { exponential, power };

// Evaluate the closed-form majorant on the sample grid, integrating f by the
// trapezoid rule.  times must be strictly increasing, f nonnegative, and for
// the power kind alpha must lie strictly inside (0, 1).
inline std::vector<double> gronwall_bound(GronwallKind kind, double M, double alpha,
                                          const std::vector<double>& times,
                                          const std::vector<double>& f) {
  if (times.empty() || times.size() != f.size())
    throw std::invalid_argument("gronwall: times and f must be nonempty and equal length");
  if (!(M >= 0.0)) throw std::invalid_argument("gronwall: M must be >= 0");
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (!(f[k] >= 0.0)) throw std::invalid_argument("gronwall: f must be nonnegative");
    if (k > 0 && !(times[k] > times[k - 1]))
      throw std::invalid_argument("gronwall: times must be strictly increasing");
  }
  if (kind == GronwallKind::power && !(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("gronwall: the power kind needs alpha strictly inside (0, 1)");

  std::vector<double> out(times.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (k > 0) acc += 0.5 * (times[k] - times[k - 1]) * (f[k] + f[k - 1]);
    if (kind == GronwallKind::exponential) {
      out[k] = M * std::exp(acc);
    } else {
      const double e = 1.0 - alpha;
      out[k] = std::pow(std::pow(M, e) + acc, 1.0 / e);
    }
  }
  return out;
}

}  // namespace nlslab
