#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "nlslab/constants.hpp"

namespace nlslab {

// The four a-priori bounds evaluated along a recorded trajectory.  All take
// the telemetry as ground truth and compare the observed left side against
// the bound's right side at every observation time:
//   basic:    |u|_{s1,R}^2 <= |u(0)|_{s1,R}^2
//               + M^{2p s0} 2^{-2p(s1-s0)} int |u|_{s1,R}^{2p+2}
//   high:     |u|_{s,R}^2  <= |u(0)|_{s,R}^2
//               exp( 2 M^{2p(s-s1+s0)} 2^{-2p(s1-s0)} int |u|_{s1,R}^{2p} )
//   improved: |u|_{s,R}^2  <= C^{2ps(s-s1)} ( |u(0)|_{s,R}^2
//               + ( M^{2p(s-s1+s0)} 2^{-2p(s1-s0)} int |u|_{s1,R}^{2p+1/(s-s1)} )^{2(s-s1)} )
//   growth:   ||u||_{H^s}  <= 3 C^{ps(s-s1)} ( ||u(0)||_{H^s} + (2M)^s ||u(0)||_{L^2} )
//               ( 1 + ( M^{2p(s-s1)} 2^{4p} M^{2p s0} 2^{-2p(s1-s0)} eps^{2p} t )^{s-s1} )
enum class CertificateKind { basic, high, improved, growth };

inline std::string to_string(CertificateKind k) {
  switch (k) {
    case CertificateKind::basic: return "basic";
    case CertificateKind::high: return "high";
    case CertificateKind::improved: return "improved";
    case CertificateKind::growth: return "growth";
  }
  return "?";
}

struct MarginPoint {
  double t = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // rhs - lhs
};

struct CertificateReport {
  CertificateKind kind = CertificateKind::basic;
  std::vector<MarginPoint> points;
  double worst_margin = std::numeric_limits<double>::infinity();
  double inflation_factor = 0.0;  // max over points of lhs / rhs; > 1 flags a violation
  bool all_nonnegative = true;
};

// Evaluate one bound along the trajectory.  Integrals are trapezoid sums on
// the observation grid.  A violated bound is reported through the margins
// and the inflation factor, never clipped.
inline CertificateReport energy_certificate(const Trajectory& traj, const ExperimentConfig& cfg,
                                            const PinnedConstants& pc, CertificateKind kind) {
  if (traj.telemetry.empty())
    throw std::invalid_argument("certificate: trajectory carries no telemetry");
  if (!(pc.M_hat > 0.0) || !(pc.C_hat > 0.0) || !(pc.R > 1.0))
    throw std::invalid_argument("certificate: constants must be pinned first");
  const double p = double(cfg.p);
  const double s0 = cfg.s0, s1 = cfg.s1, s = cfg.s;
  const double gap = s - s1;  // >= 1 by validation
  const double drop = std::exp2(-2.0 * p * (s1 - s0));

  CertificateReport rep;
  rep.kind = kind;
  rep.points.reserve(traj.telemetry.size());
  const Observation& first = traj.telemetry.front();

  double integral = 0.0;
  double prev_t = first.t, prev_g = 0.0;
  for (std::size_t k = 0; k < traj.telemetry.size(); ++k) {
    const Observation& o = traj.telemetry[k];
    double integrand = 0.0, lhs = 0.0, rhs = 0.0;
    switch (kind) {
      case CertificateKind::basic:
        integrand = std::pow(o.w_s1, 2.0 * p + 2.0);
        break;
      case CertificateKind::high:
        integrand = std::pow(o.w_s1, 2.0 * p);
        break;
      case CertificateKind::improved:
        integrand = std::pow(o.w_s1, 2.0 * p + 1.0 / gap);
        break;
      case CertificateKind::growth:
        integrand = 0.0;  // closed form in t, no telemetry integral
        break;
    }
    if (k > 0) integral += 0.5 * (o.t - prev_t) * (integrand + prev_g);
    prev_t = o.t;
    prev_g = integrand;

    switch (kind) {
      case CertificateKind::basic:
        lhs = o.w_s1 * o.w_s1;
        rhs = first.w_s1 * first.w_s1 + std::pow(pc.M_hat, 2.0 * p * s0) * drop * integral;
        break;
      case CertificateKind::high:
        lhs = o.w_s * o.w_s;
        rhs = first.w_s * first.w_s *
              std::exp(2.0 * std::pow(pc.M_hat, 2.0 * p * (s - s1 + s0)) * drop * integral);
        break;
      case CertificateKind::improved:
        lhs = o.w_s * o.w_s;
        rhs = std::pow(pc.C_hat, 2.0 * p * s * gap) *
              (first.w_s * first.w_s +
               std::pow(std::pow(pc.M_hat, 2.0 * p * (s - s1 + s0)) * drop * integral,
                        2.0 * gap));
        break;
      case CertificateKind::growth: {
        lhs = o.hs;
        const double rate = std::pow(pc.M_hat, 2.0 * p * gap) * std::exp2(4.0 * p) *
                            std::pow(pc.M_hat, 2.0 * p * s0) * drop * std::pow(cfg.eps, 2.0 * p);
        rhs = 3.0 * std::pow(pc.C_hat, p * s * gap) *
              (first.hs + std::pow(2.0 * pc.M_hat, s) * first.l2) *
              (1.0 + std::pow(rate * (o.t - first.t), gap));
        break;
      }
    }
    MarginPoint pt{o.t, lhs, rhs, rhs - lhs};
    rep.worst_margin = std::min(rep.worst_margin, pt.margin);
    const double infl = rhs > 0.0 ? lhs / rhs : (lhs > 0.0 ? std::numeric_limits<double>::infinity() : 1.0);
    rep.inflation_factor = std::max(rep.inflation_factor, infl);
    rep.points.push_back(pt);
  }
  rep.all_nonnegative = rep.worst_margin >= 0.0;
  return rep;
}

// Least-squares fit of v(t)/v(0) ~ (1 + beta t)^gamma on a log scale, by a
// golden grid over beta (log-spaced, twice refined) with the optimal gamma
// in closed form for each beta.  A flat series fits gamma = 0.
struct PowerFit {
  double gamma = 0.0;
  double beta = 0.0;
  double residual = 0.0;
};

inline PowerFit fit_power_growth(const std::vector<double>& times,
                                 const std::vector<double>& values) {
  if (times.size() != values.size() || times.size() < 3)
    throw std::invalid_argument("fit: need at least three samples");
  for (double v : values)
    if (!(v > 0.0)) throw std::invalid_argument("fit: values must be positive");
  const double t0 = times.front();
  std::vector<double> y(times.size());
  double ymax = 0.0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    y[k] = std::log(values[k] / values.front());
    ymax = std::max(ymax, std::abs(y[k]));
  }
  if (ymax < 1e-9) return {};

  auto eval = [&](double beta, PowerFit& out) {
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t k = 0; k < times.size(); ++k) {
      const double x = std::log1p(beta * (times[k] - t0));
      sxx += x * x;
      sxy += x * y[k];
    }
    const double gamma = sxx > 0.0 ? sxy / sxx : 0.0;
    double res = 0.0;
    for (std::size_t k = 0; k < times.size(); ++k) {
      const double x = std::log1p(beta * (times[k] - t0));
      res += (y[k] - gamma * x) * (y[k] - gamma * x);
    }
    out.beta = beta;
    out.gamma = gamma;
    out.residual = res;
  };

  PowerFit best;
  best.residual = std::numeric_limits<double>::infinity();
  double lo = -4.0, hi = 4.0;  // log10 range for beta
  for (int round = 0; round < 3; ++round) {
    const int npts = 81;
    PowerFit cand;
    double best_log = lo;
    for (int i = 0; i < npts; ++i) {
      const double lb = lo + (hi - lo) * double(i) / double(npts - 1);
      eval(std::pow(10.0, lb), cand);
      if (cand.residual < best.residual) {
        best = cand;
        best_log = lb;
      }
    }
    const double step = (hi - lo) / double(npts - 1);
    lo = best_log - 2.0 * step;
    hi = best_log + 2.0 * step;
  }
  return best;
}

}  // namespace nlslab
