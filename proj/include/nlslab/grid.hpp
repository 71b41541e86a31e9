#pragma once

#include <mutex>

#include <fftw3.h>

#include "nlslab/field.hpp"

namespace nlslab {

class PaddingError : public std::runtime_error {
 public:
  explicit PaddingError(const std::string& msg) : std::runtime_error(msg) {}
};

namespace detail {
inline std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace detail

// Dense collocation grid of side n per axis with cached FFTW plans.  One
// instance per worker thread; plan creation is serialized, execution is not.
class DenseGrid {
 public:
  DenseGrid(int d, int n) : d_(d), n_(n) {
    std::int64_t total = 1;
    for (int a = 0; a < d; ++a) total *= n;
    total_ = total;
    buf_.assign(total_, cplx(0.0));
    int dims[3] = {n, n, n};
    auto* p = reinterpret_cast<fftw_complex*>(buf_.data());
    std::lock_guard<std::mutex> lock(detail::fftw_planner_mutex());
    synth_ = fftw_plan_dft(d_, dims, p, p, FFTW_BACKWARD, FFTW_ESTIMATE);
    anal_ = fftw_plan_dft(d_, dims, p, p, FFTW_FORWARD, FFTW_ESTIMATE);
    if (!synth_ || !anal_) throw std::runtime_error("DenseGrid: FFT plan creation failed");
  }
  DenseGrid(const DenseGrid&) = delete;
  DenseGrid& operator=(const DenseGrid&) = delete;
  ~DenseGrid() {
    std::lock_guard<std::mutex> lock(detail::fftw_planner_mutex());
    fftw_destroy_plan(synth_);
    fftw_destroy_plan(anal_);
  }

  static DenseGrid for_spec(const LatticeSpec& s) { return DenseGrid(s.d, s.grid_n()); }

  int d() const { return d_; }
  int n() const { return n_; }
  std::int64_t total() const { return total_; }
  std::vector<cplx>& values() { return buf_; }
  const std::vector<cplx>& values() const { return buf_; }

  // Coefficients -> grid values u(x_m), x_m = 2 pi m / n per axis.
  void synthesize(const FourierField& f) {
    if (f.kcur > rep_cap()) throw PaddingError("synthesize: field cutoff exceeds grid capacity");
    std::fill(buf_.begin(), buf_.end(), cplx(0.0));
    for (std::int64_t i = 0; i < f.size(); ++i) {
      const cplx c = f.a[i];
      if (c == cplx(0.0)) continue;
      buf_[wrap_index(mode_at(f.spec.d, f.kcur, i))] = c;
    }
    fftw_execute(synth_);
  }

  // Grid values -> coefficients on |j|_inf <= kout.  Exact when the grid
  // holds a trigonometric polynomial of per-axis degree <= (n-1)/2.
  void analyze_into(FourierField& out, int kout) {
    if (kout > rep_cap()) throw PaddingError("analyze: requested cutoff exceeds grid capacity");
    fftw_execute(anal_);
    const double inv = 1.0 / double(total_);
    out.kcur = kout;
    out.a.assign(cube_size(out.spec.d, kout), cplx(0.0));
    for (std::int64_t i = 0; i < out.size(); ++i)
      out.a[i] = buf_[wrap_index(mode_at(out.spec.d, kout, i))] * inv;
  }

  // Largest cutoff representable without ambiguity (even n loses the lone
  // -n/2 mode, which has no positive partner).
  int rep_cap() const { return (n_ % 2 == 0) ? n_ / 2 - 1 : (n_ - 1) / 2; }

 private:
  std::int64_t wrap_index(const Mode& j) const {
    std::int64_t idx = 0;
    for (int a = 0; a < d_; ++a) {
      int w = j[a] % n_;
      if (w < 0) w += n_;
      idx = idx * n_ + w;
    }
    return idx;
  }

  int d_, n_;
  std::int64_t total_ = 0;
  std::vector<cplx> buf_;
  fftw_plan synth_ = nullptr, anal_ = nullptr;
};

namespace detail {
// Circular convolution on the n-grid reproduces the linear one at every read
// index |j| <= kread iff no true mode within |m| <= kresult wraps into that
// window, i.e. n >= kresult + kread + 1.  Reading the full support means
// kread = kresult, recovering the classical 2*kresult+1 <= n condition.
inline void require_product_fits(const LatticeSpec& spec, int kresult, int kread, const char* op) {
  const int n = spec.grid_n();
  const int window = std::min(kread, kresult);
  if (kresult + window + 1 > n) {
    const int need = (kresult + window + 1 + 2 * spec.K) / (2 * spec.K + 1);
    throw PaddingError(std::string(op) + ": product support exceeds the dense grid; pad_factor >= " +
                       std::to_string(need) + " required");
  }
}
}  // namespace detail

// Exact pointwise product via the padded grid.  The circular convolution on
// the grid equals the linear one because 2*(ku+kv)+1 <= n is enforced.
// target_k < 0 keeps the full product support ku+kv.
inline FourierField multiply(DenseGrid& g, const FourierField& u, const FourierField& v,
                             int target_k = -1) {
  require_same_root(u, v, "multiply");
  const int kfull = u.kcur + v.kcur;
  detail::require_product_fits(u.spec, kfull, (target_k < 0) ? kfull : target_k, "multiply");
  g.synthesize(u);
  std::vector<cplx> uu = g.values();
  g.synthesize(v);
  auto& b = g.values();
  for (std::int64_t i = 0; i < g.total(); ++i) b[i] *= uu[i];
  FourierField r = make_field(u.spec, 0);
  g.analyze_into(r, (target_k < 0) ? kfull : std::min(target_k, kfull));
  return r;
}

inline FourierField multiply(const FourierField& u, const FourierField& v, int target_k = -1) {
  DenseGrid g = DenseGrid::for_spec(u.spec);
  return multiply(g, u, v, target_k);
}

// |u|^{2p} u evaluated pointwise on the dense grid; exact because the result
// is a trigonometric polynomial of degree (2p+1)*kcur, which must fit.
inline FourierField power_nonlinearity(DenseGrid& g, const FourierField& u, int p,
                                       int target_k = -1) {
  if (p < 1) throw std::invalid_argument("power_nonlinearity: p must be >= 1");
  const int kfull = (2 * p + 1) * u.kcur;
  detail::require_product_fits(u.spec, kfull, (target_k < 0) ? kfull : target_k,
                               "power_nonlinearity");
  g.synthesize(u);
  auto& b = g.values();
  for (std::int64_t i = 0; i < g.total(); ++i) {
    const double m2 = std::norm(b[i]);
    double w = 1.0;
    for (int q = 0; q < p; ++q) w *= m2;
    b[i] *= w;
  }
  FourierField r = make_field(u.spec, 0);
  g.analyze_into(r, (target_k < 0) ? kfull : std::min(target_k, kfull));
  return r;
}

inline FourierField power_nonlinearity(const FourierField& u, int p, int target_k = -1) {
  DenseGrid g = DenseGrid::for_spec(u.spec);
  return power_nonlinearity(g, u, p, target_k);
}

}  // namespace nlslab
