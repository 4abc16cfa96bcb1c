#include "vlrot/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

#include "vlrot/errors.hpp"

namespace vlrot {

namespace {

std::mutex plan_mutex;

struct LinePlans {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
};

// Cached contiguous 1-D plans keyed by length. Created once under the mutex;
// fftw_execute_dft_* on distinct buffers is thread-safe afterwards.
LinePlans& line_plans(int n) {
  static std::map<int, LinePlans> cache;
  std::lock_guard<std::mutex> lock(plan_mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  std::vector<double> re(n);
  std::vector<cplx> hc(n / 2 + 1);
  LinePlans p;
  p.fwd = fftw_plan_dft_r2c_1d(n, re.data(), reinterpret_cast<fftw_complex*>(hc.data()),
                               FFTW_ESTIMATE | FFTW_UNALIGNED);
  p.bwd = fftw_plan_dft_c2r_1d(n, reinterpret_cast<fftw_complex*>(hc.data()), re.data(),
                               FFTW_ESTIMATE | FFTW_UNALIGNED);
  return cache.emplace(n, p).first->second;
}

}  // namespace

void real_fft_forward(std::span<const double> in, std::span<cplx> out) {
  const int n = static_cast<int>(in.size());
  auto& p = line_plans(n);
  fftw_execute_dft_r2c(p.fwd, const_cast<double*>(in.data()),
                       reinterpret_cast<fftw_complex*>(out.data()));
}

void real_fft_inverse(std::span<cplx> in, std::span<double> out) {
  const int n = static_cast<int>(out.size());
  auto& p = line_plans(n);
  fftw_execute_dft_c2r(p.bwd, reinterpret_cast<fftw_complex*>(in.data()), out.data());
}

void apply_spectral_shift(cplx* bins, int n, std::size_t stride, double phase, double scale) {
  const int nbins = n / 2 + 1;
  // e^{-i k phase} by recurrence; drift over <= n/2 steps is a few ulps.
  const cplx w = std::polar(1.0, -phase);
  cplx e = scale;
  bins[0] *= scale;
  const int klast = (n % 2 == 0) ? n / 2 - 1 : n / 2;
  for (int k = 1; k <= klast; ++k) {
    e *= w;
    bins[static_cast<std::size_t>(k) * stride] *= e;
  }
  if (n % 2 == 0) {
    // Nyquist: only the cosine part survives for a real signal.
    bins[static_cast<std::size_t>(nbins - 1) * stride] *= std::cos(0.5 * n * phase) * scale;
  }
}

std::size_t StridedRealFFT::complex_size() const {
  return static_cast<std::size_t>(n_ / 2 + 1) * inner_ * outer_;
}

StridedRealFFT::StridedRealFFT(int n, std::size_t inner, std::size_t outer)
    : n_(n), inner_(inner), outer_(outer) {
  std::lock_guard<std::mutex> lock(plan_mutex);
  std::vector<double> re(static_cast<std::size_t>(n) * inner * outer);
  std::vector<cplx> hc(complex_size());

  fftw_iodim64 dim;
  dim.n = n;
  dim.is = dim.os = static_cast<std::ptrdiff_t>(inner);

  fftw_iodim64 hm[2];
  hm[0].n = static_cast<std::ptrdiff_t>(outer);
  hm[0].is = static_cast<std::ptrdiff_t>(static_cast<std::size_t>(n) * inner);
  hm[0].os = static_cast<std::ptrdiff_t>(static_cast<std::size_t>(n / 2 + 1) * inner);
  hm[1].n = static_cast<std::ptrdiff_t>(inner);
  hm[1].is = hm[1].os = 1;

  fwd_ = fftw_plan_guru64_dft_r2c(1, &dim, 2, hm, re.data(),
                                  reinterpret_cast<fftw_complex*>(hc.data()),
                                  FFTW_ESTIMATE | FFTW_UNALIGNED);
  bwd_ = fftw_plan_guru64_dft_c2r(1, &dim, 2, hm,
                                  reinterpret_cast<fftw_complex*>(hc.data()), re.data(),
                                  FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!fwd_ || !bwd_) throw numerical_error("fftw plan creation failed");
}

StridedRealFFT::~StridedRealFFT() {
  std::lock_guard<std::mutex> lock(plan_mutex);
  fftw_destroy_plan(static_cast<fftw_plan>(fwd_));
  fftw_destroy_plan(static_cast<fftw_plan>(bwd_));
}

void StridedRealFFT::forward(const double* in, cplx* out) const {
  fftw_execute_dft_r2c(static_cast<fftw_plan>(fwd_), const_cast<double*>(in),
                       reinterpret_cast<fftw_complex*>(out));
}

void StridedRealFFT::inverse(cplx* in, double* out) const {
  fftw_execute_dft_c2r(static_cast<fftw_plan>(bwd_), reinterpret_cast<fftw_complex*>(in), out);
}

void complex_dft(std::span<const cplx> in, std::span<cplx> out, int sign) {
  const int n = static_cast<int>(in.size());
  static std::map<std::pair<int, int>, fftw_plan> cache;
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto key = std::make_pair(n, sign);
    auto it = cache.find(key);
    if (it == cache.end()) {
      std::vector<cplx> a(n), b(n);
      plan = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(a.data()),
                              reinterpret_cast<fftw_complex*>(b.data()),
                              sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                              FFTW_ESTIMATE | FFTW_UNALIGNED);
      cache.emplace(key, plan);
    } else {
      plan = it->second;
    }
  }
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in.data())),
                   reinterpret_cast<fftw_complex*>(out.data()));
}

}  // namespace vlrot
