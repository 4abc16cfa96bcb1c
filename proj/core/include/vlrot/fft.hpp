#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

// Thin FFTW3 wrappers: cached 1-D real transforms for single lines, strided
// batched transforms for whole-axis sweeps, and the phase-rotation helper the
// spectral shift is built on. Plans use FFTW_ESTIMATE | FFTW_UNALIGNED, so
// plan choice is deterministic and any buffer may be passed at execute time.

namespace vlrot {

using cplx = std::complex<double>;

/// Forward r2c transform of a contiguous real line (out has n/2+1 bins).
/// Plans are cached per length behind a mutex; execution is thread-safe.
void real_fft_forward(std::span<const double> in, std::span<cplx> out);

/// Inverse c2r transform; destroys `in`; output is NOT normalized (scale by
/// 1/n yourself, or fold it into the spectral coefficients).
void real_fft_inverse(std::span<cplx> in, std::span<double> out);

/// Multiplies half-complex bins (n/2+1 of them, `stride` apart) by
/// exp(-i*k*phase)*scale for k = 0..n/2. For even n the Nyquist bin is
/// multiplied by cos((n/2)*phase)*scale, the real part of its phase factor,
/// which keeps the inverse transform real (cosine convention).
void apply_spectral_shift(cplx* bins, int n, std::size_t stride, double phase, double scale);

/// Batched strided 1-D r2c/c2r transforms covering a full pencil sweep in a
/// row-major array: pencil (o, i) of outer*inner pencils has its real values
/// at o*n*inner + i + j*inner and its half-complex bins at
/// o*(n/2+1)*inner + i + k*inner. One plan pair per (n, inner, outer).
class StridedRealFFT {
 public:
  StridedRealFFT(int n, std::size_t inner, std::size_t outer);
  ~StridedRealFFT();
  StridedRealFFT(const StridedRealFFT&) = delete;
  StridedRealFFT& operator=(const StridedRealFFT&) = delete;

  int n() const { return n_; }
  std::size_t inner() const { return inner_; }
  std::size_t outer() const { return outer_; }
  std::size_t complex_size() const;  // total complex values of the batch

  void forward(const double* in, cplx* out) const;
  void inverse(cplx* in, double* out) const;  // destroys in; unnormalized

 private:
  int n_;
  std::size_t inner_, outer_;
  void* fwd_;
  void* bwd_;
};

/// Full complex DFT (any n, used by diagnostics). sign = -1 forward, +1
/// backward; unnormalized.
void complex_dft(std::span<const cplx> in, std::span<cplx> out, int sign);

}  // namespace vlrot
