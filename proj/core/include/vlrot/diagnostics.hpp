#pragma once

#include <functional>
#include <vector>

#include "vlrot/grid.hpp"

// Error norms, convergence-order estimation, omega-k dispersion spectra, and
// per-mode growth-rate fits.

namespace vlrot {

/// Uniformly sampled time series of spatial arrays (density frames).
struct TimeSeries {
  std::vector<double> times;
  std::vector<std::vector<double>> frames;
};

/// |n_hat(k, omega)| on the documented bin grid: k = 2*pi*m/L for
/// m = 0..n/2 (non-negative modes of a real signal), omega = 2*pi*q/T for
/// signed q, listed in ascending order. A wave cos(k*x - omega*t) with
/// omega > 0 lands at positive omega.
struct SpectrumGrid {
  std::vector<double> k;
  std::vector<double> omega;
  std::vector<double> magnitude;  // row-major [k][omega]

  double at(std::size_t ik, std::size_t iw) const { return magnitude[ik * omega.size() + iw]; }
};

/// ||f - ref|| / ||ref - background|| in the discrete L2 norm
/// sqrt(sum(.)^2 * prod(spacings)). `background` may be empty (zero state).
/// Throws on zero denominator.
double l2_relative_error(const DistributionFunction& f, const std::vector<double>& ref,
                         const std::vector<double>& background = {});

/// Samples ref_eval on the grid and compares as above.
double l2_relative_error(const DistributionFunction& f,
                         const std::function<double(Vec3, Vec3)>& ref_eval,
                         const std::function<double(Vec3, Vec3)>& background_eval = nullptr);

struct ConvergenceReport {
  double two_point_m = 0.0;    // slope between the largest and smallest h
  double least_squares_m = 0.0;
  std::vector<double> pairwise;  // slope between consecutive h (size-1 entries)
};

/// Observed order from (h, err) samples; requires >= 2 samples with positive
/// errors. two_point_m = (log err(h_max) - log err(h_min)) / (log h_max - log h_min).
ConvergenceReport convergence_order(std::vector<std::pair<double, double>> samples);

struct SpectrumOptions {
  bool hann_window = true;  // temporal Hann window (toggleable)
};

/// 2-D discrete Fourier magnitude of a density time series over (axis, t)
/// after subtracting the temporal mean per spatial mode. Requires uniform
/// time sampling. `length` is the spatial domain extent of the axis.
SpectrumGrid dispersion_spectrum(const TimeSeries& series, double length,
                                 const SpectrumOptions& opt = {});

/// Least-squares slope of log|n_hat_k(t)| over the sample window
/// [first, last] (inclusive indices into the series).
double mode_growth_rate(const TimeSeries& series, int k_index, std::size_t first,
                        std::size_t last);

}  // namespace vlrot
