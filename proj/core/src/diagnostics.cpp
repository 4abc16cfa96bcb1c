#include "vlrot/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "vlrot/errors.hpp"
#include "vlrot/fft.hpp"

namespace vlrot {

double l2_relative_error(const DistributionFunction& f, const std::vector<double>& ref,
                         const std::vector<double>& background) {
  const auto vals = f.values();
  if (ref.size() != vals.size()) throw numerical_error("l2_relative_error: size mismatch");
  if (!background.empty() && background.size() != vals.size())
    throw numerical_error("l2_relative_error: background size mismatch");
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    const double d = vals[i] - ref[i];
    const double b = background.empty() ? ref[i] : ref[i] - background[i];
    num += d * d;
    den += b * b;
  }
  // The cell measure of the discrete L2 norm cancels in the ratio.
  if (den == 0.0) throw numerical_error("l2_relative_error: zero reference norm");
  return std::sqrt(num / den);
}

double l2_relative_error(const DistributionFunction& f,
                         const std::function<double(Vec3, Vec3)>& ref_eval,
                         const std::function<double(Vec3, Vec3)>& background_eval) {
  const PhaseSpaceGrid& grid = f.grid();
  const auto vals = f.values();
  double num = 0.0, den = 0.0;
  MultiIndex idx{};
  std::size_t flat = 0;
  for (idx[0] = 0; idx[0] < grid.axes[0].n_points; ++idx[0])
    for (idx[1] = 0; idx[1] < grid.axes[1].n_points; ++idx[1])
      for (idx[2] = 0; idx[2] < grid.axes[2].n_points; ++idx[2]) {
        const Vec3 x = grid.position(idx);
        for (idx[3] = 0; idx[3] < grid.axes[3].n_points; ++idx[3])
          for (idx[4] = 0; idx[4] < grid.axes[4].n_points; ++idx[4])
            for (idx[5] = 0; idx[5] < grid.axes[5].n_points; ++idx[5], ++flat) {
              const Vec3 v = grid.velocity(idx);
              const double r = ref_eval(x, v);
              const double b = background_eval ? r - background_eval(x, v) : r;
              const double d = vals[flat] - r;
              num += d * d;
              den += b * b;
            }
      }
  if (den == 0.0) throw numerical_error("l2_relative_error: zero reference norm");
  return std::sqrt(num / den);
}

ConvergenceReport convergence_order(std::vector<std::pair<double, double>> samples) {
  if (samples.size() < 2) throw config_error("convergence_order: need at least 2 samples");
  for (const auto& [h, err] : samples) {
    if (!(h > 0.0)) throw config_error("convergence_order: non-positive h");
    if (!(err > 0.0)) throw numerical_error("convergence_order: non-positive error");
  }
  std::sort(samples.begin(), samples.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });

  ConvergenceReport rep;
  const auto& big = samples.front();
  const auto& small = samples.back();
  rep.two_point_m =
      (std::log(big.second) - std::log(small.second)) / (std::log(big.first) - std::log(small.first));

  for (std::size_t i = 1; i < samples.size(); ++i)
    rep.pairwise.push_back((std::log(samples[i - 1].second) - std::log(samples[i].second)) /
                           (std::log(samples[i - 1].first) - std::log(samples[i].first)));

  // Least-squares slope of log err vs log h.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(samples.size());
  for (const auto& [h, err] : samples) {
    const double x = std::log(h), y = std::log(err);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  rep.least_squares_m = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return rep;
}

namespace {

void check_uniform_times(const std::vector<double>& times) {
  if (times.size() < 2) throw numerical_error("time series needs at least 2 samples");
  const double dt = times[1] - times[0];
  if (!(dt > 0.0)) throw numerical_error("time series must be strictly increasing");
  for (std::size_t s = 1; s < times.size(); ++s) {
    const double d = times[s] - times[s - 1];
    if (std::abs(d - dt) > 1e-9 * std::max(1.0, std::abs(times.back())))
      throw numerical_error("dispersion_spectrum: non-uniform time sampling");
  }
}

/// Spatial half-spectrum per frame: bins m = 0..ny/2 of sum_j n_j e^{-i k_m x_j}.
std::vector<std::vector<cplx>> spatial_modes(const TimeSeries& series) {
  const std::size_t nt = series.times.size();
  const std::size_t ny = series.frames.at(0).size();
  const std::size_t nm = ny / 2 + 1;
  std::vector<std::vector<cplx>> modes(nm, std::vector<cplx>(nt));
  std::vector<cplx> bins(nm);
  for (std::size_t s = 0; s < nt; ++s) {
    if (series.frames[s].size() != ny)
      throw numerical_error("dispersion_spectrum: frame size mismatch");
    real_fft_forward(series.frames[s], bins);
    for (std::size_t m = 0; m < nm; ++m) modes[m][s] = bins[m];
  }
  return modes;
}

}  // namespace

SpectrumGrid dispersion_spectrum(const TimeSeries& series, double length,
                                 const SpectrumOptions& opt) {
  check_uniform_times(series.times);
  const std::size_t nt = series.times.size();
  const std::size_t ny = series.frames.at(0).size();
  const std::size_t nm = ny / 2 + 1;
  const double dt = series.times[1] - series.times[0];
  const double period = nt * dt;

  auto modes = spatial_modes(series);

  SpectrumGrid grid;
  grid.k.resize(nm);
  for (std::size_t m = 0; m < nm; ++m) grid.k[m] = 2.0 * std::numbers::pi * m / length;

  // Signed temporal bins in ascending order; bin q maps to omega = 2*pi*q/T.
  const std::ptrdiff_t qmin = -static_cast<std::ptrdiff_t>(nt / 2);
  grid.omega.resize(nt);
  for (std::size_t i = 0; i < nt; ++i)
    grid.omega[i] = 2.0 * std::numbers::pi * (qmin + static_cast<std::ptrdiff_t>(i)) / period;

  grid.magnitude.assign(nm * nt, 0.0);
  std::vector<cplx> in(nt), out(nt);
  for (std::size_t m = 0; m < nm; ++m) {
    cplx mean = 0.0;
    for (const cplx& a : modes[m]) mean += a;
    mean /= static_cast<double>(nt);
    for (std::size_t s = 0; s < nt; ++s) {
      double w = 1.0;
      if (opt.hann_window)
        w = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * s / static_cast<double>(nt)));
      in[s] = (modes[m][s] - mean) * w;
    }
    // e^{+i omega t} analysis so a cos(kx - wt) wave lands at positive omega.
    complex_dft(in, out, +1);
    for (std::size_t i = 0; i < nt; ++i) {
      const std::ptrdiff_t q = qmin + static_cast<std::ptrdiff_t>(i);
      const std::size_t bin = static_cast<std::size_t>((q + static_cast<std::ptrdiff_t>(nt)) % nt);
      grid.magnitude[m * nt + i] = std::abs(out[bin]);
    }
  }
  return grid;
}

double mode_growth_rate(const TimeSeries& series, int k_index, std::size_t first,
                        std::size_t last) {
  const std::size_t nt = series.times.size();
  if (first >= last || last >= nt) throw config_error("mode_growth_rate: bad fit window");
  const std::size_t ny = series.frames.at(0).size();
  if (k_index < 0 || static_cast<std::size_t>(k_index) > ny / 2)
    throw config_error("mode_growth_rate: k index out of range");

  std::vector<cplx> bins(ny / 2 + 1);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(last - first + 1);
  for (std::size_t s = first; s <= last; ++s) {
    real_fft_forward(series.frames[s], bins);
    const double amp = std::abs(bins[k_index]);
    if (!(amp > 0.0) || !std::isfinite(std::log(amp)))
      throw numerical_error("mode_growth_rate: amplitude underflow in fit window");
    const double x = series.times[s], y = std::log(amp);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace vlrot
