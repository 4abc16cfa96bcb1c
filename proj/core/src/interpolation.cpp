#include "vlrot/interpolation.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "vlrot/errors.hpp"
#include "vlrot/fft.hpp"

namespace vlrot {

int lagrange_first_offset(int q, double theta) {
  if (q % 2 == 1) return -(q - 1) / 2;
  return theta > 0.0 ? -q / 2 + 1 : -q / 2;
}

std::vector<double> lagrange_weights(int q, double theta) {
  if (q < 2) throw config_error("lagrange_weights: q must be >= 2");
  if (!(std::abs(theta) < 1.0)) {
    std::ostringstream os;
    os << "lagrange_weights: CFL violation, |theta| = " << std::abs(theta) << " >= 1";
    throw numerical_error(os.str());
  }
  const int d0 = lagrange_first_offset(q, theta);
  std::vector<double> w(q);
  for (int i = 0; i < q; ++i) {
    const double di = d0 + i;
    double p = 1.0;
    for (int m = 0; m < q; ++m) {
      if (m == i) continue;
      const double dm = d0 + m;
      p *= (theta - dm) / (di - dm);
    }
    w[i] = p;
  }
  return w;
}

void shift_line_lagrange(std::span<const double> line, double shift, int q, double spacing,
                         std::span<double> out) {
  const int n = static_cast<int>(line.size());
  if (n < q) {
    std::ostringstream os;
    os << "shift_line_lagrange: line length " << n << " < stencil size " << q;
    throw numerical_error(os.str());
  }
  if (!(std::abs(shift) < spacing)) {
    std::ostringstream os;
    os << "shift_line_lagrange: CFL violation, |shift| = " << std::abs(shift)
       << " >= spacing = " << spacing;
    throw numerical_error(os.str());
  }
  // out[j] = L(x_j - shift): evaluate the stencil at theta = -shift/spacing.
  const double theta = -shift / spacing;
  const auto w = lagrange_weights(q, theta);
  const int d0 = lagrange_first_offset(q, theta);
  for (int j = 0; j < n; ++j) {
    double acc = 0.0;
    for (int i = 0; i < q; ++i) {
      int idx = (j + d0 + i) % n;
      if (idx < 0) idx += n;
      acc += w[i] * line[idx];
    }
    out[j] = acc;
  }
}

std::vector<double> shift_line_lagrange(std::span<const double> line, double shift, int q,
                                        double spacing) {
  std::vector<double> out(line.size());
  shift_line_lagrange(line, shift, q, spacing, out);
  return out;
}

double trig_interp_point(std::span<const double> line, double x, double spacing) {
  const int n = static_cast<int>(line.size());
  if (n < 2) throw numerical_error("trig_interp_point: need at least 2 nodes");
  const double length = n * spacing;
  const bool even = (n % 2 == 0);
  double acc = 0.0;
  for (int j = 0; j < n; ++j) {
    // Wrap the node distance into (-L/2, L/2]; the kernel is L-periodic.
    double d = std::remainder(x - j * spacing, length);
    const double u = 2.0 * std::numbers::pi * d / length;
    double k;
    if (u == 0.0) {
      k = 1.0;
    } else {
      const double s = std::sin(0.5 * u);
      k = std::sin(0.5 * n * u) / (n * s);
      if (even) k *= std::cos(0.5 * u);
    }
    acc += k * line[j];
  }
  return acc;
}

void shift_line_trig(std::span<const double> line, double shift, double spacing,
                     std::span<double> out) {
  const int n = static_cast<int>(line.size());
  if (n < 2) throw numerical_error("shift_line_trig: need at least 2 nodes");
  if (shift == 0.0) {
    for (int j = 0; j < n; ++j) out[j] = line[j];
    return;
  }
  thread_local std::vector<cplx> bins;
  bins.resize(n / 2 + 1);
  real_fft_forward(line, bins);
  const double phase = 2.0 * std::numbers::pi * shift / (n * spacing);
  apply_spectral_shift(bins.data(), n, 1, phase, 1.0 / n);
  real_fft_inverse(bins, out);
}

std::vector<double> shift_line_trig(std::span<const double> line, double shift, double spacing) {
  std::vector<double> out(line.size());
  shift_line_trig(line, shift, spacing, out);
  return out;
}

}  // namespace vlrot
