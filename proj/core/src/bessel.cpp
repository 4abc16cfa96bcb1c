#include "vlrot/bessel.hpp"

#include <cmath>
#include <vector>

#include "vlrot/errors.hpp"

namespace vlrot {

namespace {

int check_order(int p) {
  if (p < 0) throw config_error("bessel: order must be >= 0");
  return p;
}

// Start order for downward recurrence: high enough that the seeded tail is
// below round-off relative to the requested order.
int miller_start(int p, double ax) {
  const int base = std::max(p, static_cast<int>(ax));
  int m = base + 20 + static_cast<int>(2.0 * std::sqrt(40.0 + base));
  return m + (m % 2);  // even, so the normalization sum ends cleanly
}

}  // namespace

double bessel_j(int p, double x) {
  check_order(p);
  if (x == 0.0) return p == 0 ? 1.0 : 0.0;
  const double ax = std::abs(x);
  const int m0 = miller_start(p, ax);

  // Downward: J_{k-1} = (2k/x) J_k - J_{k+1}; normalize with
  // J_0 + 2*sum_{k>=1} J_{2k} = 1.
  double jp1 = 0.0, j = 1e-30, target = 0.0, norm = 0.0;
  for (int k = m0; k >= 1; --k) {
    const double jm1 = (2.0 * k / ax) * j - jp1;
    jp1 = j;
    j = jm1;
    if (k - 1 == p) target = j;
    if ((k - 1) % 2 == 0) norm += (k - 1 == 0) ? j : 2.0 * j;
    if (std::abs(j) > 1e100) {  // rescale to avoid overflow of the recurrence
      j *= 1e-100;
      jp1 *= 1e-100;
      target *= 1e-100;
      norm *= 1e-100;
    }
  }
  double result = target / norm;
  if (x < 0.0 && p % 2 == 1) result = -result;
  return result;
}

double bessel_i_scaled(int p, double x) {
  check_order(p);
  if (x == 0.0) return p == 0 ? 1.0 : 0.0;
  const double ax = std::abs(x);
  const int m0 = miller_start(p, ax);

  // Downward: I_{k-1} = (2k/x) I_k + I_{k+1}; normalize with
  // e^{-x} (I_0 + 2*sum_{k>=1} I_k) = 1.
  double ip1 = 0.0, i = 1e-30, target = 0.0, norm = 0.0;
  for (int k = m0; k >= 1; --k) {
    const double im1 = (2.0 * k / ax) * i + ip1;
    ip1 = i;
    i = im1;
    if (k - 1 == p) target = i;
    norm += (k - 1 == 0) ? i : 2.0 * i;
    if (std::abs(i) > 1e100) {
      i *= 1e-100;
      ip1 *= 1e-100;
      target *= 1e-100;
      norm *= 1e-100;
    }
  }
  double result = target / norm;
  if (x < 0.0 && p % 2 == 1) result = -result;
  return result;
}

double bessel_i(int p, double x) {
  const double ax = std::abs(x);
  if (ax > 700.0) throw numerical_error("bessel_i: argument overflows exp scaling");
  return bessel_i_scaled(p, x) * std::exp(ax);
}

}  // namespace vlrot
