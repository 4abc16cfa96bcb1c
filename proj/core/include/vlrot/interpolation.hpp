#pragma once

#include <span>
#include <vector>

// 1-D periodic interpolation kernels used by every advection stage: centered
// Lagrange stencils (local, subject to |shift| < spacing) and trigonometric
// interpolation (global, exact for any resolvable mode, no shift restriction).
// The trig shift runs as a spectral phase rotation; the pointwise
// sinc-quotient interpolant is kept as its independent reference.

namespace vlrot {

enum class InterpKind { lagrange, trig };

struct InterpMethod {
  InterpKind kind = InterpKind::trig;
  int q = 4;  // stencil size, lagrange only
};

/// First stencil offset (relative to the base node) for a q-point centered
/// Lagrange stencil evaluated at fractional position theta in (-1, 1).
/// Odd q is symmetric; even q picks the stencil whose central interval
/// brackets theta, left-biased at theta == 0.
int lagrange_first_offset(int q, double theta);

/// Weights of the q-point Lagrange basis at fractional position theta,
/// for the nodes selected by lagrange_first_offset. Sum to 1.
/// Throws on q < 2 or |theta| >= 1 (CFL violation).
std::vector<double> lagrange_weights(int q, double theta);

/// out[j] = interpolant of `line` evaluated at x_j - shift, q-point Lagrange.
/// Requires |shift| < spacing and line.size() >= q; periodic indexing.
void shift_line_lagrange(std::span<const double> line, double shift, int q, double spacing,
                         std::span<double> out);
std::vector<double> shift_line_lagrange(std::span<const double> line, double shift, int q,
                                        double spacing);

/// Trigonometric interpolant T(x) of the periodic samples, evaluated at one
/// point by the direct sinc-quotient formula (even/odd node count variants).
/// Nodes are x_j = j*spacing, period L = n*spacing.
double trig_interp_point(std::span<const double> line, double x, double spacing);

/// out[j] = T(x_j - shift) for all nodes, computed by rotating the phases of
/// the Fourier coefficients (even-n Nyquist mode treated as a cosine).
void shift_line_trig(std::span<const double> line, double shift, double spacing,
                     std::span<double> out);
std::vector<double> shift_line_trig(std::span<const double> line, double shift, double spacing);

}  // namespace vlrot
