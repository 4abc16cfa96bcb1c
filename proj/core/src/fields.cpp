#include "vlrot/fields.hpp"

#include <cmath>
#include <numbers>

#include "vlrot/errors.hpp"
#include "vlrot/fft.hpp"

namespace vlrot {

FieldState FieldState::zero(const PhaseSpaceGrid& grid) {
  FieldState fs;
  const std::size_t ns = grid.spatial_size();
  fs.n.assign(ns, 0.0);
  fs.phi.assign(ns, 0.0);
  for (auto& e : fs.E) e.assign(ns, 0.0);
  return fs;
}

std::vector<double> density(const DistributionFunction& f) {
  const PhaseSpaceGrid& g = f.grid();
  const std::size_t ns = g.spatial_size();
  const std::size_t nv = g.velocity_size();
  const double dv = g.cell_measure(AxisKind::velocity);
  std::vector<double> n(ns);
  auto vals = f.values();
  for (std::size_t xs = 0; xs < ns; ++xs) {
    double acc = 0.0;
    const double* block = vals.data() + xs * nv;
    for (std::size_t j = 0; j < nv; ++j) acc += block[j];
    n[xs] = acc * dv;
  }
  return n;
}

std::vector<double> solve_quasineutral(const std::vector<double>& n) { return n; }

namespace {

// Spectral d/dx along one spatial axis of the (nx,ny,nz) row-major array.
void spectral_derivative_axis(const std::vector<double>& in, std::vector<double>& out,
                              int n, std::size_t stride, std::size_t count, double length) {
  const double k0 = 2.0 * std::numbers::pi / length;
  std::vector<double> line(n);
  std::vector<cplx> bins(n / 2 + 1);
  // Lines along the axis: base offsets enumerate (outer, inner) pairs.
  const std::size_t inner = stride;
  const std::size_t outer = count / (static_cast<std::size_t>(n) * inner);
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t i = 0; i < inner; ++i) {
      const std::size_t base = o * n * inner + i;
      for (int j = 0; j < n; ++j) line[j] = in[base + j * stride];
      real_fft_forward(line, bins);
      const int klast = (n % 2 == 0) ? n / 2 - 1 : n / 2;
      for (int k = 0; k <= klast; ++k) bins[k] *= cplx(0.0, k * k0 / n);
      if (n % 2 == 0) bins[n / 2] = 0.0;  // Nyquist derivative dropped
      real_fft_inverse(bins, line);
      for (int j = 0; j < n; ++j) out[base + j * stride] = line[j];
    }
  }
}

}  // namespace

std::array<std::vector<double>, 3> spatial_gradient(const std::vector<double>& phi,
                                                    const PhaseSpaceGrid& grid) {
  const std::size_t ns = grid.spatial_size();
  if (phi.size() != ns) throw numerical_error("spatial_gradient: array/grid size mismatch");
  std::array<std::vector<double>, 3> grad;
  std::size_t stride = ns;
  for (int a = 0; a < 3; ++a) {
    const AxisSpec& ax = grid.axes[a];
    stride /= ax.n_points;
    if (ax.degenerate()) {
      grad[a].assign(ns, 0.0);
      continue;
    }
    grad[a].resize(ns);
    spectral_derivative_axis(phi, grad[a], ax.n_points, stride, ns, ax.length);
  }
  return grad;
}

std::array<std::vector<double>, 3> efield(const std::vector<double>& phi,
                                          const PhaseSpaceGrid& grid) {
  auto g = spatial_gradient(phi, grid);
  for (auto& comp : g)
    for (double& v : comp) v = -v;
  return g;
}

FieldState const_field(const PhaseSpaceGrid& grid, Vec3 E0) {
  FieldState fs;
  const std::size_t ns = grid.spatial_size();
  for (int c = 0; c < 3; ++c) fs.E[c].assign(ns, E0[c]);
  return fs;
}

double field_energy(const FieldState& fs, const PhaseSpaceGrid& grid) {
  const double dx = grid.cell_measure(AxisKind::spatial);
  double acc = 0.0;
  for (const auto& comp : fs.E)
    for (double v : comp) acc += v * v;
  return acc * dx;
}

void QuasineutralSolver::solve(const DistributionFunction& f, FieldState& out) const {
  out.n = density(f);
  out.phi = solve_quasineutral(out.n);
  out.E = efield(out.phi, f.grid());
}

void ConstFieldSolver::solve(const DistributionFunction& f, FieldState& out) const {
  out = const_field(f.grid(), E0_);
}

}  // namespace vlrot
