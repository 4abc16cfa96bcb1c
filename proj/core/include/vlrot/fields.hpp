#pragma once

#include <array>
#include <vector>

#include "vlrot/grid.hpp"

// Moments and the quasi-neutrality field solve of the normalized model:
// n = int f dv, phi = n (adiabatic electrons, taken literally), E = -grad phi
// with spectral derivatives on the periodic spatial grid.

namespace vlrot {

struct FieldState {
  std::vector<double> n;
  std::vector<double> phi;
  std::array<std::vector<double>, 3> E;

  static FieldState zero(const PhaseSpaceGrid& grid);
};

/// n[x] = sum_v f * prod(dv) (rectangle rule on the periodic velocity grid;
/// degenerate velocity axes contribute weight 1).
std::vector<double> density(const DistributionFunction& f);

/// phi = n, literally.
std::vector<double> solve_quasineutral(const std::vector<double>& n);

/// Spectral gradient of a scalar on the spatial grid; degenerate axes give 0;
/// the even-n Nyquist derivative bin is set to 0.
std::array<std::vector<double>, 3> spatial_gradient(const std::vector<double>& phi,
                                                    const PhaseSpaceGrid& grid);

/// E = -grad phi.
std::array<std::vector<double>, 3> efield(const std::vector<double>& phi,
                                          const PhaseSpaceGrid& grid);

/// E identically E0 everywhere; n and phi left empty (unset).
FieldState const_field(const PhaseSpaceGrid& grid, Vec3 E0);

/// sum over space of |E|^2 * prod(dx) (non-degenerate spatial spacings).
double field_energy(const FieldState& fs, const PhaseSpaceGrid& grid);

struct FieldSolver {
  virtual ~FieldSolver() = default;
  virtual void solve(const DistributionFunction& f, FieldState& out) const = 0;
};

/// phi = n = int f dv, E = -grad phi.
struct QuasineutralSolver final : FieldSolver {
  void solve(const DistributionFunction& f, FieldState& out) const override;
};

/// Constant background field E(x,t) = E0.
struct ConstFieldSolver final : FieldSolver {
  explicit ConstFieldSolver(Vec3 E0) : E0_(E0) {}
  void solve(const DistributionFunction& f, FieldState& out) const override;

 private:
  Vec3 E0_;
};

}  // namespace vlrot
