#pragma once

#include <utility>

#include "vlrot/grid.hpp"
#include "vlrot/rotation.hpp"

// Initial conditions and closed-form reference solutions for the test cases:
// pure rotation, constant background fields, and the neutralized ion
// Bernstein wave initializer.

namespace vlrot {

enum class CaseKind { rotation_only, const_fields, nibw_stable, nibw_unstable };

struct CaseParams {
  CaseKind kind = CaseKind::rotation_only;
  double epsilon = 0.1;  // plane-wave perturbation amplitude
  Vec3 E0{};             // constant background field
  double alpha = 1e-3;   // nIBW perturbation amplitude
  int m_max = 8;         // nIBW maximal excited mode
  int p_max = 6;         // nIBW maximal Bessel order
  double kappa_n = 0.0;  // density gradient  d_x n / n
  double kappa_T = 0.0;  // temperature gradient  d_x T / T
};

/// Shifted Maxwellian of the rotation tests:
/// f0(v) = exp(-(v-(1,0,0))^2/2)/sqrt(2*pi), normalization kept as stated.
double maxwellian_ic(Vec3 v);

/// Isotropic Maxwellian (2*pi)^{-d/2} exp(-|v|^2/2) with d active velocity
/// dimensions; the nIBW background distribution.
double centered_maxwellian(Vec3 v, int velocity_dims);

/// f0(x) = 1 + eps*sin(k0 . x).
double plane_wave_ic(Vec3 x, Vec3 k0, double epsilon);

/// Reference solution of the rotation-only problem, in either frame.
double analytic_rotation(Vec3 v, double t, Frame frame, double omega_c);

/// Backtraced characteristic foot (X(0), V(0)) for constant E0 and B0 = w*e_z,
/// starting from (x, v) at time t in the physical frame:
///   V(0) = D(t) v - (int_0^t D) E0
///   X(0) = x - (int_0^t D^{-1}) D(t) v + (int_0^t int_0^u D) E0.
std::pair<Vec3, Vec3> backtrace_const_fields(Vec3 x, Vec3 v, double t, Vec3 E0, double omega_c);

/// Reference solution of the constant-field problem: f0 evaluated at the
/// backtraced foot; in the rotating frame the grid coordinate is v_rot and
/// the physical velocity D^{-1}(t) v_rot enters the backtrace.
double analytic_const_fields(Vec3 x, Vec3 v, double t, Frame frame, Vec3 E0, double omega_c,
                             Vec3 k0, double epsilon);

/// Velocity-space part of the nIBW excitation: sum over modes m = 1..m_max of
/// k_y = m*2*pi/L_y and Bessel orders p = 0..p_max, with the amplitude clamp
/// min(1/(e^{-k^2} I_p(k^2)), 0.01 (p+1)^{1/3}) and phase
/// v_perp*k*sin(gamma) - p*gamma + k*y, gamma the angle of v_perp against e_y.
/// Returns the bare perturbation (without alpha or f0).
double nibw_perturbation(Vec3 x, Vec3 v, int m_max, int p_max, double length_y);

/// Full nIBW initial condition f0(v) * (1 + alpha * perturbation).
double nibw_ic(Vec3 x, Vec3 v, const CaseParams& p, const PhaseSpaceGrid& grid);

/// Number of non-degenerate velocity axes.
int active_velocity_dims(const PhaseSpaceGrid& grid);

}  // namespace vlrot
