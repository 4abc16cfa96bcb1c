#include "vlrot/cases.hpp"

#include <cmath>
#include <numbers>

#include "vlrot/bessel.hpp"

namespace vlrot {

double maxwellian_ic(Vec3 v) {
  const Vec3 d{v.x - 1.0, v.y, v.z};
  return std::exp(-0.5 * dot(d, d)) / std::sqrt(2.0 * std::numbers::pi);
}

double centered_maxwellian(Vec3 v, int velocity_dims) {
  const double norm = std::pow(2.0 * std::numbers::pi, -0.5 * velocity_dims);
  return norm * std::exp(-0.5 * dot(v, v));
}

double plane_wave_ic(Vec3 x, Vec3 k0, double epsilon) {
  return 1.0 + epsilon * std::sin(dot(k0, x));
}

double analytic_rotation(Vec3 v, double t, Frame frame, double omega_c) {
  if (frame == Frame::rotating) return maxwellian_ic(v);
  return maxwellian_ic(rotation_matrix(omega_c, t) * v);
}

std::pair<Vec3, Vec3> backtrace_const_fields(Vec3 x, Vec3 v, double t, Vec3 E0, double omega_c) {
  const RotationMatrix D = rotation_matrix(omega_c, t);
  const RotationMatrix ID = integrated_rotation(omega_c, 0.0, t, false);
  const RotationMatrix IDinv = integrated_rotation(omega_c, 0.0, t, true);
  const RotationMatrix K = double_integrated_rotation(omega_c, t);
  const Vec3 Dv = D * v;
  const Vec3 v0 = Dv - ID * E0;
  const Vec3 x0 = x - IDinv * Dv + K * E0;
  return {x0, v0};
}

double analytic_const_fields(Vec3 x, Vec3 v, double t, Frame frame, Vec3 E0, double omega_c,
                             Vec3 k0, double epsilon) {
  const Vec3 v_phys = frame == Frame::rotating ? to_physical(v, omega_c, t) : v;
  const auto [x0, v0] = backtrace_const_fields(x, v_phys, t, E0, omega_c);
  return plane_wave_ic(x0, k0, epsilon) * maxwellian_ic(v0);
}

double nibw_perturbation(Vec3 x, Vec3 v, int m_max, int p_max, double length_y) {
  const double v_perp = std::hypot(v.x, v.y);
  const double gamma = std::atan2(v.x, v.y);  // angle of (vx,vy) against e_y
  double pert = 0.0;
  for (int m = 1; m <= m_max; ++m) {
    const double ky = m * 2.0 * std::numbers::pi / length_y;
    const double k2 = ky * ky;
    for (int p = 0; p <= p_max; ++p) {
      const double amp =
          std::min(1.0 / bessel_i_scaled(p, k2), 0.01 * std::cbrt(static_cast<double>(p + 1)));
      const double phase = v_perp * ky * std::sin(gamma) - p * gamma + ky * x.y;
      pert += bessel_j(p, ky * v_perp) * amp * std::cos(phase);
    }
  }
  return pert;
}

double nibw_ic(Vec3 x, Vec3 v, const CaseParams& p, const PhaseSpaceGrid& grid) {
  const double f0 = centered_maxwellian(v, active_velocity_dims(grid));
  const double ly = grid.axis(Axis::y).length;
  return f0 * (1.0 + p.alpha * nibw_perturbation(x, v, p.m_max, p.p_max, ly));
}

int active_velocity_dims(const PhaseSpaceGrid& grid) {
  int d = 0;
  for (int a = 3; a < 6; ++a)
    if (!grid.axes[a].degenerate()) ++d;
  return d;
}

}  // namespace vlrot
