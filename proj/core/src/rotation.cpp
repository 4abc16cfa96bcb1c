#include "vlrot/rotation.hpp"

namespace vlrot {

RotationMatrix RotationMatrix::identity() {
  RotationMatrix r;
  r(0, 0) = r(1, 1) = r(2, 2) = 1.0;
  return r;
}

RotationMatrix RotationMatrix::transpose() const {
  RotationMatrix r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = (*this)(j, i);
  return r;
}

RotationMatrix operator*(const RotationMatrix& a, const RotationMatrix& b) {
  RotationMatrix r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += a(i, k) * b(k, j);
      r(i, j) = s;
    }
  return r;
}

Vec3 operator*(const RotationMatrix& a, Vec3 v) {
  return {a(0, 0) * v.x + a(0, 1) * v.y + a(0, 2) * v.z,
          a(1, 0) * v.x + a(1, 1) * v.y + a(1, 2) * v.z,
          a(2, 0) * v.x + a(2, 1) * v.y + a(2, 2) * v.z};
}

RotationMatrix operator+(const RotationMatrix& a, const RotationMatrix& b) {
  RotationMatrix r;
  for (int i = 0; i < 9; ++i) r.m[i] = a.m[i] + b.m[i];
  return r;
}

RotationMatrix operator-(const RotationMatrix& a, const RotationMatrix& b) {
  RotationMatrix r;
  for (int i = 0; i < 9; ++i) r.m[i] = a.m[i] - b.m[i];
  return r;
}

RotationMatrix operator*(double s, const RotationMatrix& a) {
  RotationMatrix r;
  for (int i = 0; i < 9; ++i) r.m[i] = s * a.m[i];
  return r;
}

RotationMatrix rotation_matrix(double omega_c, double t) {
  const double c = std::cos(omega_c * t);
  const double s = std::sin(omega_c * t);
  RotationMatrix r;
  r(0, 0) = c;
  r(0, 1) = -s;
  r(1, 0) = s;
  r(1, 1) = c;
  r(2, 2) = 1.0;
  return r;
}

namespace {

// sin(omega*dt/2)/omega, with a series branch below the spec'd threshold on
// |omega*dt| so the omega -> 0 limit (dt/2) is hit without 0/0.
double half_sine_over_omega(double omega, double dt) {
  const double theta = 0.5 * omega * dt;
  if (std::abs(omega * dt) < 1e-8) return 0.5 * dt * (1.0 - theta * theta / 6.0);
  return std::sin(theta) / omega;
}

}  // namespace

RotationMatrix integrated_rotation(double omega_c, double t0, double t1, bool inverse) {
  // Entrywise antiderivatives, written in product form
  //   int cos = 2 cos(w*(t0+t1)/2) sin(w*dt/2)/w,
  //   int sin = 2 sin(w*(t0+t1)/2) sin(w*dt/2)/w,
  // which stays cancellation-free for any t0, t1.
  const double dt = t1 - t0;
  const double mid = 0.5 * (t0 + t1);
  const double g = half_sine_over_omega(omega_c, dt);
  const double ic = 2.0 * std::cos(omega_c * mid) * g;  // integral of cos(w t)
  const double is = 2.0 * std::sin(omega_c * mid) * g;  // integral of sin(w t)

  RotationMatrix r;
  r(0, 0) = ic;
  r(1, 1) = ic;
  r(2, 2) = dt;
  if (inverse) {
    r(0, 1) = is;
    r(1, 0) = -is;
  } else {
    r(0, 1) = -is;
    r(1, 0) = is;
  }
  return r;
}

RotationMatrix double_integrated_rotation(double omega_c, double t) {
  // K(t) = int_0^t int_0^u D(s) ds du:
  //   K_xx = K_yy = (1 - cos(w t))/w^2,  K_xy = (sin(w t) - w t)/w^2 = -K_yx,
  //   K_zz = t^2/2.
  const double x = omega_c * t;
  const double g = half_sine_over_omega(omega_c, t);
  const double diag = 2.0 * g * g;  // (1-cos)/w^2 via 2 sin^2(w t/2)/w^2

  double off;  // (sin(w t) - w t)/w^2
  if (std::abs(x) < 0.25) {
    const double x2 = x * x;
    off = -(omega_c * t * t * t / 6.0) * (1.0 - x2 / 20.0 + x2 * x2 / 840.0 - x2 * x2 * x2 / 60480.0);
  } else {
    off = (std::sin(x) - x) / (omega_c * omega_c);
  }

  RotationMatrix r;
  r(0, 0) = diag;
  r(1, 1) = diag;
  r(0, 1) = off;
  r(1, 0) = -off;
  r(2, 2) = 0.5 * t * t;
  return r;
}

Vec3 to_rotating(Vec3 v, double omega_c, double t) { return rotation_matrix(omega_c, t) * v; }

Vec3 to_physical(Vec3 v_rot, double omega_c, double t) {
  return rotation_matrix(omega_c, t).transpose() * v_rot;
}

}  // namespace vlrot
