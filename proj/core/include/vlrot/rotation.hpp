#pragma once

#include <array>
#include <cmath>

// Rotation-frame algebra for a constant magnetic background field B0 = B0*e_z.
// The velocity-grid rotation is
//
//   D(t) = [ cos(w t)  -sin(w t)  0 ]
//          [ sin(w t)   cos(w t)  0 ]
//          [    0          0      1 ]
//
// with w the cyclotron frequency. Backtracing on the rotating grid needs the
// entrywise time integrals of D and D^{-1}, which are available in closed form.

namespace vlrot {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
  double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
};

inline Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(Vec3 a, Vec3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }

/// Row-major 3x3 matrix. Used for D(t), its transpose, and its time integrals.
struct RotationMatrix {
  std::array<double, 9> m{};

  double& operator()(int r, int c) { return m[3 * r + c]; }
  double operator()(int r, int c) const { return m[3 * r + c]; }

  static RotationMatrix identity();
  RotationMatrix transpose() const;
};

RotationMatrix operator*(const RotationMatrix& a, const RotationMatrix& b);
Vec3 operator*(const RotationMatrix& a, Vec3 v);
RotationMatrix operator+(const RotationMatrix& a, const RotationMatrix& b);
RotationMatrix operator-(const RotationMatrix& a, const RotationMatrix& b);
RotationMatrix operator*(double s, const RotationMatrix& a);

struct CyclotronParams {
  double omega_c = 1.0;  // q B0 / m; B0 is along e_z by model assumption
};

/// Which velocity coordinates the grid carries: the physical ones, or the
/// rotating-frame coordinates v_rot = D(t) v.
enum class Frame { physical, rotating };

/// D(t): proper rotation of the perpendicular velocity plane by angle omega_c*t.
RotationMatrix rotation_matrix(double omega_c, double t);

/// Entrywise integral of D over [t0, t1] (or of D^{-1} when inverse is set).
/// For |omega_c*(t1-t0)| below the series threshold the expansion
/// (t1-t0)*I + O(omega) is used to avoid (1-cos)/omega cancellation.
RotationMatrix integrated_rotation(double omega_c, double t0, double t1, bool inverse = false);

/// Double integral int_0^t int_0^u D(s) ds du, closed form with the same
/// small-angle series branch. Needed by the constant-field backtrace.
RotationMatrix double_integrated_rotation(double omega_c, double t);

/// Frame maps: v_rot = D(t) v, and the inverse via the transpose.
Vec3 to_rotating(Vec3 v, double omega_c, double t);
Vec3 to_physical(Vec3 v_rot, double omega_c, double t);

}  // namespace vlrot
