#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "test_util.hpp"
#include "vlrot/rotation.hpp"

using namespace vlrot;

namespace {

// Quadrature oracle: midpoint rule, entrywise, independent of the closed form.
RotationMatrix integrate_by_quadrature(double omega, double t0, double t1, bool inverse,
                                       int panels) {
  RotationMatrix acc;
  const double dt = (t1 - t0) / panels;
  for (int i = 0; i < panels; ++i) {
    const double t = t0 + (i + 0.5) * dt;
    RotationMatrix d = rotation_matrix(omega, t);
    if (inverse) d = d.transpose();
    acc = acc + dt * d;
  }
  return acc;
}

double max_abs_diff(const RotationMatrix& a, const RotationMatrix& b) {
  double m = 0.0;
  for (int i = 0; i < 9; ++i) m = std::max(m, std::abs(a.m[i] - b.m[i]));
  return m;
}

}  // namespace

TEST_CASE("rotation_matrix entries") {
  const RotationMatrix id = rotation_matrix(1.0, 0.0);
  CHECK(max_abs_diff(id, RotationMatrix::identity()) == 0.0);

  // quarter turn
  const RotationMatrix q = rotation_matrix(1.0, M_PI / 2.0);
  CHECK(q(0, 0) == doctest::Approx(0.0).epsilon(0).scale(1));
  CHECK(q(0, 1) == doctest::Approx(-1.0));
  CHECK(q(1, 0) == doctest::Approx(1.0));
  CHECK(q(1, 1) == doctest::Approx(0.0).epsilon(0).scale(1));
  CHECK(q(2, 2) == 1.0);
  CHECK(q(0, 2) == 0.0);
  CHECK(q(2, 0) == 0.0);
}

TEST_CASE("rotation_matrix group property and orthogonality") {
  testutil::Rng rng(42);
  for (int i = 0; i < 200; ++i) {
    const double omega = rng.uniform(0.2, 3.0);
    const double t1 = rng.uniform(-10.0, 10.0), t2 = rng.uniform(-10.0, 10.0);
    const RotationMatrix a = rotation_matrix(omega, t1);
    const RotationMatrix b = rotation_matrix(omega, t2);
    const RotationMatrix ab = a * b;
    const RotationMatrix sum = rotation_matrix(omega, t1 + t2);
    CHECK(max_abs_diff(ab, sum) <= 1e-13);

    const RotationMatrix aat = a * a.transpose();
    CHECK(max_abs_diff(aat, RotationMatrix::identity()) <= 1e-13);

    // det = +1 via triple product of the rows
    const Vec3 r0{a(0, 0), a(0, 1), a(0, 2)}, r1{a(1, 0), a(1, 1), a(1, 2)},
        r2{a(2, 0), a(2, 1), a(2, 2)};
    CHECK(dot(r0, cross(r1, r2)) == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("integrated_rotation: omega -> 0 gives (t1-t0)*I") {
  const RotationMatrix r = integrated_rotation(0.0, 1.0, 3.5, false);
  RotationMatrix expect;
  expect(0, 0) = expect(1, 1) = expect(2, 2) = 2.5;
  CHECK(max_abs_diff(r, expect) == 0.0);
}

TEST_CASE("integrated_rotation matches quadrature oracle") {
  // omega_c = 1, [0, 0.1] per the worked example, then randomized intervals.
  const RotationMatrix closed = integrated_rotation(1.0, 0.0, 0.1, false);
  const RotationMatrix quad = integrate_by_quadrature(1.0, 0.0, 0.1, false, 10000);
  CHECK(max_abs_diff(closed, quad) <= 1e-10);

  testutil::Rng rng(7);
  for (int i = 0; i < 20; ++i) {
    const double omega = rng.uniform(0.1, 4.0);
    const double t0 = rng.uniform(-5.0, 5.0);
    const double t1 = t0 + rng.uniform(-1.0, 1.0);
    for (bool inverse : {false, true}) {
      const RotationMatrix c = integrated_rotation(omega, t0, t1, inverse);
      const RotationMatrix q = integrate_by_quadrature(omega, t0, t1, inverse, 10000);
      CHECK(max_abs_diff(c, q) <= 1e-9);
    }
  }
}

TEST_CASE("integrated_rotation over a full period: xy block vanishes") {
  const double omega = 1.7;
  const double period = 2.0 * M_PI / omega;
  const RotationMatrix r = integrated_rotation(omega, 0.3, 0.3 + period, false);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(std::abs(r(i, j)) <= 1e-13);
  CHECK(r(2, 2) == doctest::Approx(period).epsilon(1e-14));
}

TEST_CASE("integrated_rotation interval additivity") {
  testutil::Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    const double omega = rng.uniform(0.1, 3.0);
    const double t0 = rng.uniform(-4.0, 4.0), t1 = t0 + rng.uniform(0.0, 2.0),
                 t2 = t1 + rng.uniform(0.0, 2.0);
    const RotationMatrix whole = integrated_rotation(omega, t0, t2, false);
    const RotationMatrix parts =
        integrated_rotation(omega, t0, t1, false) + integrated_rotation(omega, t1, t2, false);
    CHECK(max_abs_diff(whole, parts) <= 1e-13);
  }
}

TEST_CASE("integrated_rotation small-interval consistency I(t0,t0+h) = h*D(t0) + O(h^2)") {
  const double omega = 2.0, t0 = 0.7;
  double prev_ratio = 0.0;
  for (double h : {1e-2, 1e-3, 1e-4, 1e-5}) {
    const RotationMatrix i = integrated_rotation(omega, t0, t0 + h, false);
    const RotationMatrix lead = h * rotation_matrix(omega, t0);
    const double diff = max_abs_diff(i, lead);
    CHECK(diff <= 2.0 * omega * h * h);  // |D'| <= omega
    (void)prev_ratio;
    prev_ratio = diff / (h * h);
  }
}

TEST_CASE("double_integrated_rotation matches nested quadrature") {
  testutil::Rng rng(23);
  for (int i = 0; i < 10; ++i) {
    const double omega = rng.uniform(0.1, 3.0);
    const double t = rng.uniform(0.01, 2.0);
    // oracle: int_0^t I_D(0,u) du by midpoint on the closed-form inner integral
    RotationMatrix acc;
    const int panels = 20000;
    const double du = t / panels;
    for (int p = 0; p < panels; ++p)
      acc = acc + du * integrated_rotation(omega, 0.0, (p + 0.5) * du, false);
    const RotationMatrix closed = double_integrated_rotation(omega, t);
    CHECK(max_abs_diff(closed, acc) <= 1e-9);
  }
  // omega == 0: K = t^2/2 * I
  const RotationMatrix k0 = double_integrated_rotation(0.0, 3.0);
  CHECK(k0(0, 0) == doctest::Approx(4.5));
  CHECK(k0(0, 1) == 0.0);
  CHECK(k0(2, 2) == doctest::Approx(4.5));
}

TEST_CASE("frame maps: identity at t=0, isometry, round trip, half turn") {
  testutil::Rng rng(5);
  const Vec3 v{1.0, 0.0, 0.0};
  const Vec3 half = to_rotating(v, 1.0, M_PI);
  CHECK(half.x == doctest::Approx(-1.0));
  CHECK(std::abs(half.y) <= 1e-15);

  for (int i = 0; i < 100; ++i) {
    const Vec3 w{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3)};
    const double omega = rng.uniform(0.1, 3.0), t = rng.uniform(-5, 5);
    const Vec3 id0 = to_rotating(w, omega, 0.0);
    CHECK(id0.x == w.x);
    CHECK(id0.y == w.y);
    CHECK(id0.z == w.z);
    const Vec3 r = to_rotating(w, omega, t);
    CHECK(norm(r) == doctest::Approx(norm(w)).epsilon(1e-13));
    const Vec3 back = to_physical(r, omega, t);
    CHECK(std::abs(back.x - w.x) <= 1e-14 * std::max(1.0, norm(w)));
    CHECK(std::abs(back.y - w.y) <= 1e-14 * std::max(1.0, norm(w)));
    CHECK(std::abs(back.z - w.z) <= 1e-14 * std::max(1.0, norm(w)));
  }
}
