#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include "test_util.hpp"
#include "vlrot/errors.hpp"
#include "vlrot/interpolation.hpp"

using namespace vlrot;

namespace {

// Oracle: explicit product-form Lagrange basis over the given node offsets,
// evaluated pointwise (independent of lagrange_weights' loop structure).
double lagrange_basis_at(const std::vector<double>& nodes, std::size_t i, double x) {
  double p = 1.0;
  for (std::size_t m = 0; m < nodes.size(); ++m) {
    if (m == i) continue;
    p *= (x - nodes[m]) / (nodes[i] - nodes[m]);
  }
  return p;
}

// Oracle: build and evaluate the full interpolating polynomial on the stencil
// around each output node (periodic), at the backtraced position.
std::vector<double> lagrange_shift_oracle(const std::vector<double>& line, double shift, int q,
                                          double spacing) {
  const int n = static_cast<int>(line.size());
  const double theta = -shift / spacing;
  const int d0 = lagrange_first_offset(q, theta);
  std::vector<double> nodes(q);
  for (int i = 0; i < q; ++i) nodes[i] = d0 + i;
  std::vector<double> out(n);
  for (int j = 0; j < n; ++j) {
    double acc = 0.0;
    for (int i = 0; i < q; ++i) {
      int idx = (j + d0 + i) % n;
      if (idx < 0) idx += n;
      acc += lagrange_basis_at(nodes, i, theta) * line[idx];
    }
    out[j] = acc;
  }
  return out;
}

}  // namespace

TEST_CASE("lagrange_weights: nodal exactness at theta = 0") {
  for (int q = 2; q <= 8; ++q) {
    const auto w = lagrange_weights(q, 0.0);
    const int d0 = lagrange_first_offset(q, 0.0);
    for (int i = 0; i < q; ++i) {
      if (d0 + i == 0)
        CHECK(w[i] == doctest::Approx(1.0).epsilon(1e-15));
      else
        CHECK(std::abs(w[i]) <= 1e-15);
    }
  }
}

TEST_CASE("lagrange_weights: q=2 midpoint") {
  const auto w = lagrange_weights(2, 0.5);
  REQUIRE(w.size() == 2);
  CHECK(w[0] == doctest::Approx(0.5));
  CHECK(w[1] == doctest::Approx(0.5));
}

TEST_CASE("lagrange_weights: q=4 theta=0.3 against the basis oracle and frozen values") {
  const auto w = lagrange_weights(4, 0.3);
  const int d0 = lagrange_first_offset(4, 0.3);
  CHECK(d0 == -1);
  std::vector<double> nodes{-1.0, 0.0, 1.0, 2.0};
  for (int i = 0; i < 4; ++i)
    CHECK(w[i] == doctest::Approx(lagrange_basis_at(nodes, i, 0.3)).epsilon(1e-14));
  // frozen values computed from the product-form basis
  CHECK(w[0] == doctest::Approx(-0.0595).epsilon(1e-12));
  CHECK(w[1] == doctest::Approx(0.7735).epsilon(1e-12));
  CHECK(w[2] == doctest::Approx(0.3315).epsilon(1e-12));
  CHECK(w[3] == doctest::Approx(-0.0455).epsilon(1e-12));
}

TEST_CASE("lagrange_weights: partition of unity, q in 2..8, 1000 random theta") {
  testutil::Rng rng(101);
  for (int trial = 0; trial < 1000; ++trial) {
    const int q = 2 + static_cast<int>(rng.next_u64() % 7);
    const double theta = rng.uniform(-0.999, 0.999);
    const auto w = lagrange_weights(q, theta);
    const double sum = std::accumulate(w.begin(), w.end(), 0.0);
    CHECK(std::abs(sum - 1.0) <= 1e-14);
  }
}

TEST_CASE("lagrange_weights: CFL violation error") {
  CHECK_THROWS_AS(lagrange_weights(4, 1.0), numerical_error);
  CHECK_THROWS_AS(lagrange_weights(4, -1.2), numerical_error);
  CHECK_THROWS_AS(lagrange_weights(1, 0.1), config_error);
}

TEST_CASE("shift_line_lagrange: shift 0 is the identity") {
  testutil::Rng rng(3);
  const auto line = rng.uniform_vector(16, -1.0, 1.0);
  const auto out = shift_line_lagrange(line, 0.0, 4, 0.5);
  for (std::size_t j = 0; j < line.size(); ++j) CHECK(out[j] == line[j]);
}

TEST_CASE("shift_line_lagrange: linear exactness for q=2 at interior nodes") {
  const int n = 16;
  const double spacing = 0.25, a = 0.7, b = -0.3;
  std::vector<double> line(n);
  for (int j = 0; j < n; ++j) line[j] = a + b * (j * spacing);
  const double shift = 0.4 * spacing;
  const auto out = shift_line_lagrange(line, shift, 2, spacing);
  // periodic wrap pollutes nodes whose stencil crosses the boundary
  for (int j = 2; j < n - 2; ++j)
    CHECK(out[j] == doctest::Approx(a + b * (j * spacing - shift)).epsilon(1e-13));
}

TEST_CASE("shift_line_lagrange: random line, q=4, against the pointwise polynomial oracle") {
  testutil::Rng rng(17);
  const double spacing = 0.37;
  for (int trial = 0; trial < 50; ++trial) {
    const auto line = rng.uniform_vector(16, -2.0, 2.0);
    const double shift = rng.uniform(-0.99, 0.99) * spacing;
    const auto got = shift_line_lagrange(line, shift, 4, spacing);
    const auto expect = lagrange_shift_oracle(line, shift, 4, spacing);
    for (int j = 0; j < 16; ++j) CHECK(got[j] == doctest::Approx(expect[j]).epsilon(1e-13));
  }
  // the spec'd instance
  const auto line = rng.uniform_vector(16, -1.0, 1.0);
  const auto got = shift_line_lagrange(line, 0.25 * spacing, 4, spacing);
  const auto expect = lagrange_shift_oracle(line, 0.25 * spacing, 4, spacing);
  for (int j = 0; j < 16; ++j) CHECK(got[j] == doctest::Approx(expect[j]).epsilon(1e-13));
}

TEST_CASE("shift_line_lagrange: degree exactness up to q-1") {
  // Shifting exact samples of a polynomial of degree < q reproduces the
  // shifted polynomial at nodes whose stencil does not wrap.
  testutil::Rng rng(29);
  const int n = 32;
  const double spacing = 0.1;
  for (int q = 2; q <= 8; ++q) {
    std::vector<double> coef(q);
    for (auto& c : coef) c = rng.uniform(-1.0, 1.0);
    auto poly = [&](double x) {
      double acc = 0.0, p = 1.0;
      for (int d = 0; d < q; ++d, p *= x) acc += coef[d] * p;
      return acc;
    };
    std::vector<double> line(n);
    for (int j = 0; j < n; ++j) line[j] = poly(j * spacing - n * spacing / 2.0);
    const double shift = rng.uniform(-0.9, 0.9) * spacing;
    const auto out = shift_line_lagrange(line, shift, q, spacing);
    for (int j = q; j < n - q; ++j) {
      const double x = j * spacing - n * spacing / 2.0 - shift;
      CHECK(out[j] == doctest::Approx(poly(x)).epsilon(1e-12));
    }
  }
}

TEST_CASE("shift_line_lagrange: errors") {
  std::vector<double> line(8, 1.0);
  CHECK_THROWS_AS(shift_line_lagrange(line, 0.6, 4, 0.5), numerical_error);  // CFL
  std::vector<double> tiny(3, 1.0);
  CHECK_THROWS_AS(shift_line_lagrange(tiny, 0.1, 4, 0.5), numerical_error);  // n < q
}

TEST_CASE("trig_interp_point: nodal exactness and constants") {
  testutil::Rng rng(31);
  for (int n : {2, 5, 16, 17}) {
    const double spacing = rng.uniform(0.1, 1.0);
    const auto line = rng.uniform_vector(n, -1.0, 1.0);
    for (int j = 0; j < n; ++j)
      CHECK(trig_interp_point(line, j * spacing, spacing) == doctest::Approx(line[j]).epsilon(1e-13));
    const std::vector<double> constant(n, 3.25);
    for (int k = 0; k < 10; ++k) {
      const double x = rng.uniform(-2.0, 2.0) * n * spacing;
      CHECK(trig_interp_point(constant, x, spacing) == doctest::Approx(3.25).epsilon(1e-12));
    }
  }
}

TEST_CASE("trig_interp_point: single-mode exactness (analytic oracle)") {
  const int n = 16;
  const double spacing = 0.5, length = n * spacing;
  std::vector<double> line(n);
  for (int j = 0; j < n; ++j) line[j] = std::sin(2.0 * std::numbers::pi * j / n);
  testutil::Rng rng(37);
  for (int k = 0; k < 100; ++k) {
    const double x = rng.uniform(-1.5, 1.5) * length;
    const double expect = std::sin(2.0 * std::numbers::pi * x / length);
    CHECK(std::abs(trig_interp_point(line, x, spacing) - expect) <= 1e-12);
  }
}

TEST_CASE("shift_line_trig: full period and node-to-node shifts") {
  testutil::Rng rng(41);
  for (int n : {8, 17}) {
    const double spacing = 0.3;
    const auto line = rng.uniform_vector(n, -1.0, 1.0);
    const auto full = shift_line_trig(line, n * spacing, spacing);
    for (int j = 0; j < n; ++j) CHECK(std::abs(full[j] - line[j]) <= 1e-12);
    const auto one = shift_line_trig(line, spacing, spacing);
    for (int j = 0; j < n; ++j)
      CHECK(std::abs(one[j] - line[(j - 1 + n) % n]) <= 1e-12);
  }
}

TEST_CASE("shift_line_trig: matches pointwise trig_interp_point (even and odd n)") {
  testutil::Rng rng(43);
  for (int n : {16, 17, 12, 9}) {
    const double spacing = rng.uniform(0.2, 0.8);
    for (int trial = 0; trial < 25; ++trial) {
      const auto line = rng.uniform_vector(n, -2.0, 2.0);
      const double shift = rng.uniform(-3.0, 3.0) * spacing;
      const auto got = shift_line_trig(line, shift, spacing);
      for (int j = 0; j < n; ++j) {
        const double expect = trig_interp_point(line, j * spacing - shift, spacing);
        CHECK(std::abs(got[j] - expect) <= 1e-12);
      }
    }
  }
}

TEST_CASE("shift_line_trig: trig-polynomial exactness under shift") {
  // Any representable spectrum shifts analytically: check a resolvable mode
  // mix on even and odd grids.
  const double spacing = 0.4;
  testutil::Rng rng(47);
  for (int n : {16, 15}) {
    const double length = n * spacing;
    const double k1 = 2.0 * std::numbers::pi / length;
    auto fval = [&](double x) {
      return 0.7 + std::sin(k1 * x) - 0.4 * std::cos(3.0 * k1 * x) + 0.2 * std::sin(5.0 * k1 * x);
    };
    std::vector<double> line(n);
    for (int j = 0; j < n; ++j) line[j] = fval(j * spacing);
    const double shift = rng.uniform(-2.0, 2.0);
    const auto out = shift_line_trig(line, shift, spacing);
    for (int j = 0; j < n; ++j) CHECK(std::abs(out[j] - fval(j * spacing - shift)) <= 1e-11);
  }
}

TEST_CASE("kernels are linear") {
  testutil::Rng rng(53);
  const int n = 24;
  const double spacing = 0.21;
  const auto f = rng.uniform_vector(n, -1.0, 1.0);
  const auto g = rng.uniform_vector(n, -1.0, 1.0);
  const double a = 1.7, b = -0.6;
  std::vector<double> mix(n);
  for (int j = 0; j < n; ++j) mix[j] = a * f[j] + b * g[j];

  const double shift_t = rng.uniform(-2.0, 2.0);
  const auto st = shift_line_trig(mix, shift_t, spacing);
  const auto sf = shift_line_trig(f, shift_t, spacing);
  const auto sg = shift_line_trig(g, shift_t, spacing);
  for (int j = 0; j < n; ++j) CHECK(std::abs(st[j] - (a * sf[j] + b * sg[j])) <= 1e-13);

  const double shift_l = rng.uniform(-0.9, 0.9) * spacing;
  const auto lt = shift_line_lagrange(mix, shift_l, 4, spacing);
  const auto lf = shift_line_lagrange(f, shift_l, 4, spacing);
  const auto lg = shift_line_lagrange(g, shift_l, 4, spacing);
  for (int j = 0; j < n; ++j) CHECK(std::abs(lt[j] - (a * lf[j] + b * lg[j])) <= 1e-13);
}

TEST_CASE("shift_line_trig: mass preservation") {
  testutil::Rng rng(59);
  for (int n : {16, 17}) {
    const double spacing = 0.33;
    const auto line = rng.uniform_vector(n, 0.0, 2.0);
    const double mass = std::accumulate(line.begin(), line.end(), 0.0);
    for (int trial = 0; trial < 20; ++trial) {
      const auto out = shift_line_trig(line, rng.uniform(-4.0, 4.0), spacing);
      const double out_mass = std::accumulate(out.begin(), out.end(), 0.0);
      CHECK(std::abs(out_mass - mass) <= 1e-12 * std::abs(mass));
    }
  }
}
