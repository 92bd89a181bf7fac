#include "liftseg/grid_ops.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using liftseg::GradientField;
using liftseg::Image;
using liftseg::gradient;
using liftseg::gradient_adjoint;
using liftseg::inner;
using liftseg::norm_l1;
using liftseg::smoothed_l1;
using liftseg::tv_isotropic;

TEST_CASE("gradient of a constant image is zero") {
  Image u(7, 5, 3.25);
  GradientField g = gradient(u);
  for (std::size_t i = 0; i < g.g1.size(); ++i) {
    CHECK(g.g1[i] == 0.0);
    CHECK(g.g2[i] == 0.0);
  }
}

TEST_CASE("gradient of an axis-aligned ramp is one inside, zero on the far edge") {
  const int n = 6;
  Image u(n, n);
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x) u(x, y) = static_cast<double>(x);
  GradientField g = gradient(u);
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x) {
      CHECK(g.g1(x, y) == (x == n - 1 ? 0.0 : 1.0));
      CHECK(g.g2(x, y) == 0.0);
    }
}

TEST_CASE("gradient respects the pixel spacing") {
  Image u(4, 3, 0.0, 0.5);
  for (int y = 0; y < 3; ++y)
    for (int x = 0; x < 4; ++x) u(x, y) = 0.5 * x;  // physical slope 1
  GradientField g = gradient(u);
  CHECK(g.g1(1, 1) == doctest::Approx(1.0));
}

TEST_CASE("gradient matches the forward-difference stencil entrywise") {
  testutil::Rng rng(11);
  Image u = testutil::random_image(8, 8, rng, -2.0, 2.0);
  GradientField g = gradient(u);
  for (int y = 0; y < 8; ++y)
    for (int x = 0; x < 8; ++x) {
      const double e1 = x + 1 < 8 ? u(x + 1, y) - u(x, y) : 0.0;
      const double e2 = y + 1 < 8 ? u(x, y + 1) - u(x, y) : 0.0;
      CHECK(g.g1(x, y) == doctest::Approx(e1).epsilon(1e-15));
      CHECK(g.g2(x, y) == doctest::Approx(e2).epsilon(1e-15));
    }
}

TEST_CASE("adjoint of a constant field hits only the boundary") {
  const int n = 4;
  GradientField v{Image(n, n, 1.0), Image(n, n, 0.0)};
  Image out = gradient_adjoint(v);
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x) {
      const double expected = x == 0 ? -1.0 : (x == n - 1 ? 1.0 : 0.0);
      CHECK(out(x, y) == expected);
    }
}

TEST_CASE("adjoint identity <grad u, v> == <u, grad* v>") {
  testutil::Rng rng(22);
  for (double spacing : {1.0, 0.5}) {
    for (int trial = 0; trial < 25; ++trial) {
      Image u = testutil::random_image(16, 13, rng, -1.0, 1.0, spacing);
      GradientField v{testutil::random_image(16, 13, rng, -1.0, 1.0, spacing),
                      testutil::random_image(16, 13, rng, -1.0, 1.0, spacing)};
      const GradientField gu = gradient(u);
      const double lhs = inner(gu.g1, v.g1) + inner(gu.g2, v.g2);
      const double rhs = inner(u, gradient_adjoint(v));
      CHECK(std::abs(lhs - rhs) <= 1e-12 * (std::abs(lhs) + 1.0));
    }
  }
}

TEST_CASE("tv of a half-plane indicator equals the interface length") {
  const int n = 10;
  Image u(n, n);
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x) u(x, y) = x < n / 2 ? 1.0 : 0.0;
  CHECK(tv_isotropic(u) == doctest::Approx(static_cast<double>(n)).epsilon(1e-15));
}

TEST_CASE("tv matches a direct recomputation on random data") {
  testutil::Rng rng(33);
  Image u = testutil::random_image(9, 7, rng, -3.0, 3.0);
  GradientField g = gradient(u);
  double expected = 0.0;
  for (std::size_t i = 0; i < g.g1.size(); ++i)
    expected += std::hypot(g.g1[i], g.g2[i]);
  CHECK(tv_isotropic(u) == doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("tv is shift invariant and positively homogeneous") {
  testutil::Rng rng(44);
  Image u = testutil::random_image(12, 12, rng, -1.0, 1.0);

  // dyadic values keep the shifted differences bitwise identical
  Image d(12, 12);
  for (std::size_t i = 0; i < d.size(); ++i)
    d[i] = static_cast<double>(rng.uniform_int(-128, 128)) / 256.0;
  Image d_shift = d;
  for (std::size_t i = 0; i < d.size(); ++i) d_shift[i] += 0.25;
  CHECK(tv_isotropic(d_shift) == tv_isotropic(d));

  Image u_shift = u;
  for (std::size_t i = 0; i < u.size(); ++i) u_shift[i] += 0.8137;
  CHECK(tv_isotropic(u_shift) == doctest::Approx(tv_isotropic(u)).epsilon(1e-12));

  Image u2 = u;
  for (std::size_t i = 0; i < u.size(); ++i) u2[i] *= 2.0;  // exact scaling
  CHECK(tv_isotropic(u2) == doctest::Approx(2.0 * tv_isotropic(u)).epsilon(1e-15));
  Image upi = u;
  for (std::size_t i = 0; i < u.size(); ++i) upi[i] *= 3.14159;
  CHECK(tv_isotropic(upi) ==
        doctest::Approx(3.14159 * tv_isotropic(u)).epsilon(1e-12));
}

TEST_CASE("smoothed l1 on a single pixel: sqrt(3^2 + 16) = 5") {
  Image u(1, 1, 3.0);
  CHECK(smoothed_l1(u, 16.0) == doctest::Approx(5.0).epsilon(1e-15));
}

TEST_CASE("smoothed l1 of zeros is n sqrt(eps)") {
  Image u(4, 3, 0.0);
  CHECK(smoothed_l1(u, 0.25) == doctest::Approx(12 * 0.5).epsilon(1e-15));
}

TEST_CASE("smoothed l1 dominates l1 and increases with eps") {
  testutil::Rng rng(55);
  Image u = testutil::random_image(6, 6, rng, -2.0, 2.0);
  const double exact = norm_l1(u);
  double prev = exact;
  for (double eps : {1e-12, 1e-6, 1e-2, 1.0}) {
    const double s = smoothed_l1(u, eps);
    CHECK(s > exact);
    CHECK(s <= exact + u.size() * std::sqrt(eps) + 1e-12);
    CHECK(s >= prev);
    prev = s;
  }
}

TEST_CASE("dimension and argument errors") {
  CHECK_THROWS_AS(gradient(Image(1, 5, 0.0)), std::invalid_argument);
  CHECK_THROWS_AS(gradient(Image(5, 1, 0.0)), std::invalid_argument);
  CHECK_THROWS_AS(smoothed_l1(Image(2, 2, 0.0), 0.0), std::invalid_argument);
  CHECK_THROWS_AS(smoothed_l1(Image(2, 2, 0.0), -1e-9), std::invalid_argument);
  GradientField bad{Image(3, 3, 0.0), Image(4, 3, 0.0)};
  CHECK_THROWS_AS(gradient_adjoint(bad), std::invalid_argument);
  CHECK_THROWS_AS(Image(0, 3), std::invalid_argument);
  CHECK_THROWS_AS(Image(3, 3, 0.0, 0.0), std::invalid_argument);
}
