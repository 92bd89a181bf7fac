#include "liftseg/projections.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

using liftseg::DataFitValue;
using liftseg::GradientDuals;
using liftseg::GradientField;
using liftseg::Image;
using liftseg::MaskStack;
using liftseg::SimplexMode;
using liftseg::in_admissible_set;
using liftseg::project_ball_2inf;
using liftseg::project_ball_infinf;
using liftseg::project_simplex;
using liftseg::project_simplex_point;

namespace {

std::vector<double> project_point(std::vector<double> x, SimplexMode mode) {
  project_simplex_point(x, mode);
  return x;
}

double dist(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

}  // namespace

TEST_CASE("ball projection: interior points unchanged, exterior scaled radially") {
  GradientDuals v(1);
  v[0] = {Image(2, 2, 0.0), Image(2, 2, 0.0)};
  v[0].g1(0, 0) = 0.3;
  v[0].g2(0, 0) = 0.4;  // norm 0.5, inside the unit ball
  v[0].g1(1, 0) = 3.0;
  v[0].g2(1, 0) = 4.0;  // norm 5 -> (0.6, 0.8) on the unit sphere
  GradientDuals p = project_ball_2inf(v, 1.0);
  CHECK(p[0].g1(0, 0) == 0.3);
  CHECK(p[0].g2(0, 0) == 0.4);
  CHECK(p[0].g1(1, 0) == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(p[0].g2(1, 0) == doctest::Approx(0.8).epsilon(1e-15));

  GradientDuals p2 = project_ball_2inf(v, 2.0);  // radius-2 ball
  CHECK(p2[0].g1(1, 0) == doctest::Approx(1.2).epsilon(1e-15));
  CHECK(p2[0].g2(1, 0) == doctest::Approx(1.6).epsilon(1e-15));
}

TEST_CASE("ball projection is feasible, idempotent, and distance-minimal") {
  testutil::Rng rng(201);
  GradientDuals v(2);
  for (GradientField& f : v)
    f = {testutil::random_image(6, 6, rng, -3.0, 3.0),
         testutil::random_image(6, 6, rng, -3.0, 3.0)};
  const double radius = 0.7;
  GradientDuals p = project_ball_2inf(v, radius);
  for (const GradientField& f : p)
    for (std::size_t i = 0; i < f.g1.size(); ++i)
      CHECK(std::hypot(f.g1[i], f.g2[i]) <= radius + 1e-12);

  // reprojecting moves points by at most one rounding step of the rescale
  GradientDuals pp = project_ball_2inf(p, radius);
  for (std::size_t k = 0; k < p.size(); ++k)
    for (std::size_t i = 0; i < p[k].g1.size(); ++i) {
      CHECK(std::abs(pp[k].g1[i] - p[k].g1[i]) <= 1e-15);
      CHECK(std::abs(pp[k].g2[i] - p[k].g2[i]) <= 1e-15);
    }

  // no feasible sample may be closer to the input than the projection
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t k = static_cast<std::size_t>(rng.uniform_int(0, 1));
    const std::size_t i = static_cast<std::size_t>(rng.uniform_int(0, 35));
    const double ang = rng.uniform(0.0, 6.2831853);
    const double r = radius * std::sqrt(rng.uniform());
    const double z1 = r * std::cos(ang), z2 = r * std::sin(ang);
    const double d_proj = std::hypot(p[k].g1[i] - v[k].g1[i], p[k].g2[i] - v[k].g2[i]);
    const double d_samp = std::hypot(z1 - v[k].g1[i], z2 - v[k].g2[i]);
    CHECK(d_proj <= d_samp + 1e-12);
  }
}

TEST_CASE("box projection clamps to [-1, 1] and is idempotent") {
  DataFitValue w(1, 3, 1);
  w.channel(0)[0] = 0.5;
  w.channel(0)[1] = 3.0;
  w.channel(0)[2] = -3.0;
  w.channel(1)[0] = -1.0;
  DataFitValue p = project_ball_infinf(w);
  CHECK(p.channel(0)[0] == 0.5);
  CHECK(p.channel(0)[1] == 1.0);
  CHECK(p.channel(0)[2] == -1.0);
  CHECK(p.channel(1)[0] == -1.0);
  DataFitValue pp = project_ball_infinf(p);
  for (int j = 0; j < p.num_channels(); ++j)
    for (std::size_t i = 0; i < p.channel(j).size(); ++i)
      CHECK(pp.channel(j)[i] == p.channel(j)[i]);
}

TEST_CASE("simplex projection: feasible points unchanged, vertices recovered") {
  const std::vector<double> feasible{0.25, 0.25, 0.5};  // dyadic: sums to 1 exactly
  CHECK(project_point(feasible, SimplexMode::Equality) == feasible);

  const std::vector<double> vertex{2.0, 0.0, 0.0};
  const std::vector<double> pv = project_point(vertex, SimplexMode::Equality);
  CHECK(pv[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(pv[1] == 0.0);
  CHECK(pv[2] == 0.0);

  // inequality: interior points of the sum constraint just clip
  const std::vector<double> inside{0.2, -0.1, 0.3};
  const std::vector<double> pi = project_point(inside, SimplexMode::Inequality);
  CHECK(pi == std::vector<double>{0.2, 0.0, 0.3});
}

TEST_CASE("simplex projection agrees with the enumeration oracle") {
  testutil::Rng rng(202);
  for (int trial = 0; trial < 2000; ++trial) {
    const int kc = rng.uniform_int(2, 4);
    std::vector<double> x(static_cast<std::size_t>(kc));
    for (double& v : x) v = rng.uniform(-2.0, 2.0);
    for (SimplexMode mode : {SimplexMode::Equality, SimplexMode::Inequality}) {
      const std::vector<double> mine = project_point(x, mode);
      const std::vector<double> oracle = testutil::simplex_oracle(x, mode);
      REQUIRE(oracle.size() == x.size());
      CHECK(dist(mine, oracle) <= 1e-8);
    }
  }
}

TEST_CASE("simplex projection is idempotent and 1-Lipschitz") {
  testutil::Rng rng(203);
  for (SimplexMode mode : {SimplexMode::Equality, SimplexMode::Inequality}) {
    for (int trial = 0; trial < 300; ++trial) {
      const int kc = rng.uniform_int(2, 4);
      std::vector<double> x(static_cast<std::size_t>(kc)),
          y(static_cast<std::size_t>(kc));
      for (double& v : x) v = rng.uniform(-2.0, 2.0);
      for (double& v : y) v = rng.uniform(-2.0, 2.0);
      const std::vector<double> px = project_point(x, mode);
      const std::vector<double> py = project_point(y, mode);
      CHECK(dist(project_point(px, mode), px) <= 1e-12);
      CHECK(dist(px, py) <= dist(x, y) + 1e-12);
    }
  }
}

TEST_CASE("stack projection applies the point projection at every pixel") {
  testutil::Rng rng(204);
  MaskStack u = testutil::random_stack(3, 5, 4, rng, -1.0, 2.0);
  for (SimplexMode mode : {SimplexMode::Equality, SimplexMode::Inequality}) {
    MaskStack p = project_simplex(u, mode);
    CHECK(in_admissible_set(p, mode));
    for (std::size_t i = 0; i < u.channel(0).size(); ++i) {
      std::vector<double> x{u.channel(0)[i], u.channel(1)[i], u.channel(2)[i]};
      const std::vector<double> expected = project_point(x, mode);
      for (int k = 0; k < 3; ++k)
        CHECK(p.channel(k)[i] == expected[static_cast<std::size_t>(k)]);
    }
  }
}

TEST_CASE("admissible-set membership honours mode and tolerances") {
  MaskStack ok_eq(2, 3, 3, 0.5);
  CHECK(in_admissible_set(ok_eq, SimplexMode::Equality));
  CHECK(in_admissible_set(ok_eq, SimplexMode::Inequality));

  MaskStack low(2, 3, 3, 0.25);  // sums to 0.5
  CHECK_FALSE(in_admissible_set(low, SimplexMode::Equality));
  CHECK(in_admissible_set(low, SimplexMode::Inequality));

  MaskStack neg(2, 3, 3, 0.5);
  neg.channel(0)[4] = -1e-6;
  CHECK_FALSE(in_admissible_set(neg, SimplexMode::Inequality));
  CHECK(in_admissible_set(neg, SimplexMode::Inequality, 1e-5, 1e-3));
}

TEST_CASE("projection argument errors") {
  GradientDuals v(1);
  v[0] = {Image(2, 2, 0.0), Image(2, 2, 0.0)};
  CHECK_THROWS_AS(project_ball_2inf(v, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(project_ball_2inf(v, -1.0), std::invalid_argument);
  std::vector<double> empty;
  CHECK_THROWS_AS(project_simplex_point(empty, SimplexMode::Equality),
                  std::invalid_argument);
}
