#include <doctest.h>

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "gff/geometry.hpp"
#include "gff/kernels.hpp"
#include "gff/pair_k2.hpp"
#include "gff/quadrature.hpp"
#include "gff/harmonics.hpp"

using namespace gff;

namespace {

Point pt(std::initializer_list<double> v) {
  Point p(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) p(i++) = x;
  return p;
}

}  // namespace

TEST_CASE("scaling function values") {
  CHECK(scaling_s(1.0, 2) == doctest::Approx(0.0));
  CHECK(scaling_s(1.0, 3) == doctest::Approx(1.0));
  CHECK(scaling_s(0.5, 2) == doctest::Approx(0.6931472).epsilon(1e-7));
  CHECK(scaling_s(0.25, 3) == doctest::Approx(4.0));
  CHECK(scaling_s(0.1, 2) > scaling_s(0.2, 2));
}

TEST_CASE("image point") {
  CHECK((image_point(pt({0.5, 0.0})) - pt({2.0, 0.0})).norm() < 1e-15);
  CHECK((image_point(pt({0.25, 0.0, 0.0})) - pt({4.0, 0.0, 0.0})).norm() < 1e-15);
  const Point u = pt({0.6, 0.8});
  CHECK((image_point(u) - u).norm() < 1e-15);
  CHECK_THROWS_AS(image_point(pt({0.0, 0.0})), DomainError);
}

TEST_CASE("unit ball Green's function") {
  CHECK(green_unit_ball(pt({0.0, 0.0}), pt({0.5, 0.0}), 2) == doctest::Approx(0.6931472).epsilon(1e-7));
  CHECK(green_unit_ball(pt({0.0, 0.0, 0.0}), pt({0.0, 0.5, 0.0}), 3) == doctest::Approx(1.0));
  const Point x = pt({0.3, -0.2});
  const Point y = pt({-0.1, 0.45});
  CHECK(green_unit_ball(x, y, 2) == doctest::Approx(green_unit_ball(y, x, 2)).epsilon(1e-14));
  // Vanishes on the boundary and decays towards it.
  CHECK(std::abs(green_unit_ball(pt({1.0, 0.0}), y, 2)) < 1e-14);
  CHECK(std::abs(green_unit_ball(pt({0.999, 0.0}), pt({0.2, 0.1}), 2)) < 1e-2);
}

TEST_CASE("Green's function on a scaled ball") {
  const Ball b2(2, pt({0.0, 0.0}), 2.0);
  CHECK(green_ball(pt({0.0, 0.0}), pt({1.0, 0.0}), b2) == doctest::Approx(0.6931472).epsilon(1e-7));
  const Ball b3(3, pt({0.0, 0.0, 0.0}), 2.0);
  CHECK(green_ball(pt({0.0, 0.0, 0.0}), pt({1.0, 0.0, 0.0}), b3) == doctest::Approx(0.5));
  CHECK_THROWS_AS(green_ball(pt({0.1, 0.1}), pt({0.1, 0.1}), b2), DomainError);
}

TEST_CASE("regularized Green's function") {
  CHECK(green_regularized(pt({0.0, 0.0}), pt({0.0, 0.0}), Ball::unit(2)) == doctest::Approx(0.0));
  CHECK(green_regularized(pt({0.0, 0.0, 0.0}), pt({0.0, 0.0, 0.0}), Ball::unit(3)) == doctest::Approx(-1.0));
  const Point x = pt({0.3, 0.2});
  const double at = green_regularized(x, x, Ball::unit(2));
  for (double delta : {1e-2, 1e-4, 1e-6}) {
    const double v = green_regularized(x, x + delta * pt({0.6, 0.8}), Ball::unit(2));
    CHECK(std::abs(v - at) < 2.0 * delta);
  }
}

TEST_CASE("harmonic difference kernel") {
  const Ball unit = Ball::unit(2);
  const Ball half = Ball::centered(2, 0.5);
  CHECK(harmonic_diff_kernel(pt({0.0, 0.0}), pt({0.0, 0.0}), unit, half) == doctest::Approx(0.6931472).epsilon(1e-7));

  // Positive semidefinite on 20 points of the inner ball.
  const Ball inner(2, pt({0.2, 0.1}), 0.4);
  std::vector<Point> z;
  for (int k = 0; k < 20; ++k) {
    const double t = 0.9 * k;
    const double r = 0.35 * (k + 1) / 20.0;
    z.push_back(inner.center() + r * pt({std::cos(t), std::sin(t)}));
  }
  Eigen::MatrixXd h(20, 20);
  for (int i = 0; i < 20; ++i)
    for (int j = 0; j < 20; ++j) h(i, j) = harmonic_diff_kernel(z[i], z[j], unit, inner);
  CHECK(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(h).eigenvalues().minCoeff() >= -1e-9);

  // Harmonic in the first argument: the two second differences cancel.
  const Point x = pt({0.25, 0.05});
  const Point y = pt({0.1, 0.2});
  const double step = 1e-3;
  const auto second = [&](const Point& e) {
    return harmonic_diff_kernel(x + e, y, unit, inner) - 2.0 * harmonic_diff_kernel(x, y, unit, inner) +
           harmonic_diff_kernel(x - e, y, unit, inner);
  };
  const double dxx = second(pt({step, 0.0}));
  const double dyy = second(pt({0.0, step}));
  CHECK(std::abs(dxx + dyy) < 1e-4 * (std::abs(dxx) + std::abs(dyy)));
}

TEST_CASE("Wick sum on a symmetric quadruple") {
  const Ball unit = Ball::unit(2);
  const std::array<Point, 4> z{pt({0.4, 0.0}), pt({-0.4, 0.0}), pt({0.0, 0.4}), pt({0.0, -0.4})};
  const double g01 = green_unit_ball(z[0], z[1], 2);
  const double g02 = green_unit_ball(z[0], z[2], 2);
  const double g03 = green_unit_ball(z[0], z[3], 2);
  const double g12 = green_unit_ball(z[1], z[2], 2);
  const double g13 = green_unit_ball(z[1], z[3], 2);
  const double g23 = green_unit_ball(z[2], z[3], 2);
  CHECK(wick_g4(z, unit) == doctest::Approx(g01 * g23 + g02 * g13 + g03 * g12).epsilon(1e-14));
}

TEST_CASE("Poisson kernel") {
  const Ball unit = Ball::unit(2);
  CHECK(poisson_kernel(unit, pt({0.0, 0.0}), pt({0.6, 0.8})) == doctest::Approx(1.0));
  const SphereRule rule(2, 64);
  for (const Point& z : {pt({0.3, 0.1}), pt({-0.7, 0.2})}) {
    double mass = 0.0;
    for (std::size_t q = 0; q < rule.size(); ++q) mass += rule.weights()[q] * poisson_kernel(unit, z, rule.nodes()[q]);
    CHECK(std::abs(mass - 1.0) < 1e-8);
  }
  // Reproduces the degree-1 solid harmonic.
  const Point u = pt({0.6, 0.8});
  const double ext = poisson_extension(
      unit, 0.3 * u, [](const Point& t) { return solid_harmonic(1, 1, t); }, rule);
  CHECK(ext == doctest::Approx(0.3 * eval_psi(1, 1, u)).epsilon(1e-10));
  const double one = poisson_extension(unit, 0.3 * u, [](const Point&) { return 1.0; }, rule);
  CHECK(one == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(poisson_kernel(unit, pt({1.0, 0.0}), u), DomainError);
}

TEST_CASE("double sphere average matches the spherical average formula") {
  for (int d : {2, 3}) {
    const Ball unit = Ball::unit(d);
    for (double r : {0.3, 0.5, 0.9})
      CHECK(double_sphere_green(unit, r, r) == doctest::Approx(scaling_s(r, d) - scaling_s(1.0, d)).epsilon(1e-6));
    CHECK(double_sphere_green(unit, 0.3, 0.6) ==
          doctest::Approx(scaling_s(0.6, d) - scaling_s(1.0, d)).epsilon(1e-6));
  }
}

TEST_CASE("pair_k2 spectral and quadrature agree for a centred mollifier") {
  const RadialMollifier eta(Point::Zero(2), 0.2);
  const Ball unit = Ball::unit(2);
  K2Options opts;
  opts.spec = BasisSpec{2, 0, 400};
  const double spectral = pair_k2(eta, eta, unit, K2Method::Spectral, opts);
  const double quadrature = pair_k2(eta, eta, unit, K2Method::Quadrature);
  CHECK(spectral == doctest::Approx(quadrature).epsilon(1e-3));
}
