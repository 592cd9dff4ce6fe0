#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include <Eigen/Dense>

#include "gff/harmonics.hpp"
#include "gff/quadrature.hpp"

using namespace gff;

namespace {

Point polar(double r, double t) {
  Point p(2);
  p << r * std::cos(t), r * std::sin(t);
  return p;
}

Point spherical(double r, double theta, double phi) {
  Point p(3);
  p << r * std::sin(theta) * std::cos(phi), r * std::sin(theta) * std::sin(phi), r * std::cos(theta);
  return p;
}

}  // namespace

TEST_CASE("harmonic multiplicities") {
  CHECK(multiplicity(0, 2) == 1);
  CHECK(multiplicity(5, 2) == 2);
  CHECK(multiplicity(2, 3) == 5);
  CHECK(multiplicity(7, 3) == 15);
}

TEST_CASE("spherical harmonics are orthonormal") {
  CHECK(eval_psi(0, 1, polar(1.0, 0.7)) == doctest::Approx(1.0));

  // d = 2: trapezoid rule is exact for trigonometric polynomials.
  const int m = 64;
  double norm = 0.0;
  for (int k = 0; k < m; ++k) {
    const double v = eval_psi(3, 1, polar(1.0, 2.0 * std::numbers::pi * k / m));
    norm += v * v / m;
  }
  CHECK(std::abs(norm - 1.0) < 1e-12);

  const SphereRule rule(3, 6);
  for (int j = 1; j <= 5; ++j)
    for (int jp = 1; jp <= 3; ++jp) {
      double ip = 0.0;
      for (std::size_t q = 0; q < rule.size(); ++q)
        ip += rule.weights()[q] * eval_psi(2, j, rule.nodes()[q]) * eval_psi(1, jp, rule.nodes()[q]);
      CHECK(std::abs(ip) < 1e-10);
    }
}

TEST_CASE("recurrence evaluation matches single harmonics") {
  for (int d : {2, 3}) {
    const Point u = d == 2 ? polar(1.0, 0.9) : spherical(1.0, 1.1, -0.4);
    std::vector<double> all;
    eval_psi_all(12, u, all);
    std::size_t k = 0;
    for (int n = 0; n <= 12; ++n)
      for (int j = 1; j <= multiplicity(n, d); ++j) CHECK(all[k++] == doctest::Approx(eval_psi(n, j, u)).epsilon(1e-12));
  }
}

TEST_CASE("solid harmonics are harmonic") {
  const Point z = spherical(0.5, 0.8, 0.3);
  const double h = 1e-3;
  for (int j = 1; j <= 5; ++j) {
    double lap = -6.0 * solid_harmonic(2, j, z);
    for (int a = 0; a < 3; ++a) {
      Point e = Point::Zero(3);
      e(a) = h;
      lap += solid_harmonic(2, j, z + e) + solid_harmonic(2, j, z - e);
    }
    CHECK(std::abs(lap / (h * h)) < 1e-6);
  }
  CHECK(solid_harmonic(0, 1, spherical(0.3, 0.2, 0.1)) == doctest::Approx(1.0));
}

TEST_CASE("radial zeros") {
  CHECK(radial_zero(0, 1, 2) == doctest::Approx(2.404825557695773).epsilon(1e-13));
  CHECK(radial_zero(1, 1, 2) == doctest::Approx(3.831705970207512).epsilon(1e-13));
  CHECK(radial_zero(0, 1, 3) == doctest::Approx(std::numbers::pi).epsilon(1e-13));
  CHECK(radial_zero(1, 1, 3) == doctest::Approx(4.493409457909064).epsilon(1e-13));
  for (int d : {2, 3}) {
    for (int n = 0; n <= 10; ++n) {
      CHECK(radial_zero(n, 1, d) < radial_zero(n + 1, 1, d));
      CHECK(radial_zero(n + 1, 1, d) < radial_zero(n, 2, d));
    }
    for (int n : {0, 7, 30})
      for (int i : {1, 10, 40}) CHECK(std::abs(radial_bessel(n, radial_zero(n, i, d), d)) < 1e-12);
  }
}

TEST_CASE("eigenfunctions solve the Dirichlet problem") {
  const DirichletEigenfunction e = eigenfunction(2, 1, 3, 2);
  CHECK(e.lambda == doctest::Approx(e.alpha * e.alpha));
  CHECK(e(polar(1.0, 0.3)) == doctest::Approx(0.0).scale(1.0));
  const Point z = polar(0.4, 0.7);
  const double h = 1e-3;
  double lap = -4.0 * e(z);
  for (const Point& s : {polar(h, 0.0), polar(h, std::numbers::pi / 2)}) lap += e(z + s) + e(z - s);
  lap /= h * h;
  CHECK(std::abs(lap + e.lambda * e(z)) < 1e-3 * e.lambda * std::abs(e(z)));
}

TEST_CASE("first modes are orthonormal in L2 of the ball") {
  const Basis basis(BasisSpec{2, 4, 10});
  const VolumeRule rule = VolumeRule::ball(Ball::unit(2), 80, 12);
  Eigen::MatrixXd values(static_cast<Eigen::Index>(rule.size()), 50);
  std::vector<double> row(basis.size());
  for (std::size_t q = 0; q < rule.size(); ++q) {
    basis.evaluate(rule.nodes[q], row);
    for (int k = 0; k < 50; ++k) values(static_cast<Eigen::Index>(q), k) = row[static_cast<std::size_t>(k)];
  }
  const Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(rule.weights.data(), static_cast<Eigen::Index>(rule.size()));
  const Eigen::MatrixXd gram = values.transpose() * w.asDiagonal() * values;
  CHECK((gram - Eigen::MatrixXd::Identity(50, 50)).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("basis evaluation matches single modes") {
  for (int d : {2, 3}) {
    const Basis basis(BasisSpec{d, 10, 30});
    std::vector<double> v(basis.size());
    const Point z = d == 2 ? polar(0.63, 2.1) : spherical(0.63, 2.1, 0.4);
    basis.evaluate(z, v);
    for (std::size_t k = 0; k < basis.size(); k += 13) CHECK(std::abs(v[k] - basis.mode(k)(z)) < 1e-11);
  }
}

TEST_CASE("manifest lists every mode") {
  const Basis basis(BasisSpec{2, 3, 5});
  std::ostringstream os;
  basis.write_manifest(os);
  std::size_t lines = 0;
  for (char c : os.str()) lines += c == '\n';
  CHECK(lines == 1 + (1 + 2 + 2 + 2) * 5);
  CHECK(basis.size() == 35);
}

TEST_CASE("nu pairing and constancy") {
  const auto one = [](const Point&) { return 1.0; };
  CHECK(nu_pair(0, 1, 0.5, one, 2) == doctest::Approx(1.0));
  CHECK(std::abs(nu_pair(3, 2, 0.5, one, 2)) < 1e-12);
  CHECK(std::abs(nu_pair(2, 4, 0.5, one, 3)) < 1e-12);

  const std::vector<double> radii{0.1, 0.3, 0.5, 0.7, 0.9};
  const auto quad = [](const Point& z) { return z(0) * z(0) - z(1) * z(1); };
  for (int j : {1, 2}) CHECK(check_constancy(2, j, quad, radii, 2) < 1e-10);
  CHECK(check_constancy(0, 1, one, radii, 3) < 1e-14);

  const auto cubic = [](const Point& z) { return solid_harmonic(3, 4, z); };
  for (double r : radii) CHECK(nu_pair(3, 4, r, cubic, 3) / std::pow(r, 3) == doctest::Approx(1.0).epsilon(1e-10));
  for (double r : radii) CHECK(std::abs(nu_pair(2, 1, r, cubic, 3)) < 1e-10);
}
