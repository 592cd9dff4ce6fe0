#include <doctest.h>

#include <cmath>
#include <memory>
#include <vector>

#include "gff/pair_k2.hpp"
#include "gff/rng.hpp"
#include "gff/sampler.hpp"
#include "gff/stats.hpp"

using namespace gff;

namespace {

std::vector<double> col(const Eigen::MatrixXd& m, Eigen::Index c) {
  return {m.col(c).data(), m.col(c).data() + m.rows()};
}

}  // namespace

TEST_CASE("seed lineage is deterministic and order free") {
  const auto model = std::make_shared<const SpectralModel>(BasisSpec{2, 4, 6});
  const FieldSample a = sample_field(model, 17, 3);
  const FieldSample b = sample_field(model, 17, 3);
  CHECK(a.xi == b.xi);
  CHECK(sample_field(model, 17, 4).xi != a.xi);
  CHECK(derive_seed(5, "x") == derive_seed(5, "x"));
  CHECK(derive_seed(5, "x") != derive_seed(5, "y"));

  const std::vector<LinearFunctional> fs{model->nu_functional(0, 1, 0.5)};
  const Eigen::MatrixXd batch = sample_pairings(*model, fs, 17, 6);
  const Eigen::MatrixXd tail = sample_pairings(*model, fs, 17, 3, 3);
  CHECK(batch(3, 0) == pair(a, fs[0]));
  CHECK(tail(0, 0) == batch(3, 0));
  CHECK(tail(2, 0) == batch(5, 0));
}

TEST_CASE("pairing with an eigenfunction recovers its coefficient") {
  const auto model = std::make_shared<const SpectralModel>(BasisSpec{2, 3, 4});
  const FieldSample f = sample_field(model, 1, 0);
  const std::size_t k = model->basis().index(2, 2, 3);
  LinearFunctional e = model->zero();
  std::vector<double> unit(model->size(), 0.0);
  unit[k] = 1.0;
  e = model->from_overlaps(unit);
  CHECK(pair(f, e) == doctest::Approx(model->mode_std(k) * f.xi[k]));
  CHECK(model->mode_std(k) ==
        doctest::Approx(std::sqrt(green_normalization(2) / model->basis().mode(k).lambda)).epsilon(1e-14));
}

TEST_CASE("mollifier variance matches K2") {
  const auto model = std::make_shared<const SpectralModel>(BasisSpec{2, 0, 300});
  const RadialMollifier eta(Point::Zero(2), 0.2);
  const LinearFunctional f = model->functional(eta);
  const double k2 = pair_k2(eta, eta, Ball::unit(2), K2Method::Quadrature);
  const Eigen::MatrixXd s = sample_pairings(*model, std::vector<LinearFunctional>{f}, 99, 100000);
  const Estimate v = variance_estimate(col(s, 0));
  CHECK(std::abs(v.value - k2) < 3.0 * v.stderr);
}

TEST_CASE("different replicas are uncorrelated") {
  const auto model = std::make_shared<const SpectralModel>(BasisSpec{2, 0, 100});
  const std::vector<LinearFunctional> fs{model->nu_functional(0, 1, 0.4)};
  const Eigen::MatrixXd s = sample_pairings(*model, fs, 5, 20000);
  const std::vector<double> x(s.col(0).data(), s.col(0).data() + 10000);
  const std::vector<double> y(s.col(0).data() + 10000, s.col(0).data() + 20000);
  const Estimate c = covariance_estimate(x, y);
  CHECK(std::abs(c.value) < 3.0 * c.stderr);
}

TEST_CASE("spherical average covariance") {
  CHECK(spherical_average_covariance(0.5, 0.5, 2) == doctest::Approx(0.6931472).epsilon(1e-7));
  CHECK(spherical_average_covariance(0.5, 0.5, 3) == doctest::Approx(1.0));
  CHECK(spherical_average_covariance(0.3, 0.6, 2) == doctest::Approx(-std::log(0.6)));
  CHECK(spherical_average_covariance(0.99, 0.99, 2) == doctest::Approx(0.01005034).epsilon(1e-6));

  const SphericalAverageSampler sampler(3, {0.5});
  const Eigen::MatrixXd s = sampler.sample(11, 100000);
  const Estimate v = variance_estimate(col(s, 0));
  CHECK(std::abs(v.value - 1.0) < 3.0 * v.stderr);
  CHECK_THROWS(SphericalAverageSampler(2, {0.5, 0.4}));
}

TEST_CASE("nu pairings decay towards the boundary") {
  const SpectralModel model(BasisSpec{2, 2, 200});
  CHECK(model.nu_functional(1, 1, 0.99).variance() < model.nu_functional(1, 1, 0.9).variance());
  CHECK(model.nu_functional(1, 1, 0.5).variance() == doctest::Approx(nu_covariance(1, 0.5, 0.5, 2) * 0.25).epsilon(2e-2));
}

TEST_CASE("covariance estimator") {
  const std::vector<double> c(10, 2.0);
  const Estimate zero = covariance_estimate(c, c);
  CHECK(zero.value == 0.0);
  CHECK(zero.stderr == 0.0);
  const std::vector<double> x{1.0, 2.0, 4.0, 7.0};
  CHECK(covariance_estimate(x, x).value == doctest::Approx(variance_estimate(x).value));

  ReplicaRng rng(123, 0);
  std::vector<double> a(100000);
  std::vector<double> b(100000);
  const double rho = 0.7;
  for (std::size_t k = 0; k < a.size(); ++k) {
    a[k] = rng.normal();
    b[k] = rho * a[k] + std::sqrt(1.0 - rho * rho) * rng.normal();
  }
  const Estimate e = covariance_estimate(a, b);
  CHECK(std::abs(e.value - rho) < 3.0 * e.stderr);
}
