#include <doctest.h>

#include <cmath>
#include <memory>
#include <vector>

#include "gff/kernels.hpp"
#include "gff/markov.hpp"
#include "gff/sampler.hpp"
#include "gff/stats.hpp"
#include "gff/walk_on_spheres.hpp"

using namespace gff;

namespace {

Point pt(double x, double y) {
  Point p(2);
  p << x, y;
  return p;
}

}  // namespace

TEST_CASE("harmonic part at the centre of a concentric ball is the spherical average") {
  const auto model = std::make_shared<const SpectralModel>(BasisSpec{2, 6, 40});
  const FieldSample f = sample_field(model, 3, 0);
  const Ball half = Ball::centered(2, 0.5);
  CHECK(harmonic_part(f, half, pt(0.0, 0.0)) == doctest::Approx(pair_nu(f, 0, 1, 0.5)).epsilon(1e-12));
  CHECK_THROWS_AS(harmonic_part(f, half, pt(0.4999999, 0.0)), DomainError);
}

TEST_CASE("decomposition reconstructs the field") {
  const auto model = std::make_shared<const SpectralModel>(BasisSpec{2, 16, 24});
  const FieldSample f = sample_field(model, 8, 2);
  const Ball inner(2, pt(0.3, 0.0), 0.4);
  const RadialMollifier eta(pt(0.35, 0.05), 0.1);
  const double whole = pair(f, TestFunction(eta));
  const double sub = bulk_pairing(f, inner, eta);
  CHECK(whole == doctest::Approx(sub + harmonic_part(f, inner, eta.center())).epsilon(1e-12));
}

TEST_CASE("nested increments") {
  const auto model = std::make_shared<const SpectralModel>(BasisSpec{2, 0, 400});
  const Ball b = Ball::centered(2, 0.5);
  const LinearFunctional same = nested_increment(*model, b, b, pt(0.0, 0.0));
  CHECK(same.variance() == 0.0);
  const LinearFunctional inc = nested_increment(*model, Ball::centered(2, 0.25), b, pt(0.0, 0.0));
  CHECK(inc.variance() == doctest::Approx(std::log(2.0)).epsilon(2e-3));
}

TEST_CASE("normal quantiles and the Bonferroni gate") {
  CHECK(normal_quantile(0.975) == doctest::Approx(1.959963985).epsilon(1e-9));
  CHECK(normal_two_sided_p(1.959963985) == doctest::Approx(0.05).epsilon(1e-8));
  CHECK(bonferroni_threshold(1, 0.01) == doctest::Approx(3.0));
  CHECK(bonferroni_threshold(100, 0.01) == doctest::Approx(normal_quantile(1.0 - 0.01 / 200.0)).epsilon(1e-12));
}

TEST_CASE("chi-square goodness of fit") {
  const std::vector<std::size_t> flat(10, 100);
  const std::vector<double> p(10, 0.1);
  const ChiSquare c = chi_square_gof(flat, p);
  CHECK(c.statistic == doctest::Approx(0.0));
  CHECK(c.dof == 9);
  CHECK(c.p_value == doctest::Approx(1.0));
}

TEST_CASE("weighted regression recovers an exact line") {
  const std::vector<double> x{0.0, 1.0, 2.0, 3.0};
  const std::vector<double> y{1.0, 3.0, 5.0, 7.0};
  const std::vector<double> s(4, 1.0);
  const Regression r = weighted_regression(x, y, s);
  CHECK(r.slope == doctest::Approx(2.0));
  CHECK(r.intercept == doctest::Approx(1.0));
}

TEST_CASE("walk on spheres") {
  const Ball outer = Ball::unit(2);
  const Ball carved(2, pt(0.1, 0.0), 0.3);
  const WosResult a = wos_harmonic_measure(carved.center(), outer, carved, 2000, 4);
  CHECK(a.carved_hits == 2000);
  CHECK(a.outer_hits == 0);
  const WosResult b = wos_harmonic_measure(carved.center(), outer, carved, 2000, 4);
  CHECK(a.carved_exits.size() == b.carved_exits.size());
  CHECK((a.carved_exits.front() - b.carved_exits.front()).norm() == 0.0);

  const std::vector<double> probs = poisson_bin_probabilities(outer, pt(0.3, 0.2), 16);
  double total = 0.0;
  for (double q : probs) total += q;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
}
