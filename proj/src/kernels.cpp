#include "gff/kernels.hpp"

#include <cmath>

namespace gff {
namespace {

// |x| |y - x~| = sqrt(|x|^2 |y|^2 - 2 x.y + 1); symmetric and valid at x = 0.
double image_distance(const Point& x, const Point& y) {
  const double v = x.squaredNorm() * y.squaredNorm() - 2.0 * x.dot(y) + 1.0;
  return std::sqrt(std::max(v, 0.0));
}

void require_in_closed_unit_ball(const Point& x, const char* what) {
  if (x.norm() > 1.0 + 1e-12) throw DomainError(std::string(what) + ": point outside the closed ball");
}

double regularized_unit(const Point& xu, const Point& yu, int d) {
  const double q = image_distance(xu, yu);
  if (!(q > 0.0)) throw DomainError("green_regularized: both points on the boundary and coincident");
  return -scaling_s(q, d);
}

}  // namespace

double green_unit_ball(const Point& x, const Point& y, int d) {
  require_dim(x, d, "green_unit_ball");
  require_dim(y, d, "green_unit_ball");
  require_in_closed_unit_ball(x, "green_unit_ball");
  require_in_closed_unit_ball(y, "green_unit_ball");
  const double r = (x - y).norm();
  if (r < 1e-14) throw DomainError("green_unit_ball: coincident points");
  const double value = scaling_s(r, d) + regularized_unit(x, y, d);
  // Boundary points give exactly zero up to rounding; never report negative values.
  return std::max(value, 0.0);
}

double green_ball(const Point& x, const Point& y, const Ball& ball) {
  const int d = ball.dim();
  require_dim(x, d, "green_ball");
  require_dim(y, d, "green_ball");
  if ((x - y).norm() < 1e-14 * ball.radius()) throw DomainError("green_ball: coincident points");
  const double g = green_unit_ball(ball.to_unit(x), ball.to_unit(y), d);
  return d == 2 ? g : std::pow(ball.radius(), 2.0 - d) * g;
}

double green_singular(const Point& x, const Point& y, const Ball& ball) {
  const int d = ball.dim();
  const double r = (x - y).norm();
  if (r < 1e-14 * ball.radius()) throw DomainError("green_singular: coincident points");
  const double s = scaling_s(r / ball.radius(), d);
  return d == 2 ? s : std::pow(ball.radius(), 2.0 - d) * s;
}

double green_regularized(const Point& x, const Point& y, const Ball& ball) {
  const int d = ball.dim();
  require_dim(x, d, "green_regularized");
  require_dim(y, d, "green_regularized");
  const Point xu = ball.to_unit(x);
  const Point yu = ball.to_unit(y);
  require_in_closed_unit_ball(xu, "green_regularized");
  require_in_closed_unit_ball(yu, "green_regularized");
  const double g = regularized_unit(xu, yu, d);
  return d == 2 ? g : std::pow(ball.radius(), 2.0 - d) * g;
}

double harmonic_diff_kernel(const Point& x, const Point& y, const Ball& outer, const Ball& inner) {
  if (!outer.contains(inner)) throw DomainError("harmonic_diff_kernel: inner ball not contained in outer ball");
  if (!inner.contains_closed(x) || !inner.contains_closed(y))
    throw DomainError("harmonic_diff_kernel: points must lie in the inner ball");
  const int d = outer.dim();
  // The singular parts differ by a constant in d = 2 and cancel in d >= 3.
  const double singular_gap = d == 2 ? std::log(outer.radius() / inner.radius()) : 0.0;
  return singular_gap + green_regularized(x, y, outer) - green_regularized(x, y, inner);
}

double wick_g4(const std::array<Point, 4>& z, const Ball& ball) {
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if ((z[i] - z[j]).norm() < 1e-14 * ball.radius()) throw DomainError("wick_g4: coincident points");
  const auto g = [&](int i, int j) { return green_ball(z[i], z[j], ball); };
  return g(0, 1) * g(2, 3) + g(0, 2) * g(1, 3) + g(0, 3) * g(1, 2);
}

double poisson_kernel(const Ball& ball, const Point& z, const Point& theta) {
  const int d = ball.dim();
  require_dim(z, d, "poisson_kernel");
  require_dim(theta, d, "poisson_kernel");
  const double rr = ball.radius();
  const double dz = (z - ball.center()).norm();
  if (!(dz < rr)) throw DomainError("poisson_kernel: z must lie strictly inside the ball");
  const double dist = (z - theta).norm();
  return std::pow(rr, d - 2) * (rr * rr - dz * dz) / std::pow(dist, d);
}

double poisson_extension(const Ball& ball, const Point& z, const std::function<double(const Point&)>& boundary,
                         const SphereRule& rule) {
  if (rule.dim() != ball.dim()) throw DomainError("poisson_extension: rule dimension mismatch");
  double sum = 0.0;
  for (std::size_t k = 0; k < rule.size(); ++k) {
    const Point& u = rule.nodes()[k];
    sum += rule.weights()[k] * poisson_kernel(ball, z, ball.from_unit(u)) * boundary(u);
  }
  return sum;
}

}  // namespace gff
