#include "gff/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

#include <boost/math/special_functions/legendre.hpp>

namespace gff {

LineRule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw DomainError("gauss_legendre: need at least one node");
  // Boost returns the non-negative zeros of P_n in increasing order.
  const std::vector<double> zeros = boost::math::legendre_p_zeros<double>(n);
  std::vector<double> x;
  std::vector<double> w;
  x.reserve(n);
  w.reserve(n);
  for (double z : zeros) {
    const double dp = boost::math::legendre_p_prime(n, z);
    const double weight = 2.0 / ((1.0 - z * z) * dp * dp);
    if (z == 0.0) {
      x.push_back(0.0);
      w.push_back(weight);
    } else {
      x.push_back(z);
      w.push_back(weight);
      x.push_back(-z);
      w.push_back(weight);
    }
  }
  LineRule rule;
  rule.nodes.resize(x.size());
  rule.weights.resize(x.size());
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  for (std::size_t k = 0; k < x.size(); ++k) {
    rule.nodes[k] = mid + half * x[k];
    rule.weights[k] = half * w[k];
  }
  return rule;
}

LineRule graded_gauss_legendre(int n, double a, double b, int power) {
  if (power < 1) throw DomainError("graded_gauss_legendre: power must be positive");
  LineRule base = gauss_legendre(n, 0.0, 1.0);
  LineRule rule;
  rule.nodes.resize(base.size());
  rule.weights.resize(base.size());
  for (std::size_t k = 0; k < base.size(); ++k) {
    const double t = base.nodes[k];
    rule.nodes[k] = a + (b - a) * std::pow(t, power);
    rule.weights[k] = base.weights[k] * (b - a) * power * std::pow(t, power - 1);
  }
  return rule;
}

SphereRule::SphereRule(int dim, int order) : dim_(dim), order_(order) {
  if (order < 0) throw DomainError("SphereRule: order must be non-negative");
  const int m = 2 * order + 2;  // trapezoid in the azimuth, exact up to degree m - 1
  if (dim == 2) {
    nodes_.reserve(m);
    for (int k = 0; k < m; ++k) {
      const double t = 2.0 * std::numbers::pi * k / m;
      Point p(2);
      p << std::cos(t), std::sin(t);
      nodes_.push_back(p);
      weights_.push_back(1.0 / m);
    }
  } else if (dim == 3) {
    const LineRule polar = gauss_legendre(order + 1, -1.0, 1.0);
    nodes_.reserve(polar.size() * m);
    for (std::size_t a = 0; a < polar.size(); ++a) {
      const double c = polar.nodes[a];
      const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
      for (int k = 0; k < m; ++k) {
        const double t = 2.0 * std::numbers::pi * k / m;
        Point p(3);
        p << s * std::cos(t), s * std::sin(t), c;
        nodes_.push_back(p);
        weights_.push_back(0.5 * polar.weights[a] / m);
      }
    }
  } else {
    throw DomainError("SphereRule: only d = 2 and d = 3 are supported");
  }
}

void SphereRule::write_csv(std::ostream& os) const {
  os << (dim_ == 2 ? "x,y,weight\n" : "x,y,z,weight\n");
  os.precision(17);
  for (std::size_t k = 0; k < nodes_.size(); ++k) {
    for (int c = 0; c < dim_; ++c) os << nodes_[k](c) << ',';
    os << weights_[k] << '\n';
  }
}

VolumeRule VolumeRule::ball(const Ball& ball, int radial_points, int sphere_order) {
  return shell(ball.center(), 0.0, ball.radius(), radial_points, sphere_order);
}

VolumeRule VolumeRule::shell(const Point& center, double inner_radius, double outer_radius,
                             int radial_points, int sphere_order) {
  const int d = static_cast<int>(center.size());
  if (!(outer_radius > inner_radius) || inner_radius < 0.0)
    throw DomainError("VolumeRule::shell: need 0 <= inner < outer");
  const SphereRule sphere(d, sphere_order);
  const LineRule radial = gauss_legendre(radial_points, inner_radius, outer_radius);
  const double area = sphere_area(d);
  VolumeRule rule;
  rule.nodes.reserve(radial.size() * sphere.size());
  rule.weights.reserve(radial.size() * sphere.size());
  for (std::size_t a = 0; a < radial.size(); ++a) {
    const double rho = radial.nodes[a];
    const double wr = radial.weights[a] * std::pow(rho, d - 1) * area;
    for (std::size_t k = 0; k < sphere.size(); ++k) {
      rule.nodes.push_back(center + rho * sphere.nodes()[k]);
      rule.weights.push_back(wr * sphere.weights()[k]);
    }
  }
  return rule;
}

}  // namespace gff
