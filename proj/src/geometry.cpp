#include "gff/geometry.hpp"

#include <cmath>
#include <numbers>

namespace gff {

Ball::Ball(int dim, Point center, double radius)
    : dim_(dim), center_(std::move(center)), radius_(radius) {
  if (dim < 2) throw DomainError("Ball: dimension must be at least 2");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw DomainError("Ball: radius must be positive");
  if (center_.size() != dim) throw DomainError("Ball: center has wrong number of coordinates");
}

Ball Ball::unit(int dim) { return Ball(dim, Point::Zero(dim), 1.0); }

Ball Ball::centered(int dim, double radius) { return Ball(dim, Point::Zero(dim), radius); }

bool Ball::contains(const Point& x) const {
  require_dim(x, dim_, "Ball::contains");
  return (x - center_).norm() < radius_;
}

bool Ball::contains_closed(const Point& x) const {
  require_dim(x, dim_, "Ball::contains_closed");
  return (x - center_).norm() <= radius_ * (1.0 + 1e-12);
}

bool Ball::contains(const Ball& inner) const {
  if (inner.dim() != dim_) return false;
  return (inner.center() - center_).norm() + inner.radius() <= radius_ * (1.0 + 1e-12);
}

bool Ball::disjoint(const Ball& other) const {
  return (other.center() - center_).norm() >= radius_ + other.radius();
}

double Ball::boundary_distance(const Point& x) const { return radius_ - (x - center_).norm(); }

PolarPoint PolarPoint::from_cartesian(const Point& z) {
  PolarPoint p;
  p.r = z.norm();
  if (p.r > 0.0) {
    p.theta_bar = z / p.r;
  } else {
    p.theta_bar = Point::Zero(z.size());
    p.theta_bar(0) = 1.0;
  }
  return p;
}

double scaling_s(double r, int d) {
  if (d < 2) throw DomainError("scaling_s: dimension must be at least 2");
  if (!(r > 0.0)) throw DomainError("scaling_s: radius must be positive");
  if (d == 2) return -std::log(r);
  if (d == 3) return 1.0 / r;
  return std::pow(r, 2.0 - d);
}

Point image_point(const Point& x) {
  const double n2 = x.squaredNorm();
  if (n2 == 0.0) throw DomainError("image_point: the origin has no image");
  return x / n2;
}

double sphere_area(int d) {
  return 2.0 * std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d);
}

double green_normalization(int d) {
  if (d == 2) return 2.0 * std::numbers::pi;
  return (d - 2) * sphere_area(d);
}

void require_dim(const Point& x, int dim, const char* what) {
  if (x.size() != dim)
    throw DomainError(std::string(what) + ": point has " + std::to_string(x.size()) +
                      " coordinates, expected " + std::to_string(dim));
}

}  // namespace gff
