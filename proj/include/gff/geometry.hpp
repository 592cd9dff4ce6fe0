#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace gff {

/// Coordinates in R^d. The dimension is a runtime quantity (2 and 3 in
/// practice, kernels accept any d >= 2).
using Point = Eigen::VectorXd;

/// Raised when an argument lies outside the mathematical domain of an
/// operation (non-positive radius, coincident points, point outside a ball).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Open ball a + rB.
class Ball {
 public:
  Ball(int dim, Point center, double radius);

  static Ball unit(int dim);
  static Ball centered(int dim, double radius);

  int dim() const { return dim_; }
  const Point& center() const { return center_; }
  double radius() const { return radius_; }

  bool contains(const Point& x) const;         // open ball
  bool contains_closed(const Point& x) const;  // closed ball, with 1e-12 relative slack
  /// True when `inner` is a subset of the closure of this ball.
  bool contains(const Ball& inner) const;
  bool disjoint(const Ball& other) const;

  /// Distance from x to the boundary sphere, positive inside.
  double boundary_distance(const Point& x) const;

  /// x -> (x - a) / r
  Point to_unit(const Point& x) const { return (x - center_) / radius_; }
  /// u -> a + r u
  Point from_unit(const Point& u) const { return center_ + radius_ * u; }

 private:
  int dim_;
  Point center_;
  double radius_;
};

/// (r, theta_bar) = (|z|, z/|z|).
struct PolarPoint {
  double r = 0.0;
  Point theta_bar;

  /// For z = 0 the direction is the first coordinate axis.
  static PolarPoint from_cartesian(const Point& z);
  Point to_cartesian() const { return r * theta_bar; }
};

/// -log r in d = 2, r^(2-d) in d >= 3.
double scaling_s(double r, int d);

/// x / |x|^2, the inversion of x in the unit sphere.
Point image_point(const Point& x);

/// Surface area of the unit sphere S^(d-1).
double sphere_area(int d);

/// The kernels use G^B(x,y) = s(|x-y|) - s(|x||y - x~|), which is
/// green_normalization(d) times the inverse of -Laplacian with Dirichlet
/// conditions (2 pi in d = 2, (d-2)|S^(d-1)| in d >= 3).
double green_normalization(int d);

void require_dim(const Point& x, int dim, const char* what);

}  // namespace gff
