#pragma once

#include <functional>
#include <variant>

#include "gff/geometry.hpp"

namespace gff {

/// Unit-mass bump C exp(-1 / (1 - |x-z|^2/eps^2)) supported in z + eps B.
class RadialMollifier {
 public:
  RadialMollifier(Point center, double eps);

  int dim() const { return static_cast<int>(center_.size()); }
  const Point& center() const { return center_; }
  double eps() const { return eps_; }
  Ball support() const { return Ball(dim(), center_, eps_); }

  double value(const Point& x) const { return profile((x - center_).norm()); }
  /// Density at distance rho from the center.
  double profile(double rho) const;

 private:
  Point center_;
  double eps_;
  double scale_;
};

/// Unit-mass smooth radial bump supported in the shell
/// {inner < |x - center| < outer}; its angular ratio is identically 1.
class AnnularBump {
 public:
  AnnularBump(Point center, double inner, double outer);

  int dim() const { return static_cast<int>(center_.size()); }
  const Point& center() const { return center_; }
  double inner() const { return inner_; }
  double outer() const { return outer_; }
  Ball support() const { return Ball(dim(), center_, outer_); }

  double value(const Point& x) const { return profile((x - center_).norm()); }
  double profile(double rho) const;

 private:
  Point center_;
  double inner_;
  double outer_;
  double scale_;
};

/// Arbitrary integrable function, zero outside `support`.
struct VolumeFunction {
  Ball support;
  std::function<double(const Point&)> fn;

  double value(const Point& x) const { return support.contains(x) ? fn(x) : 0.0; }
};

/// Measure on the sphere `sphere.boundary` with density `density(theta)`
/// against the uniform probability measure; theta is the unit direction
/// from the sphere center.
struct SphereMeasure {
  Ball sphere;
  std::function<double(const Point&)> density;
};

using TestFunction = std::variant<RadialMollifier, AnnularBump, VolumeFunction, SphereMeasure>;

int dim_of(const TestFunction& f);
Ball support_of(const TestFunction& f);
bool is_volume_function(const TestFunction& f);
/// Pointwise value of a volume test function; throws for surface measures.
double value_at(const TestFunction& f, const Point& x);

/// f restricted to `ball` (f times the indicator). Returns f itself when its
/// support lies inside the ball.
TestFunction restrict_to(const TestFunction& f, const Ball& ball);

/// Integral of exp(-1/(1-t^2)) t^(d-1) over [0,1].
double bump_moment(int d);

}  // namespace gff
