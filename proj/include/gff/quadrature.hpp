#pragma once

#include <iosfwd>
#include <vector>

#include "gff/geometry.hpp"

namespace gff {

/// One-dimensional rule: sum_k weights[k] f(nodes[k]) ~ integral of f.
struct LineRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

/// n-point Gauss-Legendre rule on [a, b].
LineRule gauss_legendre(int n, double a, double b);

/// Gauss-Legendre rule in t on [0, 1] pushed through x = a + (b - a) t^power.
/// Clusters nodes at `a`; used for integrands with an endpoint singularity
/// such as rho log rho.
LineRule graded_gauss_legendre(int n, double a, double b, int power);

/// Product rule on S^(d-1) (d = 2, 3) for the uniform probability measure.
/// A rule of a given order integrates every spherical harmonic of degree
/// up to 2*order + 1 exactly, so products psi_{n,j} psi_{n',j'} with
/// n, n' <= order integrate to the Kronecker delta.
class SphereRule {
 public:
  SphereRule(int dim, int order);

  int dim() const { return dim_; }
  int order() const { return order_; }
  std::size_t size() const { return weights_.size(); }
  const std::vector<Point>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }

  /// Smallest order whose rule integrates harmonics of `degree` exactly.
  static int order_for_degree(int degree) { return degree / 2 + 1; }

  /// One row per node: coordinates followed by the weight.
  void write_csv(std::ostream& os) const;

 private:
  int dim_;
  int order_;
  std::vector<Point> nodes_;
  std::vector<double> weights_;
};

/// Lebesgue-measure rule on a ball or a centered annulus, built as a radial
/// Gauss-Legendre rule times a SphereRule.
struct VolumeRule {
  std::vector<Point> nodes;
  std::vector<double> weights;

  std::size_t size() const { return weights.size(); }

  static VolumeRule ball(const Ball& ball, int radial_points, int sphere_order);
  /// Shell {inner_radius < |x - center| < outer_radius}.
  static VolumeRule shell(const Point& center, double inner_radius, double outer_radius,
                          int radial_points, int sphere_order);
};

}  // namespace gff
