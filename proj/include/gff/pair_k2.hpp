#pragma once

#include <optional>
#include <string_view>

#include "gff/harmonics.hpp"
#include "gff/sampler.hpp"
#include "gff/test_functions.hpp"

namespace gff {

enum class K2Method { Spectral, Quadrature };

/// "spectral" or "quadrature"; anything else is a DomainError.
K2Method parse_k2_method(std::string_view name);

/// Resolution of the quadrature path; zero entries pick dimension defaults.
struct K2Quadrature {
  int outer_radial = 0;
  int outer_order = 0;
  int inner_radial = 0;
  int inner_order = 0;
};

struct K2Options {
  /// Truncation of the spectral path; the dimension default when unset.
  std::optional<BasisSpec> spec;
  OverlapOptions overlaps;
  K2Quadrature quadrature;
};

/// K2(f, g) = double integral of f(x) G(x, y) g(y) over the ball, G the
/// s-normalised Green's function of `ball`.
///
/// Spectral: sum over the truncated eigenbasis of c_d R^2 / lambda_k
/// <e_k, f> <e_k, g>.
/// Quadrature: G is split into its singular part, integrated in polar
/// coordinates about each outer node with a graded radial rule, and the
/// smooth image part, integrated by a product rule. Pairs that are both
/// radial about the ball center (bumps, uniform spheres) reduce to an
/// exact double radial integral.
///
/// Supports must lie in the closed ball. Sphere-sphere pairs are only
/// supported in the concentric radial case.
double pair_k2(const TestFunction& f, const TestFunction& g, const Ball& ball, K2Method method,
               const K2Options& options = {});

/// Average of G over x on the sphere |x - a| = r1 and y on |y - a| = r2,
/// a the ball center, by one-dimensional quadrature in the angle between
/// x and y (graded at zero when r1 = r2).
double double_sphere_green(const Ball& ball, double r1, double r2, int points = 400);

}  // namespace gff
