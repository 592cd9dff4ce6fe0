#pragma once

#include <array>
#include <functional>

#include "gff/geometry.hpp"
#include "gff/quadrature.hpp"

namespace gff {

// Closed-form kernels of the zero-boundary field on balls. All of them use
// the s-normalised Green's function, G^B(x,y) = s(|x-y|) - s(|x||y - x~|).

/// Green's function of the unit ball in dimension d. Points must lie in the
/// closed unit ball and be distinct; boundary points give 0.
double green_unit_ball(const Point& x, const Point& y, int d);

/// Green's function of a + rB: the unit-ball kernel at mapped points, times
/// r^(2-d) when d >= 3. Rejects |x - y| < 1e-14 r.
double green_ball(const Point& x, const Point& y, const Ball& ball);

/// The singular part r^(2-d) s(|x-y| / r) removed by green_regularized.
double green_singular(const Point& x, const Point& y, const Ball& ball);

/// green_ball minus its singular part: the smooth image term
/// -r^(2-d) s(|x_u| |y_u - x_u~|) at mapped points, finite on the diagonal.
double green_regularized(const Point& x, const Point& y, const Ball& ball);

/// H(x,y) = G^outer(x,y) - G^inner(x,y), the covariance of the harmonic part
/// of the domain Markov decomposition. Finite on the diagonal.
double harmonic_diff_kernel(const Point& x, const Point& y, const Ball& outer, const Ball& inner);

/// Wick sum G12 G34 + G13 G24 + G14 G23 for four distinct points.
double wick_g4(const std::array<Point, 4>& z, const Ball& ball);

/// Poisson kernel of `ball` at interior z and boundary point theta, as a
/// density against the uniform probability measure on the boundary sphere.
double poisson_kernel(const Ball& ball, const Point& z, const Point& theta);

/// Harmonic extension to z of boundary data b(theta), theta the unit
/// direction from the ball center, by quadrature of the Poisson kernel.
double poisson_extension(const Ball& ball, const Point& z, const std::function<double(const Point&)>& boundary,
                         const SphereRule& rule);

}  // namespace gff
