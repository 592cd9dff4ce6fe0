#pragma once

namespace gff {

/// Ratios audited for the two- and four-point bounds at one coalescence
/// scale, around z = (1 - delta - 0.1) e1 in the unit ball:
///   k2:     |G(z, w)| / (1 + s(sep)), w = z + sep e2;
///   k4:     |k4|^4 / prod_i (1 + max_j s(|zi - zj|)^2) for the square
///           quadruple z +- sep e1, z +- sep e2;
///   circle: Var of the harmonic part on z + sep B at z, over 1 + s(sep).
/// Requires 0 < sep <= 0.1 and delta in (0, 0.8].
struct BoundRatios {
  double k2 = 0.0;
  double k4 = 0.0;
  double circle = 0.0;
};

BoundRatios coalescence_ratios(int dim, double delta, double sep);

}  // namespace gff
