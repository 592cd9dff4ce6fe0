#pragma once

#include <cstdint>
#include <vector>

#include "gff/geometry.hpp"

namespace gff {

struct WosOptions {
  /// Each jump lands on a sphere of this fraction of the distance to the
  /// region boundary.
  double step_fraction = 0.95;
  /// Walks stop within shell_fraction * outer radius of the boundary.
  double shell_fraction = 1e-4;
};

/// First-exit record of walk-on-spheres runs in carved ∩ outer.
struct WosResult {
  std::size_t walks = 0;
  /// Exits through the part of ∂carved inside outer.
  std::size_t carved_hits = 0;
  /// Exits through ∂outer.
  std::size_t outer_hits = 0;
  /// Unit direction, seen from the carved center, of each ∂carved exit, in
  /// walk order.
  std::vector<Point> carved_exits;
  double mean_steps = 0.0;
};

/// Walk-on-spheres estimate of the harmonic measure of carved ∩ outer seen
/// from `start`. Walk k draws from stream (seed, k), so the result does not
/// depend on the worker count.
WosResult wos_harmonic_measure(const Point& start, const Ball& outer, const Ball& carved, std::size_t n_walks,
                               std::uint64_t seed, const WosOptions& options = {});

/// Angular bin of a unit direction: the polar angle in d = 2, the azimuth
/// about the third axis in d = 3, split into `bins` equal arcs of [0, 2pi).
int angular_bin(const Point& direction, int bins);

std::vector<std::size_t> angular_histogram(const std::vector<Point>& directions, int bins);

/// Probability of each angular bin under the Poisson kernel of `ball` seen
/// from z, by Gauss-Legendre quadrature over each bin.
std::vector<double> poisson_bin_probabilities(const Ball& ball, const Point& z, int bins, int points = 64);

}  // namespace gff
