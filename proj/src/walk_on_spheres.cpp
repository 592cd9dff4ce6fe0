#include "gff/walk_on_spheres.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "gff/kernels.hpp"
#include "gff/parallel.hpp"
#include "gff/quadrature.hpp"
#include "gff/rng.hpp"

namespace gff {
namespace {

constexpr std::size_t kChunks = 64;
constexpr int kMaxSteps = 100000;

struct Exit {
  bool carved = false;
  Point direction;
  int steps = 0;
};

Exit run_walk(const Point& start, const Ball& outer, const Ball& carved, double shell, double step_fraction,
              ReplicaRng& rng) {
  const int d = outer.dim();
  Point x = start;
  Point u(d);
  for (int step = 0; step < kMaxSteps; ++step) {
    const double dc = carved.boundary_distance(x);
    const double dout = outer.boundary_distance(x);
    const double dist = std::min(dc, dout);
    if (dist < shell) {
      Exit e;
      e.steps = step;
      e.carved = dc <= dout;
      if (e.carved) {
        e.direction = x - carved.center();
        e.direction /= e.direction.norm();
      }
      return e;
    }
    double norm = 0.0;
    while (norm == 0.0) {
      for (int k = 0; k < d; ++k) u(k) = rng.normal();
      norm = u.norm();
    }
    x += (step_fraction * dist / norm) * u;
  }
  throw std::runtime_error("wos_harmonic_measure: walk did not terminate");
}

}  // namespace

WosResult wos_harmonic_measure(const Point& start, const Ball& outer, const Ball& carved, std::size_t n_walks,
                               std::uint64_t seed, const WosOptions& options) {
  if (n_walks == 0) throw DomainError("wos_harmonic_measure: need at least one walk");
  if (outer.dim() != carved.dim()) throw DomainError("wos_harmonic_measure: dimension mismatch");
  require_dim(start, outer.dim(), "wos_harmonic_measure");
  if (!outer.contains(start) || !carved.contains(start))
    throw DomainError("wos_harmonic_measure: start lies outside the region");
  if (!(options.step_fraction > 0.0 && options.step_fraction <= 1.0) || !(options.shell_fraction > 0.0))
    throw DomainError("wos_harmonic_measure: invalid options");

  const double shell = options.shell_fraction * outer.radius();
  std::vector<Exit> exits(n_walks);
  const std::size_t chunks = std::min(kChunks, n_walks);
  parallel_for(chunks, [&](std::size_t c) {
    for (std::size_t w = c; w < n_walks; w += chunks) {
      ReplicaRng rng(seed, w);
      exits[w] = run_walk(start, outer, carved, shell, options.step_fraction, rng);
    }
  });

  WosResult out;
  out.walks = n_walks;
  double steps = 0.0;
  for (Exit& e : exits) {
    steps += e.steps;
    if (e.carved) {
      ++out.carved_hits;
      out.carved_exits.push_back(std::move(e.direction));
    } else {
      ++out.outer_hits;
    }
  }
  out.mean_steps = steps / static_cast<double>(n_walks);
  return out;
}

int angular_bin(const Point& direction, int bins) {
  if (bins < 1) throw DomainError("angular_bin: need at least one bin");
  if (direction.size() < 2) throw DomainError("angular_bin: dimension must be at least 2");
  double t = std::atan2(direction(1), direction(0));
  if (t < 0.0) t += 2.0 * std::numbers::pi;
  const int b = static_cast<int>(t / (2.0 * std::numbers::pi) * bins);
  return std::clamp(b, 0, bins - 1);
}

std::vector<std::size_t> angular_histogram(const std::vector<Point>& directions, int bins) {
  std::vector<std::size_t> out(static_cast<std::size_t>(bins), 0);
  for (const Point& u : directions) ++out[angular_bin(u, bins)];
  return out;
}

std::vector<double> poisson_bin_probabilities(const Ball& ball, const Point& z, int bins, int points) {
  const int d = ball.dim();
  if (d != 2 && d != 3) throw DomainError("poisson_bin_probabilities: only d = 2 and d = 3 are supported");
  if (bins < 1) throw DomainError("poisson_bin_probabilities: need at least one bin");
  std::vector<double> out(static_cast<std::size_t>(bins), 0.0);
  const double width = 2.0 * std::numbers::pi / bins;
  const LineRule polar = gauss_legendre(points, -1.0, 1.0);
  for (int b = 0; b < bins; ++b) {
    const LineRule arc = gauss_legendre(points, b * width, (b + 1) * width);
    double sum = 0.0;
    for (std::size_t q = 0; q < arc.size(); ++q) {
      const double phi = arc.nodes[q];
      if (d == 2) {
        Point u(2);
        u << std::cos(phi), std::sin(phi);
        sum += arc.weights[q] / (2.0 * std::numbers::pi) * poisson_kernel(ball, z, ball.from_unit(u));
        continue;
      }
      for (std::size_t p = 0; p < polar.size(); ++p) {
        const double c = polar.nodes[p];
        const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
        Point u(3);
        u << s * std::cos(phi), s * std::sin(phi), c;
        sum += arc.weights[q] * polar.weights[p] / (4.0 * std::numbers::pi) *
               poisson_kernel(ball, z, ball.from_unit(u));
      }
    }
    out[b] = sum;
  }
  return out;
}

}  // namespace gff
