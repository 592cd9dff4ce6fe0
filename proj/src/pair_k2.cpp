#include "gff/pair_k2.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "gff/kernels.hpp"
#include "gff/parallel.hpp"
#include "gff/quadrature.hpp"

namespace gff {
namespace {

constexpr std::size_t kChunks = 16;
constexpr int kRadialPoints = 160;

K2Quadrature resolved(const K2Quadrature& q, int d) {
  K2Quadrature out = q;
  const bool two = d == 2;
  if (out.outer_radial <= 0) out.outer_radial = two ? 32 : 20;
  if (out.outer_order <= 0) out.outer_order = two ? 24 : 10;
  if (out.inner_radial <= 0) out.inner_radial = two ? 48 : 28;
  if (out.inner_order <= 0) out.inner_order = two ? 48 : 14;
  return out;
}

// Measure radial about the ball center: either an absolutely continuous
// radial density on [lo, hi] or mass `mass` on the sphere of radius lo.
struct RadialMeasure {
  bool atom = false;
  double lo = 0.0;
  double hi = 0.0;
  double mass = 0.0;
  std::function<double(double)> profile;
};

std::optional<RadialMeasure> concentric_radial(const TestFunction& f, const Ball& ball) {
  const double tol = 1e-14 * ball.radius();
  if (const auto* m = std::get_if<RadialMollifier>(&f)) {
    if ((m->center() - ball.center()).norm() > tol) return std::nullopt;
    return RadialMeasure{false, 0.0, m->eps(), 0.0, [m](double r) { return m->profile(r); }};
  }
  if (const auto* a = std::get_if<AnnularBump>(&f)) {
    if ((a->center() - ball.center()).norm() > tol) return std::nullopt;
    return RadialMeasure{false, a->inner(), a->outer(), 0.0, [a](double r) { return a->profile(r); }};
  }
  if (const auto* s = std::get_if<SphereMeasure>(&f)) {
    if (s->density || (s->sphere.center() - ball.center()).norm() > tol) return std::nullopt;
    return RadialMeasure{true, s->sphere.radius(), s->sphere.radius(), 1.0, {}};
  }
  return std::nullopt;
}

// k(t) = spherical mean of G over two concentric spheres whose larger
// radius is t.
double radial_kernel(double t, const Ball& ball) {
  const int d = ball.dim();
  const double R = ball.radius();
  return std::pow(R, 2.0 - d) * (scaling_s(t / R, d) - scaling_s(1.0, d));
}

// Integral of k(max(rho, rho')) dm_g(rho').
double radial_potential(double rho, const RadialMeasure& g, const Ball& ball) {
  if (g.atom) return g.mass * radial_kernel(std::max(rho, g.lo), ball);
  const int d = ball.dim();
  const double area = sphere_area(d);
  double below = 0.0;
  if (rho > g.lo) {
    const LineRule rule = gauss_legendre(kRadialPoints, g.lo, std::min(rho, g.hi));
    for (std::size_t q = 0; q < rule.size(); ++q)
      below += rule.weights[q] * g.profile(rule.nodes[q]) * area * std::pow(rule.nodes[q], d - 1);
  }
  double above = 0.0;
  if (rho < g.hi) {
    const LineRule rule = gauss_legendre(kRadialPoints, std::max(rho, g.lo), g.hi);
    for (std::size_t q = 0; q < rule.size(); ++q)
      above += rule.weights[q] * g.profile(rule.nodes[q]) * area * std::pow(rule.nodes[q], d - 1) *
               radial_kernel(rule.nodes[q], ball);
  }
  return below * radial_kernel(std::max(rho, g.lo), ball) + above;
}

double radial_k2(const RadialMeasure& f, const RadialMeasure& g, const Ball& ball) {
  if (f.atom) return f.mass * radial_potential(f.lo, g, ball);
  const int d = ball.dim();
  const LineRule rule = gauss_legendre(kRadialPoints, f.lo, f.hi);
  double sum = 0.0;
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const double rho = rule.nodes[q];
    sum += rule.weights[q] * f.profile(rho) * sphere_area(d) * std::pow(rho, d - 1) * radial_potential(rho, g, ball);
  }
  return sum;
}

struct WeightedNodes {
  std::vector<Point> nodes;
  std::vector<double> weights;
};

WeightedNodes discretise(const TestFunction& f, int radial, int order) {
  WeightedNodes out;
  if (const auto* s = std::get_if<SphereMeasure>(&f)) {
    const SphereRule rule(s->sphere.dim(), order);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      out.nodes.push_back(s->sphere.from_unit(rule.nodes()[q]));
      out.weights.push_back(rule.weights()[q] * (s->density ? s->density(rule.nodes()[q]) : 1.0));
    }
    return out;
  }
  VolumeRule rule;
  if (const auto* a = std::get_if<AnnularBump>(&f))
    rule = VolumeRule::shell(a->center(), a->inner(), a->outer(), radial, order);
  else
    rule = VolumeRule::ball(support_of(f), radial, order);
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const double w = rule.weights[q] * value_at(f, rule.nodes[q]);
    if (w == 0.0) continue;
    out.nodes.push_back(rule.nodes[q]);
    out.weights.push_back(w);
  }
  return out;
}

// Pointwise density of a volume test function; radial bumps are evaluated
// from the distance to their center without allocating.
class Density {
 public:
  explicit Density(const TestFunction& g) : g_(g) {
    mollifier_ = std::get_if<RadialMollifier>(&g);
    annulus_ = std::get_if<AnnularBump>(&g);
  }

  bool radial() const { return mollifier_ || annulus_; }
  double radial_value(double rho) const { return mollifier_ ? mollifier_->profile(rho) : annulus_->profile(rho); }
  double operator()(const Point& y) const { return value_at(g_, y); }

 private:
  const TestFunction& g_;
  const RadialMollifier* mollifier_ = nullptr;
  const AnnularBump* annulus_ = nullptr;
};

struct RayRules {
  LineRule graded;  // on [0, 1], clustered at 0
  LineRule plain;   // on [0, 1]
  SphereRule sphere;
  LineRule cap;     // on [0, 1], mapped to polar angles of a cap
  int azimuths;
};

// Integral over the support ball of g of g(y) s(|y - x| / R) R^(2-d), in
// polar coordinates about x. Rays run from x through the support: a full
// sphere of directions when x lies inside it, a cap otherwise.
double singular_potential(const Point& x, const TestFunction& g, const Density& density, const Ball& ball,
                          const RayRules& rules) {
  const int d = ball.dim();
  const Ball supp = support_of(g);
  const Point offset = x - supp.center();
  const double dist = offset.norm();
  const double rg = supp.radius();
  const double R = ball.radius();
  const double kernel_scale = std::pow(R, 2.0 - d);

  const auto line = [&](const Point& theta, double lo, double hi, const LineRule& unit) {
    const double proj = offset.dot(theta);
    double sum = 0.0;
    for (std::size_t q = 0; q < unit.size(); ++q) {
      const double rho = lo + (hi - lo) * unit.nodes[q];
      if (rho <= 0.0) continue;
      // The support center of a radial bump is its own center.
      const double value =
          density.radial() ? density.radial_value(std::sqrt(std::max(0.0, dist * dist + 2.0 * rho * proj + rho * rho)))
                           : density(x + rho * theta);
      if (value == 0.0) continue;
      sum += (hi - lo) * unit.weights[q] * std::pow(rho, d - 1) * scaling_s(rho / R, d) * value;
    }
    return sum;
  };
  const auto exit_distance = [&](const Point& theta) {
    const double b = offset.dot(theta);
    return -b + std::sqrt(std::max(0.0, b * b + rg * rg - dist * dist));
  };

  double total = 0.0;
  if (dist < rg) {
    const double area = sphere_area(d);
    for (std::size_t k = 0; k < rules.sphere.size(); ++k) {
      const Point& theta = rules.sphere.nodes()[k];
      total += rules.sphere.weights()[k] * area * line(theta, 0.0, exit_distance(theta), rules.graded);
    }
    return kernel_scale * total;
  }

  // Directions within angle beta of the axis from x to the support center.
  const double beta = std::asin(std::min(1.0, rg / dist));
  const Point axis = -offset / dist;
  Point ortho1 = Point::Zero(d);
  ortho1(std::abs(axis(0)) < 0.9 ? 0 : 1) = 1.0;
  ortho1 -= ortho1.dot(axis) * axis;
  ortho1.normalize();
  Point ortho2;
  if (d == 3) {
    ortho2 = Point(3);
    ortho2 << axis(1) * ortho1(2) - axis(2) * ortho1(1), axis(2) * ortho1(0) - axis(0) * ortho1(2),
        axis(0) * ortho1(1) - axis(1) * ortho1(0);
  }
  for (std::size_t q = 0; q < rules.cap.size(); ++q) {
    const double gamma = beta * rules.cap.nodes[q];
    const double half_chord = std::sqrt(std::max(0.0, rg * rg - dist * dist * std::sin(gamma) * std::sin(gamma)));
    const double mid = dist * std::cos(gamma);
    const double lo = std::max(0.0, mid - half_chord);
    const double hi = mid + half_chord;
    const double w_gamma = beta * rules.cap.weights[q];
    if (d == 2) {
      for (double sign : {-1.0, 1.0}) {
        const Point theta = std::cos(gamma) * axis + sign * std::sin(gamma) * ortho1;
        total += w_gamma * line(theta, lo, hi, rules.plain);
      }
      continue;
    }
    const double step = 2.0 * std::numbers::pi / rules.azimuths;
    for (int a = 0; a < rules.azimuths; ++a) {
      const double phi = (a + 0.5) * step;
      const Point theta =
          std::cos(gamma) * axis + std::sin(gamma) * (std::cos(phi) * ortho1 + std::sin(phi) * ortho2);
      total += w_gamma * std::sin(gamma) * step * line(theta, lo, hi, rules.plain);
    }
  }
  return kernel_scale * total;
}

// Smooth image part: sum over node pairs of w_a w_b G_reg(x_a, y_b).
double regular_part(const WeightedNodes& outer, const WeightedNodes& inner, const Ball& ball) {
  const int d = ball.dim();
  const auto m = static_cast<Eigen::Index>(inner.nodes.size());
  Eigen::MatrixXd y(d, m);
  Eigen::VectorXd y2(m);
  Eigen::VectorXd wy(m);
  for (Eigen::Index b = 0; b < m; ++b) {
    y.col(b) = ball.to_unit(inner.nodes[b]);
    y2(b) = y.col(b).squaredNorm();
    wy(b) = inner.weights[b];
  }
  const double scale = std::pow(ball.radius(), 2.0 - d);
  const std::size_t chunks = std::min(kChunks, std::max<std::size_t>(outer.nodes.size(), 1));
  std::vector<double> partial(chunks, 0.0);
  parallel_for(chunks, [&](std::size_t c) {
    Eigen::VectorXd dots(m);
    double acc = 0.0;
    for (std::size_t a = c; a < outer.nodes.size(); a += chunks) {
      const Eigen::VectorXd x = ball.to_unit(outer.nodes[a]);
      const double x2 = x.squaredNorm();
      dots.noalias() = y.transpose() * x;
      double row = 0.0;
      for (Eigen::Index b = 0; b < m; ++b) {
        // |x||y - x~| = sqrt(|x|^2 |y|^2 - 2 x.y + 1)
        const double t = std::sqrt(std::max(x2 * y2(b) - 2.0 * dots(b) + 1.0, 1e-300));
        row -= wy(b) * scaling_s(t, d);
      }
      acc += outer.weights[a] * row;
    }
    partial[c] = acc;
  });
  double sum = 0.0;
  for (double p : partial) sum += p;
  return scale * sum;
}

double quadrature_k2(const TestFunction& f_in, const TestFunction& g_in, const Ball& ball, const K2Quadrature& q) {
  const TestFunction* f = &f_in;
  const TestFunction* g = &g_in;
  if (!is_volume_function(*g)) std::swap(f, g);
  if (!is_volume_function(*g))
    throw DomainError("pair_k2: quadrature of two surface measures is only supported for concentric spheres");

  const WeightedNodes outer = discretise(*f, q.outer_radial, q.outer_order);
  const WeightedNodes inner = discretise(*g, q.outer_radial, q.outer_order);
  const int d = ball.dim();
  const RayRules rules{graded_gauss_legendre(q.inner_radial, 0.0, 1.0, d == 2 ? 2 : 1),
                       gauss_legendre(q.inner_radial, 0.0, 1.0), SphereRule(d, q.inner_order),
                       gauss_legendre(d == 2 ? 2 * q.inner_order : q.inner_order, 0.0, 1.0),
                       2 * q.inner_order + 2};
  const Density density(*g);

  const std::size_t chunks = std::min(kChunks, std::max<std::size_t>(outer.nodes.size(), 1));
  std::vector<double> partial(chunks, 0.0);
  parallel_for(chunks, [&](std::size_t c) {
    double acc = 0.0;
    for (std::size_t a = c; a < outer.nodes.size(); a += chunks)
      acc += outer.weights[a] * singular_potential(outer.nodes[a], *g, density, ball, rules);
    partial[c] = acc;
  });
  double sum = regular_part(outer, inner, ball);
  for (double p : partial) sum += p;
  return sum;
}

}  // namespace

K2Method parse_k2_method(std::string_view name) {
  if (name == "spectral") return K2Method::Spectral;
  if (name == "quadrature") return K2Method::Quadrature;
  throw DomainError("pair_k2: unsupported method '" + std::string(name) + "'");
}

double pair_k2(const TestFunction& f, const TestFunction& g, const Ball& ball, K2Method method,
               const K2Options& options) {
  const int d = ball.dim();
  if (dim_of(f) != d || dim_of(g) != d) throw DomainError("pair_k2: dimension mismatch");
  if (!ball.contains(support_of(f)) || !ball.contains(support_of(g)))
    throw DomainError("pair_k2: test function support leaks outside the ball");

  if (method == K2Method::Spectral) {
    const BasisSpec spec = options.spec.value_or(default_basis_spec(d));
    if (spec.dim != d) throw DomainError("pair_k2: truncation dimension mismatch");
    const SpectralModel model(spec, ball);
    const LinearFunctional a = model.functional(f, options.overlaps);
    const LinearFunctional b = model.functional(g, options.overlaps);
    return a.covariance(b);
  }

  const auto rf = concentric_radial(f, ball);
  const auto rg = concentric_radial(g, ball);
  if (rf && rg) return radial_k2(*rf, *rg, ball);
  return quadrature_k2(f, g, ball, resolved(options.quadrature, d));
}

double double_sphere_green(const Ball& ball, double r1, double r2, int points) {
  const int d = ball.dim();
  const double R = ball.radius();
  if (!(r1 > 0.0 && r2 > 0.0 && r1 < R && r2 < R))
    throw DomainError("double_sphere_green: radii must lie in (0, R)");
  if (points < 2) throw DomainError("double_sphere_green: need at least two points");
  const LineRule rule = r1 == r2 ? graded_gauss_legendre(points, 0.0, std::numbers::pi, 3)
                                 : gauss_legendre(points, 0.0, std::numbers::pi);
  // Density of the angle between two uniform directions on S^(d-1).
  const double norm = std::tgamma(0.5 * d) / (std::sqrt(std::numbers::pi) * std::tgamma(0.5 * (d - 1)));
  Point x = Point::Zero(d);
  x(0) = r1;
  x += ball.center();
  double sum = 0.0;
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const double gamma = rule.nodes[q];
    Point y = Point::Zero(d);
    y(0) = r2 * std::cos(gamma);
    y(1) = r2 * std::sin(gamma);
    y += ball.center();
    // Chord length in a form that stays accurate as gamma -> 0.
    const double chord = r1 == r2 ? 2.0 * r1 * std::sin(0.5 * gamma)
                                  : std::sqrt(std::max(0.0, (r1 - r2) * (r1 - r2) +
                                                                4.0 * r1 * r2 * std::pow(std::sin(0.5 * gamma), 2)));
    const double g = std::pow(R, 2 - d) * scaling_s(chord / R, d) + green_regularized(x, y, ball);
    sum += rule.weights[q] * norm * std::pow(std::sin(gamma), d - 2) * g;
  }
  return sum;
}

}  // namespace gff
