#include "gff/test_functions.hpp"

#include <array>
#include <cmath>
#include <mutex>

#include "gff/quadrature.hpp"

namespace gff {
namespace {

double bump(double t) {
  const double u = 1.0 - t * t;
  return u > 0.0 ? std::exp(-1.0 / u) : 0.0;
}

constexpr int kMomentNodes = 400;

}  // namespace

double bump_moment(int d) {
  static std::mutex mutex;
  static std::array<double, 16> cache{};
  if (d < 1 || d >= static_cast<int>(cache.size())) throw DomainError("bump_moment: unsupported dimension");
  std::lock_guard lock(mutex);
  if (cache[d] == 0.0) {
    const LineRule rule = gauss_legendre(kMomentNodes, 0.0, 1.0);
    double sum = 0.0;
    for (std::size_t k = 0; k < rule.size(); ++k)
      sum += rule.weights[k] * bump(rule.nodes[k]) * std::pow(rule.nodes[k], d - 1);
    cache[d] = sum;
  }
  return cache[d];
}

RadialMollifier::RadialMollifier(Point center, double eps) : center_(std::move(center)), eps_(eps) {
  if (!(eps > 0.0)) throw DomainError("RadialMollifier: eps must be positive");
  const int d = dim();
  if (d < 2) throw DomainError("RadialMollifier: dimension must be at least 2");
  scale_ = 1.0 / (sphere_area(d) * std::pow(eps, d) * bump_moment(d));
}

double RadialMollifier::profile(double rho) const { return scale_ * bump(rho / eps_); }

AnnularBump::AnnularBump(Point center, double inner, double outer)
    : center_(std::move(center)), inner_(inner), outer_(outer) {
  if (!(inner >= 0.0 && outer > inner)) throw DomainError("AnnularBump: need 0 <= inner < outer");
  const int d = dim();
  const LineRule rule = gauss_legendre(kMomentNodes, inner, outer);
  double mass = 0.0;
  scale_ = 1.0;
  for (std::size_t k = 0; k < rule.size(); ++k)
    mass += rule.weights[k] * profile(rule.nodes[k]) * std::pow(rule.nodes[k], d - 1);
  scale_ = 1.0 / (mass * sphere_area(d));
}

double AnnularBump::profile(double rho) const {
  const double t = (2.0 * rho - inner_ - outer_) / (outer_ - inner_);
  return scale_ * bump(t);
}

int dim_of(const TestFunction& f) {
  return std::visit(
      [](const auto& g) -> int {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, VolumeFunction>)
          return g.support.dim();
        else if constexpr (std::is_same_v<T, SphereMeasure>)
          return g.sphere.dim();
        else
          return g.dim();
      },
      f);
}

Ball support_of(const TestFunction& f) {
  return std::visit(
      [](const auto& g) -> Ball {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, VolumeFunction>)
          return g.support;
        else if constexpr (std::is_same_v<T, SphereMeasure>)
          return g.sphere;
        else
          return g.support();
      },
      f);
}

bool is_volume_function(const TestFunction& f) { return !std::holds_alternative<SphereMeasure>(f); }

double value_at(const TestFunction& f, const Point& x) {
  return std::visit(
      [&](const auto& g) -> double {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, SphereMeasure>)
          throw DomainError("value_at: surface measures have no pointwise density");
        else
          return g.value(x);
      },
      f);
}

TestFunction restrict_to(const TestFunction& f, const Ball& ball) {
  const Ball support = support_of(f);
  if (ball.contains(support)) return f;
  if (!is_volume_function(f)) throw DomainError("restrict_to: cannot restrict a surface measure");
  if (ball.disjoint(support)) return VolumeFunction{ball, [](const Point&) { return 0.0; }};
  return VolumeFunction{ball, [f](const Point& x) { return value_at(f, x); }};
}

}  // namespace gff
