#include <algorithm>
#include <cmath>
#include <limits>

#include "common.hpp"
#include "gff/pair_k2.hpp"

namespace gff {

std::vector<StatReport> suite_zero_boundary(const SuiteContext& ctx) {
  detail::Reporter rep(ctx, "zero_boundary", "zero boundary condition");
  const int d = ctx.dim;
  const std::string dl = detail::dim_label(d);
  const Ball unit = Ball::unit(d);

  // Var[h_r(0)] = s(r) - s(1) on the grid.
  const std::vector<double> grid{0.5, 0.9, 0.99, 0.999};
  std::vector<double> var;
  for (double r : grid) var.push_back(spherical_average_covariance(r, r, d));
  double rise = -std::numeric_limits<double>::infinity();
  double rises = 0.0;
  for (std::size_t k = 1; k < var.size(); ++k) {
    rise = std::max(rise, var[k] - var[k - 1]);
    if (!(var[k] < var[k - 1])) rises += 1.0;
  }
  rep.add(deterministic(rep.header(dl + "/analytic_monotone", "exact", 0, "spherical averages vanish at the boundary"),
                        dl + "/analytic_monotone", "Var[h_r(0)] strictly decreasing on r = 0.5, 0.9, 0.99, 0.999",
                        rise, 0.0, rises, 0.0, "estimate is the largest step; residual counts non-decreasing steps"));
  const double decay = var.back() / var.front();
  rep.add(deterministic(rep.header(dl + "/analytic_decay", "exact", 0, "spherical averages vanish at the boundary"),
                        dl + "/analytic_decay", "Var[h_0.999(0)] / Var[h_0.5(0)] below 0.02", decay, 0.0, decay,
                        ctx.tolerance("zero_boundary.decay", 0.02)));

  double oracle = 0.0;
  for (double r : grid)
    oracle = std::max(oracle, std::abs(double_sphere_green(unit, r, r) - spherical_average_covariance(r, r, d)));
  rep.add(deterministic(rep.header(dl + "/oracle", "quadrature", 0), dl + "/oracle",
                        "double-sphere quadrature of G matches s(r) - s(1) on the grid", oracle, 0.0, oracle,
                        ctx.tolerance("zero_boundary.oracle", 1e-6)));

  {
    const SphericalAverageSampler sampler(d, {0.99});
    const std::size_t n = ctx.replicas;
    const Eigen::MatrixXd s = sampler.sample(rep.seed(dl + "/variance_0.99"), n);
    const Estimate v = variance_estimate(detail::column(s, 0));
    rep.add(statistical(rep.header(dl + "/variance_0.99", "exact", n), dl + "/variance_0.99",
                        "MC Var[h_0.99(0)] = s(0.99) - s(1)", v.value, v.stderr, var[2], 3.0,
                        "exact Gaussian sampler of the spherical averages"));
  }

  // Unit-mass radial bumps on the shells 1 - 2^-n < |x| < 1 - 2^-(n+1):
  // bounded mass and angular ratio, support approaching the boundary.
  const int first = 2;
  const int monotone_last = 6;
  const int last = 10;
  std::vector<double> k2;
  for (int n = first; n <= last; ++n) {
    const AnnularBump f(Point::Zero(d), 1.0 - std::ldexp(1.0, -n), 1.0 - std::ldexp(1.0, -n - 1));
    k2.push_back(pair_k2(f, f, unit, K2Method::Quadrature));
  }
  double max_ratio = 0.0;
  double violations = 0.0;
  std::string values;
  for (std::size_t k = 0; k < k2.size(); ++k) {
    values += (values.empty() ? "" : ", ") + detail::fmt(k2[k], 6);
    if (k == 0 || first + static_cast<int>(k) > monotone_last) continue;
    max_ratio = std::max(max_ratio, k2[k] / k2[k - 1]);
    if (!(k2[k] < k2[k - 1])) violations += 1.0;
  }
  rep.add(deterministic(rep.header(dl + "/annular_monotone", "radial quadrature", 0, "K2(f_n, f_n) tends to 0"),
                        dl + "/annular_monotone", "K2(f_n, f_n) strictly decreasing for n = 2..6", max_ratio, 0.0,
                        violations, 0.0, "estimate is the largest ratio K2(f_n+1) / K2(f_n); K2 for n = 2..10: " + values));
  const double shrink = k2.back() / k2.front();
  rep.add(deterministic(rep.header(dl + "/annular_limit", "radial quadrature", 0, "K2(f_n, f_n) tends to 0"),
                        dl + "/annular_limit", "K2(f_10, f_10) / K2(f_2, f_2) below 1e-2", shrink, 0.0, shrink,
                        ctx.tolerance("zero_boundary.ratio", 1e-2)));

  {
    const BasisSpec spec{d, 0, 1000};
    double worst = 0.0;
    for (int n = first; n <= monotone_last; ++n) {
      const AnnularBump f(Point::Zero(d), 1.0 - std::ldexp(1.0, -n), 1.0 - std::ldexp(1.0, -n - 1));
      const double s = pair_k2(f, f, unit, K2Method::Spectral, K2Options{spec, {}, {}});
      worst = std::max(worst, std::abs(s / k2[static_cast<std::size_t>(n - first)] - 1.0));
    }
    rep.add(deterministic(rep.header(dl + "/annular_spectral", detail::truncation_label(spec), 0),
                          dl + "/annular_spectral", "spectral K2(f_n, f_n) matches radial quadrature for n = 2..6",
                          worst, 0.0, worst, 1e-3));
  }
  return std::move(rep.reports());
}

}  // namespace gff
