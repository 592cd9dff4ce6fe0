#include <cmath>

#include "common.hpp"
#include "gff/pair_k2.hpp"

namespace gff {
namespace {

// Smooth, non-radial test function on the unit ball.
double profile(const Point& u) {
  const Point c = detail::planar(static_cast<int>(u.size()), 0.1, 0.2);
  const double t = (u - c).squaredNorm() / 0.25;
  if (t >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - t)) * (1.0 + u(0) - 0.5 * u(1));
}

}  // namespace

std::vector<StatReport> suite_scaling(const SuiteContext& ctx) {
  detail::Reporter rep(ctx, "scaling", "pairings on a + rB scale by r^(1 + d/2)");
  const double r = 0.5;
  const double tol = ctx.tolerance("scaling.kernel", 1e-10);

  for (int d : {2, 3}) {
    const std::string dl = detail::dim_label(d);
    const Point a = detail::planar(d, 0.2, 0.1);
    const Ball unit = Ball::unit(d);
    const Ball mapped(d, a, r);
    const double factor = std::pow(r, d + 2);

    const Ball f_support(d, detail::planar(d, 0.1, 0.2), 0.5);
    const VolumeFunction f{f_support, profile};
    const VolumeFunction g{Ball(d, mapped.from_unit(f_support.center()), r * f_support.radius()),
                           [mapped](const Point& x) { return profile(mapped.to_unit(x)); }};

    const double unit_q = pair_k2(f, f, unit, K2Method::Quadrature);
    const double mapped_q = pair_k2(g, g, mapped, K2Method::Quadrature);
    const double res_q = std::abs(mapped_q - factor * unit_q) / std::abs(factor * unit_q);
    rep.add(deterministic(rep.header(dl + "/kernel_quadrature", "quadrature", 0), dl + "/kernel_quadrature",
                          "K2 on a + rB of f((x - a)/r) = r^(d+2) K2 on B of f, relative residual", mapped_q,
                          factor * unit_q, res_q, tol, "r = 0.5, a = (0.2, 0.1)"));

    // The identity is exact at every truncation; a small one keeps the
    // volume quadrature cheap.
    const BasisSpec spec{d, 8, 12};
    const SpectralModel unit_model(spec);
    const SpectralModel mapped_model(spec, mapped);
    const double unit_s = unit_model.functional(f).variance();
    const double mapped_s = mapped_model.functional(g).variance();
    const double res_s = std::abs(mapped_s - factor * unit_s) / std::abs(factor * unit_s);
    rep.add(deterministic(rep.header(dl + "/kernel_spectral", detail::truncation_label(spec), 0),
                          dl + "/kernel_spectral",
                          "truncated K2 on a + rB of f((x - a)/r) = r^(d+2) truncated K2 on B, relative residual",
                          mapped_s, factor * unit_s, res_s, tol, "mapped eigenbasis on a + rB"));

    // Two independent fields, one on B and one on a + rB, paired with a
    // centred bump and its pushforward; only radial modes are active.
    const BasisSpec radial{d, 0, 200};
    const SpectralModel ur(radial);
    const SpectralModel mr(radial, mapped);
    const double eps = 0.3;
    const std::vector<LinearFunctional> fu{ur.functional(RadialMollifier(Point::Zero(d), eps))};
    const std::vector<LinearFunctional> fm{std::pow(r, d) * mr.functional(RadialMollifier(a, r * eps))};
    const std::size_t n = ctx.replicas;
    const Eigen::MatrixXd su = sample_pairings(ur, fu, rep.seed(dl + "/unit_field"), n);
    const Eigen::MatrixXd sm = sample_pairings(mr, fm, rep.seed(dl + "/mapped_field"), n);
    const Estimate ratio = detail::variance_ratio(detail::column(sm, 0), detail::column(su, 0));
    rep.add(statistical(rep.header(dl + "/variance_ratio", detail::truncation_label(radial), n),
                        dl + "/variance_ratio", "Var[(h on a + rB, f((x - a)/r))] / Var[(h on B, f)] = r^(d+2)",
                        ratio.value, ratio.stderr, factor, 3.0,
                        "independent samples, delta-method standard error"));
  }
  return std::move(rep.reports());
}

}  // namespace gff
