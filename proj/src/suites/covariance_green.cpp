#include <cmath>
#include <memory>

#include "common.hpp"
#include "gff/kernels.hpp"
#include "gff/pair_k2.hpp"

namespace gff {
namespace {

struct MollifierPair {
  std::string name;
  double x0, x1, y0, y1;
};

}  // namespace

std::vector<StatReport> suite_covariance_green(const SuiteContext& ctx) {
  detail::Reporter rep(ctx, "covariance_green", "covariance is the zero-boundary Green's function");
  const int d = ctx.dim;
  const BasisSpec spec = ctx.spec_at_least(d == 2 ? BasisSpec{2, 40, 60} : BasisSpec{3, 20, 32});
  const double eps = d == 2 ? 0.1 : 0.15;
  const auto model = std::make_shared<const SpectralModel>(spec);
  const Ball unit = Ball::unit(d);
  const std::string trunc = detail::truncation_label(spec);
  const std::size_t n = ctx.replicas;

  const std::vector<MollifierPair> battery{
      {"center_to_half", 0.0, 0.0, 0.5, 0.0},
      {"variance_interior", -0.2, 0.3, -0.2, 0.3},
      {"near_boundary", 0.85, 0.0, 0.55, 0.35},
      {"near_diagonal", 0.3, 0.1, 0.3, 0.35},
      {"variance_off_center", 0.6, 0.0, 0.6, 0.0},
  };

  std::vector<LinearFunctional> functionals;
  std::vector<TestFunction> functions;
  std::vector<std::pair<std::size_t, std::size_t>> columns;
  for (const auto& p : battery) {
    const auto add = [&](double a, double b) {
      functions.emplace_back(RadialMollifier(detail::planar(d, a, b), eps));
      functionals.push_back(model->functional(functions.back()));
      return functionals.size() - 1;
    };
    const std::size_t i = add(p.x0, p.x1);
    const std::size_t j = (p.x0 == p.y0 && p.x1 == p.y1) ? i : add(p.y0, p.y1);
    columns.emplace_back(i, j);
  }
  const auto far = RadialMollifier(detail::planar(d, 1.5, 0.0), 0.2);
  functionals.push_back(model->functional(far));
  const std::size_t far_col = functionals.size() - 1;

  const std::uint64_t seed = rep.seed("battery");
  const Eigen::MatrixXd samples = sample_pairings(*model, functionals, seed, n);

  for (std::size_t b = 0; b < battery.size(); ++b) {
    const auto [i, j] = columns[b];
    const double ref = pair_k2(functions[i], functions[j], unit, K2Method::Quadrature);
    const auto xi = detail::column(samples, static_cast<Eigen::Index>(i));
    const auto xj = detail::column(samples, static_cast<Eigen::Index>(j));
    const Estimate est = covariance_estimate(xi, xj);
    rep.add(statistical(rep.header("battery", trunc, n), "mollifier/" + battery[b].name,
                        "Cov[(h, eta_x), (h, eta_y)] = K2(eta_x, eta_y), eps = " + detail::fmt(eps), est.value,
                        est.stderr, ref, 3.0,
                        "truncated model variance " + detail::fmt(functionals[i].covariance(functionals[j]), 8)));
  }

  // A test function supported outside the ball pairs to exactly zero.
  double far_max = 0.0;
  for (double c : functionals[far_col].coeffs) far_max = std::max(far_max, std::abs(c));
  far_max = std::max(far_max, samples.col(static_cast<Eigen::Index>(far_col)).cwiseAbs().maxCoeff());
  rep.add(deterministic(rep.header("battery", trunc, n, "pairings only see the inside of the ball"),
                        "support/disjoint_from_ball", "(h, f) = 0 for f supported outside the ball", far_max, 0.0,
                        far_max, 0.0));

  // Centering: E[(h, eta)] = 0.
  {
    const auto x = detail::column(samples, 0);
    const Estimate m = mean_estimate(x);
    rep.add(statistical(rep.header("battery", trunc, n, "centred field"), "centering", "E[(h, eta_0)] = 0",
                        m.value, m.stderr, 0.0, 3.0));
  }

  // Linearity of the pairing at the overlap level: the same volume rule is
  // used for f, g and 2f - 3g.
  {
    const SpectralModel small(BasisSpec{d, 6, 10});
    const RadialMollifier f(detail::planar(d, 0.1, 0.0), 0.3);
    const RadialMollifier g(detail::planar(d, -0.2, 0.2), 0.25);
    const Ball support(d, Point::Zero(d), 0.7);
    const auto vf = VolumeFunction{support, [&](const Point& x) { return f.value(x); }};
    const auto vg = VolumeFunction{support, [&](const Point& x) { return g.value(x); }};
    const auto vc = VolumeFunction{support, [&](const Point& x) { return 2.0 * f.value(x) - 3.0 * g.value(x); }};
    const LinearFunctional lhs = small.functional(vc);
    const LinearFunctional rhs = 2.0 * small.functional(vf) - 3.0 * small.functional(vg);
    double res = 0.0;
    double scale = 0.0;
    for (std::size_t k = 0; k < lhs.coeffs.size(); ++k) {
      res = std::max(res, std::abs(lhs.coeffs[k] - rhs.coeffs[k]));
      scale = std::max(scale, std::abs(lhs.coeffs[k]));
    }
    rep.add(deterministic(rep.header("linearity", detail::truncation_label(small.spec()), 0, "linear pairing"),
                          "linearity", "(h, 2f - 3g) = 2 (h, f) - 3 (h, g), max relative coefficient residual",
                          res / scale, 0.0, res / scale, ctx.tolerance("covariance.linearity", 1e-12)));
  }

  // Pairing with an eigenfunction: Var[(h, e_k)] = c_d / lambda_k.
  {
    const SpectralModel m(BasisSpec{d, 2, 6});
    const DirichletEigenfunction e = m.basis().mode(m.basis().index(1, 1, 2));
    const auto fe = VolumeFunction{unit, [e](const Point& x) { return e(x); }};
    const LinearFunctional fl = m.functional(fe);
    const std::vector<LinearFunctional> one{fl};
    const Eigen::MatrixXd s = sample_pairings(m, one, rep.seed("eigenfunction"), n);
    const Estimate v = variance_estimate(detail::column(s, 0));
    rep.add(statistical(rep.header("eigenfunction", detail::truncation_label(m.spec()), n), "eigenfunction_variance",
                        "Var[(h, e_(1,1,2))] = c_d / lambda", v.value, v.stderr, green_normalization(d) / e.lambda,
                        3.0));
  }

  // No finite test decides continuity of the bilinear form; as a proxy the
  // truncated K2 of shrinking mollifiers must stay on the pointwise kernel.
  {
    const Point x = detail::planar(d, 0.0, 0.0);
    const Point y = detail::planar(d, 0.5, 0.0);
    const double g = green_unit_ball(x, y, d);
    double worst = 0.0;
    std::string values;
    for (double e : d == 2 ? std::vector<double>{0.2, 0.1, 0.05} : std::vector<double>{0.3, 0.2, 0.15}) {
      const double k2 = pair_k2(RadialMollifier(x, e), RadialMollifier(y, e), unit, K2Method::Spectral,
                                K2Options{spec, {}, {}});
      worst = std::max(worst, std::abs(k2 / g - 1.0));
      values += (values.empty() ? "" : ", ") + std::string("eps ") + detail::fmt(e) + ": " + detail::fmt(k2, 8);
    }
    rep.add(deterministic(rep.header("continuity_proxy", trunc, 0, "continuous bilinear form (proxy)"),
                          "continuity_proxy",
                          "truncated K2(eta_x^eps, eta_y^eps) stays within tolerance of G(x, y) as eps shrinks", worst,
                          0.0, worst, ctx.tolerance("covariance.proxy", 1e-2),
                          "proxy test, G = " + detail::fmt(g, 8) + "; " + values));
  }
  return std::move(rep.reports());
}

}  // namespace gff
