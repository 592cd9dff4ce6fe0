#include <array>
#include <cmath>
#include <memory>

#include "common.hpp"
#include "gff/pair_k2.hpp"
#include "gff/rng.hpp"

namespace gff {
namespace {

struct WickSetup {
  int dim;
  double eps;
  BasisSpec spec;
};

void wick_test(detail::Reporter& rep, const SuiteContext& ctx, const WickSetup& w) {
  const int d = w.dim;
  const std::string dl = detail::dim_label(d);
  const BasisSpec spec = ctx.spec_at_least(w.spec);
  const SpectralModel model(spec);
  const Ball unit = Ball::unit(d);
  const std::array<Point, 4> z{detail::planar(d, 0.4, 0.0), detail::planar(d, -0.4, 0.0),
                               detail::planar(d, 0.0, 0.4), detail::planar(d, 0.0, -0.4)};
  std::vector<TestFunction> eta;
  std::vector<LinearFunctional> fl;
  for (const auto& p : z) {
    eta.emplace_back(RadialMollifier(p, w.eps));
    fl.push_back(model.functional(eta.back()));
  }
  // With disjoint supports the mollified Wick sum factors into pairwise K2.
  double k[4][4] = {};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) k[i][j] = pair_k2(eta[i], eta[j], unit, K2Method::Quadrature);
  const double ref = k[0][1] * k[2][3] + k[0][2] * k[1][3] + k[0][3] * k[1][2];
  const double model_ref = fl[0].covariance(fl[1]) * fl[2].covariance(fl[3]) +
                           fl[0].covariance(fl[2]) * fl[1].covariance(fl[3]) +
                           fl[0].covariance(fl[3]) * fl[1].covariance(fl[2]);

  const std::size_t n = ctx.replicas;
  const Eigen::MatrixXd s = sample_pairings(model, fl, rep.seed(dl + "/wick"), n);
  std::vector<double> prod(n);
  for (std::size_t r = 0; r < n; ++r) {
    const auto row = static_cast<Eigen::Index>(r);
    prod[r] = s(row, 0) * s(row, 1) * s(row, 2) * s(row, 3);
  }
  const Estimate m = mean_estimate(prod);
  rep.add(statistical(rep.header(dl + "/wick", detail::truncation_label(spec), n, "Wick four-point function"),
                      dl + "/wick_four_point",
                      "E[prod (h, eta_zi)] = mollified G12 G34 + G13 G24 + G14 G23, z = (+-0.4, 0), (0, +-0.4), eps = " +
                          detail::fmt(w.eps),
                      m.value, m.stderr, ref, 3.0, "truncated-model Wick sum " + detail::fmt(model_ref, 8)));
}

}  // namespace

std::vector<StatReport> suite_gaussianity(const SuiteContext& ctx) {
  detail::Reporter rep(ctx, "gaussianity", "pairings are jointly Gaussian");
  const int d = ctx.dim;
  const std::string dl = detail::dim_label(d);
  const std::size_t n = ctx.replicas;

  {
    const BasisSpec spec = ctx.base_spec(d);
    const SpectralModel model(spec);
    const Point o = Point::Zero(d);
    const std::vector<std::pair<std::string, TestFunction>> battery{
        {"mollifier_center", RadialMollifier(o, 0.2)},
        {"mollifier_off_center", RadialMollifier(detail::planar(d, 0.5, 0.2), 0.15)},
        {"annular_bump", AnnularBump(o, 0.3, 0.5)},
        {"tilted_bump", VolumeFunction{Ball(d, detail::planar(d, -0.3, 0.1), 0.4),
                                       [d](const Point& x) {
                                         const double t = (x - detail::planar(d, -0.3, 0.1)).squaredNorm() / 0.16;
                                         return t < 1.0 ? std::exp(-1.0 / (1.0 - t)) * (1.0 + 2.0 * x(1)) : 0.0;
                                       }}},
        {"sphere_measure", SphereMeasure{Ball(d, o, 0.6), [](const Point& u) { return 1.0 + u(0); }}},
    };
    std::vector<LinearFunctional> fl;
    for (const auto& [name, f] : battery) fl.push_back(model.functional(f));
    const Eigen::MatrixXd s = sample_pairings(model, fl, rep.seed(dl + "/battery"), n);
    const ReportHeader h = rep.header(dl + "/battery", detail::truncation_label(spec), n, "Gaussian pairings");
    for (std::size_t c = 0; c < battery.size(); ++c)
      detail::add_normality(rep, h, dl + "/" + battery[c].first, detail::column(s, static_cast<Eigen::Index>(c)));
  }

  wick_test(rep, ctx, {2, 0.05, BasisSpec{2, 32, 48}});
  wick_test(rep, ctx, {3, 0.1, BasisSpec{3, 16, 24}});

  {
    const BasisSpec spec{d, 4, 100};
    const SpectralModel model(spec);
    struct Nu {
      int n, j;
      double r;
    };
    const std::vector<Nu> nus{{0, 1, 0.3}, {1, 1, 0.5}, {1, 2, 0.7}, {2, 1, 0.4},
                              {2, 2, 0.6}, {3, 1, 0.5}, {4, 1, 0.3}, {4, 2, 0.8}};
    std::vector<LinearFunctional> combos;
    for (int c = 0; c < 10; ++c) {
      ReplicaRng rng(rep.seed(dl + "/nu_weights"), static_cast<std::uint64_t>(c));
      LinearFunctional f = model.zero();
      for (const auto& nu : nus) f += rng.normal() * model.nu_functional(nu.n, nu.j, nu.r);
      f *= 1.0 / std::sqrt(f.variance());
      combos.push_back(std::move(f));
    }
    const Eigen::MatrixXd s = sample_pairings(model, combos, rep.seed(dl + "/nu_combinations"), n);
    const ReportHeader h =
        rep.header(dl + "/nu_combinations", detail::truncation_label(spec), n, "joint Gaussianity of nu_r^psi pairings");
    for (int c = 0; c < 10; ++c)
      detail::add_normality(rep, h, dl + "/nu_combination_" + std::to_string(c), detail::column(s, c));
  }
  return std::move(rep.reports());
}

}  // namespace gff
