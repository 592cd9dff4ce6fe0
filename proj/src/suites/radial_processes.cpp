#include <algorithm>
#include <cmath>
#include <numbers>

#include "common.hpp"
#include "gff/pair_k2.hpp"

namespace gff {
namespace {

// Radii bounding the increment intervals [0.2,0.3], [0.35,0.45], [0.5,0.6], [0.7,0.8].
const std::vector<double> kRadii{0.2, 0.3, 0.35, 0.45, 0.5, 0.6, 0.7, 0.8};
const std::vector<std::pair<int, int>> kIntervalPairs{{0, 1}, {0, 2}, {1, 3}, {2, 3}};

std::string interval(int k) {
  return "[" + detail::fmt(kRadii[2 * k]) + "," + detail::fmt(kRadii[2 * k + 1]) + "]";
}

std::vector<std::vector<double>> increments(const Eigen::MatrixXd& path) {
  std::vector<std::vector<double>> out;
  for (Eigen::Index k = 0; k < 4; ++k) {
    const Eigen::VectorXd inc = path.col(2 * k + 1) - path.col(2 * k);
    out.emplace_back(inc.data(), inc.data() + inc.size());
  }
  return out;
}

void decorrelation(detail::Reporter& rep, const ReportHeader& h, const std::string& label,
                   const std::vector<std::vector<double>>& inc, const std::string& target) {
  for (const auto& [a, b] : kIntervalPairs) {
    const Estimate c = covariance_estimate(inc[static_cast<std::size_t>(a)], inc[static_cast<std::size_t>(b)]);
    rep.add(statistical(h, label + "/decorrelation_" + interval(a) + "_" + interval(b), target, c.value, c.stderr,
                        0.0, 3.0));
  }
}

}  // namespace

std::vector<StatReport> suite_radial_processes(const SuiteContext& ctx) {
  detail::Reporter rep(ctx, "radial_processes", "radial processes of spherical and harmonic averages");
  const int d = ctx.dim;
  const std::string dl = detail::dim_label(d);
  const std::size_t n = ctx.replicas;

  // Var[h_0.5(0)] = -log 0.5 in d = 2, by the exact sampler and by the
  // spectral field restricted to radial modes.
  {
    const SphericalAverageSampler sampler(2, {0.5});
    const Eigen::MatrixXd s = sampler.sample(rep.seed("d2/variance_exact"), n);
    const Estimate v = variance_estimate(detail::column(s, 0));
    rep.add(statistical(rep.header("d2/variance_exact", "exact", n, "variance of the spherical average"),
                        "d2/spherical_average_variance", "Var[h_0.5(0)] = log 2 in d = 2", v.value, v.stderr,
                        std::numbers::ln2, 3.0, "exact Gaussian sampler of the spherical averages"));

    const BasisSpec spec{2, 0, 2000};
    const SpectralModel model(spec);
    const std::vector<LinearFunctional> f{model.nu_functional(0, 1, 0.5)};
    const Eigen::MatrixXd t = sample_pairings(model, f, rep.seed("d2/variance_spectral"), n);
    const Estimate w = variance_estimate(detail::column(t, 0));
    rep.add(statistical(rep.header("d2/variance_spectral", detail::truncation_label(spec), n,
                                   "variance of the spherical average"),
                        "d2/spherical_average_variance_spectral", "Var[h_0.5(0)] = log 2 in d = 2, spectral field",
                        w.value, w.stderr, std::numbers::ln2, 3.0));
  }

  // d = 3: Var[h_r(0)] = r^-1 - 1, checked against the double-sphere
  // quadrature of G.
  {
    const double r = 0.5;
    const double oracle = double_sphere_green(Ball::unit(3), r, r);
    const double formula = spherical_average_covariance(r, r, 3);
    const double gap = std::abs(oracle - formula);
    rep.add(deterministic(rep.header("d3/oracle", "quadrature", 0, "variance of the spherical average"),
                          "d3/oracle_vs_formula", "double-sphere quadrature of G = (1 - delta)^(2-d) - 1 at r = 0.5",
                          oracle, formula, gap, ctx.tolerance("radial.oracle", 1e-6),
                          "variance is (1 - delta)^(2-d) - 1 > 0; the form 1 - (1 - delta)^(2-d) has the wrong sign"));
    const SphericalAverageSampler sampler(3, {r});
    const Eigen::MatrixXd s = sampler.sample(rep.seed("d3/variance_exact"), n);
    const Estimate v = variance_estimate(detail::column(s, 0));
    rep.add(statistical(rep.header("d3/variance_exact", "exact", n, "variance of the spherical average"),
                        "d3/spherical_average_variance", "Var[h_0.5(0)] = double-sphere quadrature oracle in d = 3",
                        v.value, v.stderr, oracle, 3.0, "reference is positive: (1 - delta)^(2-d) - 1 = 1"));
  }

  const SphericalAverageSampler sampler(d, kRadii);
  const Eigen::MatrixXd paths = sampler.sample(rep.seed(dl + "/paths"), n);
  const ReportHeader ph = rep.header(dl + "/paths", "exact", n, "spherical averages form a Gaussian process");
  {
    const Estimate c = covariance_estimate(detail::column(paths, 1), detail::column(paths, 5));
    rep.add(statistical(ph, dl + "/covariance_0.3_0.6", "Cov[h_0.3(0), h_0.6(0)] = s(0.6) - s(1)", c.value, c.stderr,
                        spherical_average_covariance(0.3, 0.6, d), 3.0));
  }
  const auto inc = increments(paths);
  decorrelation(rep, ph, dl + "/spherical_average", inc, "increments of r -> h_r(0) over disjoint intervals are uncorrelated");
  detail::add_normality(rep, ph, dl + "/spherical_average_increment_" + interval(1), inc[1]);

  // A_r = r^-1 nu_r(psi_(1,1)) + 0.5 r^-2 nu_r(psi_(2,2)) on the spectral field.
  {
    const BasisSpec spec{d, 2, 600};
    const SpectralModel model(spec);
    const std::vector<ATerm> terms{{1.0, 1, 1}, {0.5, 2, 2}};
    const auto fs = a_process_functionals(model, terms, kRadii);
    const Eigen::MatrixXd a = sample_pairings(model, fs, rep.seed(dl + "/a_process"), n);
    const ReportHeader ah = rep.header(dl + "/a_process", detail::truncation_label(spec), n,
                                       "harmonic-average processes have independent increments");
    const Estimate v = variance_estimate(detail::column(a, 2));
    const double ref = nu_covariance(1, 0.35, 0.35, d) + 0.25 * nu_covariance(2, 0.35, 0.35, d);
    rep.add(statistical(ah, dl + "/a_process_variance_0.35", "Var[A_0.35] = sum a_i^2 (m^-(2n+d-2) - 1)/(2n+d-2)",
                        v.value, v.stderr, ref, 3.0, "A_r = r^-1 nu_r(psi_(1,1)) + 0.5 r^-2 nu_r(psi_(2,2))"));
    const auto ainc = increments(a);
    decorrelation(rep, ah, dl + "/a_process", ainc, "increments of A_r over disjoint intervals are uncorrelated");
    detail::add_normality(rep, ah, dl + "/a_process_increment_" + interval(2), ainc[2]);
  }

  // Fourth moment of X_delta = h_(1-delta)(0) - h_1(0) = h_(1-delta)(0).
  {
    const std::vector<double> deltas{0.08, 0.04, 0.02};
    if (deltas.size() < 3) throw DomainError("radial_processes: fourth-moment grid needs at least 3 points");
    std::vector<double> radii;
    for (double delta : deltas) radii.push_back(1.0 - delta);
    const SphericalAverageSampler near(d, radii);
    const Eigen::MatrixXd s = near.sample(rep.seed(dl + "/fourth_moment"), n);
    const ReportHeader h = rep.header(dl + "/fourth_moment", "exact", n, "fourth-moment bound C delta^(2 - eta)");
    std::vector<double> logd;
    std::vector<double> logm;
    std::vector<double> sigma;
    for (std::size_t k = 0; k < deltas.size(); ++k) {
      const Estimate m4 = raw_moment_estimate(detail::column(s, static_cast<Eigen::Index>(k)), 4);
      const double var = spherical_average_covariance(radii[k], radii[k], d);
      rep.add(statistical(h, dl + "/fourth_moment_" + detail::fmt(deltas[k]),
                          "E[X_delta^4] = 3 (s(1 - delta) - s(1))^2", m4.value, m4.stderr, 3.0 * var * var, 3.0));
      logd.push_back(std::log(deltas[k]));
      logm.push_back(std::log(m4.value));
      sigma.push_back(m4.stderr / m4.value);
    }
    const Regression fit = weighted_regression(logd, logm, sigma);
    const double lo = ctx.tolerance("radial.slope_low", 1.8);
    const double hi = ctx.tolerance("radial.slope_high", 2.2);
    const double outside = std::max({0.0, lo - fit.slope, fit.slope - hi});
    rep.add(deterministic(h, dl + "/fourth_moment_slope", "log-log slope of E[X_delta^4] in [1.8, 2.2]", fit.slope,
                          2.0, outside, 0.0,
                          "weighted fit over delta = 0.02, 0.04, 0.08, slope stderr " + detail::fmt(fit.slope_stderr)));
    const double eta = 0.5;
    const double deficit = std::max(0.0, (2.0 - eta) - fit.slope);
    rep.add(deterministic(h, dl + "/fourth_moment_kolmogorov", "slope >= 2 - eta with eta = 0.5", fit.slope,
                          2.0 - eta, deficit, 0.0));
  }
  return std::move(rep.reports());
}

}  // namespace gff
