#include <algorithm>
#include <cmath>
#include <sstream>

#include "common.hpp"
#include "gff/rng.hpp"

namespace gff {

double SuiteContext::tolerance(std::string_view key, double fallback) const {
  const auto it = tolerances.find(key);
  return it == tolerances.end() ? fallback : it->second;
}

BasisSpec SuiteContext::base_spec(int d) const {
  if (truncation && truncation->dim == d) return *truncation;
  return default_basis_spec(d);
}

BasisSpec SuiteContext::spec_at_least(const BasisSpec& minimum) const {
  BasisSpec out = base_spec(minimum.dim);
  out.max_degree = std::max(out.max_degree, minimum.max_degree);
  out.max_radial = std::max(out.max_radial, minimum.max_radial);
  return out;
}

std::uint64_t SuiteContext::stream(std::string_view suite, std::string_view test) const {
  return derive_seed(derive_seed(seed, suite), test);
}

const std::vector<SuiteInfo>& registered_suites() {
  static const std::vector<SuiteInfo> suites = [] {
    std::vector<SuiteInfo> s{
        {"basis", "Dirichlet eigenbasis of the ball", suite_basis},
        {"bounds_audit", "two- and four-point function bounds", suite_bounds_audit},
        {"constancy", "radial constancy of harmonic averages", suite_constancy},
        {"covariance_green", "covariance equals the zero-boundary Green's function", suite_covariance_green},
        {"dmp", "domain Markov decomposition", suite_dmp},
        {"gaussianity", "joint Gaussianity and the Wick four-point function", suite_gaussianity},
        {"harmonic_measure", "harmonic measure seen from an interior point", suite_harmonic_measure},
        {"radial_processes", "spherical-average and harmonic-average processes", suite_radial_processes},
        {"scaling", "scaling covariance under a + rB", suite_scaling},
        {"zero_boundary", "zero boundary condition", suite_zero_boundary},
    };
    std::sort(s.begin(), s.end(), [](const SuiteInfo& a, const SuiteInfo& b) { return a.name < b.name; });
    return s;
  }();
  return suites;
}

const SuiteInfo* find_suite(std::string_view name) {
  for (const auto& s : registered_suites())
    if (s.name == name) return &s;
  return nullptr;
}

const std::vector<std::string>& known_tolerances() {
  static const std::vector<std::string> keys{
      "basis.psi_gram",        "basis.e_gram",          "basis.eigen_residual",  "basis.zero_residual",
      "bounds.contraction",     "bounds.diagonal",       "constancy.deviation",   "constancy.orthogonality",
      "covariance.linearity",  "covariance.proxy",      "dmp.harmonicity",       "dmp.reconstruction",
      "dmp.uniqueness",        "scaling.kernel",        "zero_boundary.decay",   "zero_boundary.oracle",
      "zero_boundary.ratio",   "harmonic_measure.mass", "radial.slope_low",      "radial.slope_high",
      "radial.oracle",
  };
  return keys;
}

std::vector<StatReport> run_suite(const SuiteInfo& suite, const SuiteContext& ctx) {
  std::vector<StatReport> reports = suite.run(ctx);
  std::size_t tests = 0;
  for (const auto& r : reports)
    if (r.kind == StatReport::Kind::Statistical) ++tests;
  const double threshold = bonferroni_threshold(tests, ctx.family_level);
  for (auto& r : reports) {
    if (r.kind != StatReport::Kind::Statistical) continue;
    r.threshold = threshold;
    r.pass = std::isfinite(r.z) && std::abs(r.z) <= threshold;
  }
  return reports;
}

namespace detail {

std::string fmt(double v, int precision) {
  std::ostringstream os;
  os.precision(precision);
  os << v;
  return os.str();
}

std::string truncation_label(const BasisSpec& spec) {
  return "d=" + std::to_string(spec.dim) + ",N=" + std::to_string(spec.max_degree) +
         ",K=" + std::to_string(spec.max_radial);
}

std::string dim_label(int d) { return "d" + std::to_string(d); }

StatReport p_value_report(const ReportHeader& h, std::string test, std::string target, const ChiSquare& chi,
                          std::string note) {
  StatReport r = statistical(h, std::move(test), std::move(target), chi.statistic, std::sqrt(2.0 * chi.dof),
                             static_cast<double>(chi.dof), 3.0, std::move(note));
  const double p = std::max(chi.p_value, 1e-300);
  r.z = normal_quantile(1.0 - 0.5 * std::min(p, 1.0));
  if (!std::isfinite(r.z)) r.z = 0.0;
  r.note += (r.note.empty() ? "" : "; ") + std::string("p=") + fmt(chi.p_value) +
            ", z is the two-sided normal equivalent of p";
  r.pass = std::abs(r.z) <= r.threshold;
  return r;
}

void add_normality(Reporter& rep, const ReportHeader& h, const std::string& label, std::span<const double> x) {
  const ShapeTest shape = shape_test(x);
  rep.add(statistical(h, label + "/skewness", "sample skewness of a centred Gaussian", shape.skewness,
                      shape.skewness / shape.skewness_z, 0.0, 3.0, "normal-theory standard error"));
  // Kurtosis b2 against its exact normal-theory mean 3(n-1)/(n+1).
  const double n = static_cast<double>(x.size());
  const double mean = 3.0 * (n - 1.0) / (n + 1.0);
  rep.add(statistical(h, label + "/kurtosis", "E[X^4] / (3 Var^2) = 1 (reported as b2 against 3(n-1)/(n+1))",
                      shape.kurtosis, (shape.kurtosis - mean) / shape.kurtosis_z, mean, 3.0,
                      "normal-theory standard error"));
  rep.add(p_value_report(h, label + "/chi_square", "chi-square fit to N(0, s^2), 20 equiprobable bins",
                         normality_gof(x, 20)));
}

Estimate variance_ratio(std::span<const double> num, std::span<const double> den) {
  const Estimate a = variance_estimate(num);
  const Estimate b = variance_estimate(den);
  const double ratio = a.value / b.value;
  const double rel = std::sqrt(std::pow(a.stderr / a.value, 2) + std::pow(b.stderr / b.value, 2));
  return {ratio, ratio * rel};
}

}  // namespace detail
}  // namespace gff
