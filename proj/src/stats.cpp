#include "gff/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>

namespace gff {
namespace {

void require_size(std::span<const double> x, std::size_t n, const char* what) {
  if (x.size() < n) throw DomainError(std::string(what) + ": not enough observations");
}

}  // namespace

Estimate mean_estimate(std::span<const double> x) {
  require_size(x, 2, "mean_estimate");
  const double n = static_cast<double>(x.size());
  double m = 0.0;
  for (double v : x) m += v;
  m /= n;
  double ss = 0.0;
  for (double v : x) ss += (v - m) * (v - m);
  return {m, std::sqrt(ss / (n - 1.0) / n)};
}

Estimate variance_estimate(std::span<const double> x) { return covariance_estimate(x, x); }

Estimate raw_moment_estimate(std::span<const double> x, int p) {
  std::vector<double> y(x.size());
  std::transform(x.begin(), x.end(), y.begin(), [p](double v) { return std::pow(v, p); });
  return mean_estimate(y);
}

ShapeTest shape_test(std::span<const double> x) {
  require_size(x, 8, "shape_test");
  const double n = static_cast<double>(x.size());
  double m = 0.0;
  for (double v : x) m += v;
  m /= n;
  double m2 = 0.0;
  double m3 = 0.0;
  double m4 = 0.0;
  for (double v : x) {
    const double d = v - m;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;
  ShapeTest out;
  out.skewness = m3 / std::pow(m2, 1.5);
  out.kurtosis = m4 / (m2 * m2);
  const double skew_var = 6.0 * (n - 2.0) / ((n + 1.0) * (n + 3.0));
  const double kurt_mean = 3.0 * (n - 1.0) / (n + 1.0);
  const double kurt_var = 24.0 * n * (n - 2.0) * (n - 3.0) / ((n + 1.0) * (n + 1.0) * (n + 3.0) * (n + 5.0));
  out.skewness_z = out.skewness / std::sqrt(skew_var);
  out.kurtosis_z = (out.kurtosis - kurt_mean) / std::sqrt(kurt_var);
  return out;
}

ChiSquare chi_square_gof(std::span<const std::size_t> observed, std::span<const double> probabilities, int fitted) {
  if (observed.size() != probabilities.size() || observed.size() < 2)
    throw DomainError("chi_square_gof: need matching bins, at least two");
  double total = 0.0;
  for (std::size_t c : observed) total += static_cast<double>(c);
  if (total <= 0.0) throw DomainError("chi_square_gof: no observations");
  ChiSquare out;
  for (std::size_t b = 0; b < observed.size(); ++b) {
    const double e = total * probabilities[b];
    if (!(e > 0.0)) throw DomainError("chi_square_gof: bin with zero expected count");
    const double diff = static_cast<double>(observed[b]) - e;
    out.statistic += diff * diff / e;
  }
  out.dof = static_cast<int>(observed.size()) - 1 - fitted;
  if (out.dof < 1) throw DomainError("chi_square_gof: no degrees of freedom left");
  out.p_value = boost::math::cdf(boost::math::complement(boost::math::chi_squared(out.dof), out.statistic));
  return out;
}

ChiSquare normality_gof(std::span<const double> x, int bins) {
  require_size(x, 2, "normality_gof");
  if (bins < 3) throw DomainError("normality_gof: need at least three bins");
  double m2 = 0.0;
  for (double v : x) m2 += v * v;
  const double s = std::sqrt(m2 / static_cast<double>(x.size()));
  std::vector<double> edges;
  for (int b = 1; b < bins; ++b) edges.push_back(s * normal_quantile(static_cast<double>(b) / bins));
  std::vector<std::size_t> counts(static_cast<std::size_t>(bins), 0);
  for (double v : x) ++counts[std::upper_bound(edges.begin(), edges.end(), v) - edges.begin()];
  const std::vector<double> probs(static_cast<std::size_t>(bins), 1.0 / bins);
  return chi_square_gof(counts, probs, 1);
}

double normal_quantile(double p) { return boost::math::quantile(boost::math::normal(), p); }

double normal_two_sided_p(double z) {
  if (!std::isfinite(z)) return 0.0;
  return 2.0 * boost::math::cdf(boost::math::complement(boost::math::normal(), std::abs(z)));
}

double bonferroni_threshold(std::size_t tests, double family_level, double floor) {
  if (tests == 0) return floor;
  if (!(family_level > 0.0 && family_level < 1.0)) throw DomainError("bonferroni_threshold: level must lie in (0, 1)");
  const double per_test = family_level / static_cast<double>(tests);
  return std::max(floor, normal_quantile(1.0 - 0.5 * per_test));
}

Regression weighted_regression(std::span<const double> x, std::span<const double> y, std::span<const double> sigma) {
  if (x.size() != y.size() || x.size() != sigma.size()) throw DomainError("weighted_regression: size mismatch");
  if (x.size() < 3) throw DomainError("weighted_regression: need at least three points");
  double s = 0.0;
  double sx = 0.0;
  double sy = 0.0;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!(sigma[k] > 0.0)) throw DomainError("weighted_regression: non-positive sigma");
    const double w = 1.0 / (sigma[k] * sigma[k]);
    s += w;
    sx += w * x[k];
    sy += w * y[k];
    sxx += w * x[k] * x[k];
    sxy += w * x[k] * y[k];
  }
  const double det = s * sxx - sx * sx;
  if (!(det > 0.0)) throw DomainError("weighted_regression: degenerate design");
  Regression out;
  out.slope = (s * sxy - sx * sy) / det;
  out.intercept = (sxx * sy - sx * sxy) / det;
  out.slope_stderr = std::sqrt(s / det);
  return out;
}

double correlation(std::span<const double> x, std::span<const double> y) {
  const Estimate c = covariance_estimate(x, y);
  const Estimate vx = covariance_estimate(x, x);
  const Estimate vy = covariance_estimate(y, y);
  if (vx.value == 0.0 || vy.value == 0.0) return 0.0;
  return c.value / std::sqrt(vx.value * vy.value);
}

}  // namespace gff
