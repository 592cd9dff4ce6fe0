#pragma once

#include <span>
#include <vector>

#include "gff/sampler.hpp"

namespace gff {

/// Sample mean and its standard error.
Estimate mean_estimate(std::span<const double> x);
/// Unbiased sample variance with a jackknife standard error.
Estimate variance_estimate(std::span<const double> x);
/// Mean of x^p with its standard error.
Estimate raw_moment_estimate(std::span<const double> x, int p);

/// z statistics of sample skewness and kurtosis against their exact
/// normal-theory mean and variance.
struct ShapeTest {
  double skewness = 0.0;
  double skewness_z = 0.0;
  double kurtosis = 0.0;  // b2, 3 for a Gaussian
  double kurtosis_z = 0.0;
};
ShapeTest shape_test(std::span<const double> x);

struct ChiSquare {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 1.0;
};

/// Pearson goodness of fit of counts against bin probabilities; `fitted`
/// parameters are removed from the degrees of freedom.
ChiSquare chi_square_gof(std::span<const std::size_t> observed, std::span<const double> probabilities,
                         int fitted = 0);

/// Chi-square normality test of centred data with `bins` equiprobable bins
/// of N(0, s^2), s^2 the sample second moment (one fitted parameter).
ChiSquare normality_gof(std::span<const double> x, int bins = 20);

double normal_quantile(double p);
/// Two-sided normal p-value of z.
double normal_two_sided_p(double z);
/// Per-test |z| gate for `tests` simultaneous two-sided tests at family
/// level `family_level` (Bonferroni), never below `floor`.
double bonferroni_threshold(std::size_t tests, double family_level = 0.01, double floor = 3.0);

struct Regression {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
};

/// Weighted least squares y ~ a + b x with weights 1/sigma^2.
Regression weighted_regression(std::span<const double> x, std::span<const double> y, std::span<const double> sigma);

/// Pearson correlation.
double correlation(std::span<const double> x, std::span<const double> y);

}  // namespace gff
