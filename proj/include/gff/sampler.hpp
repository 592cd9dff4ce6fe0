#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Cholesky>

#include "gff/harmonics.hpp"
#include "gff/test_functions.hpp"

namespace gff {

/// Resolution of the quadratures behind mode overlaps; zero means automatic.
struct OverlapOptions {
  int sphere_order = 0;
  int radial_points = 0;
};

/// Overlaps <e_k^D, f> of a test function with the eigenbasis mapped to the
/// domain ball D = a + R B, e_k^D(x) = R^(-d/2) e_k((x - a)/R).
///
/// Radial mollifiers use the spherical-mean identity for Helmholtz
/// eigenfunctions, annular bumps concentric with D reduce to a radial
/// integral, and everything else goes through volume or sphere quadrature.
/// Support disjoint from D gives exact zeros.
std::vector<double> mode_overlaps(const Basis& basis, const Ball& domain, const TestFunction& f,
                                  const OverlapOptions& options = {});

/// A linear functional of the truncated field, stored as its coefficients
/// against the standard normal mode variables: (h, f) = sum_k coeffs[k] xi_k.
struct LinearFunctional {
  std::vector<double> coeffs;

  /// One past the last nonzero coefficient.
  std::size_t active_end() const;
  /// Variance of (h, f) under the truncated law.
  double variance() const;
  double covariance(const LinearFunctional& other) const;

  LinearFunctional& operator+=(const LinearFunctional& other);
  LinearFunctional& operator-=(const LinearFunctional& other);
  LinearFunctional& operator*=(double a);
  friend LinearFunctional operator+(LinearFunctional a, const LinearFunctional& b) { return a += b; }
  friend LinearFunctional operator-(LinearFunctional a, const LinearFunctional& b) { return a -= b; }
  friend LinearFunctional operator*(double s, LinearFunctional a) { return a *= s; }
};

/// Truncated Karhunen-Loeve representation of the zero-boundary field on a
/// ball, h = sum_k sqrt(c_d R^2 / lambda_k) xi_k e_k^D, normalised so that its
/// covariance converges to the s-normalised Green's function of the ball.
class SpectralModel {
 public:
  explicit SpectralModel(const BasisSpec& spec);
  SpectralModel(const BasisSpec& spec, Ball domain);

  const Basis& basis() const { return basis_; }
  const BasisSpec& spec() const { return basis_.spec(); }
  const Ball& domain() const { return domain_; }
  int dim() const { return basis_.dim(); }
  std::size_t size() const { return basis_.size(); }
  /// Standard deviation of the k-th mode coefficient of h.
  double mode_std(std::size_t k) const { return std_[k]; }

  LinearFunctional functional(const TestFunction& f, const OverlapOptions& options = {}) const;
  /// Functional with coefficients std_k * overlaps[k].
  LinearFunctional from_overlaps(std::span<const double> overlaps) const;
  /// (h, nu_r^{psi_{n,j}}) in closed form; requires the unit-ball domain.
  LinearFunctional nu_functional(int n, int j, double r) const;
  LinearFunctional zero() const { return LinearFunctional{std::vector<double>(size(), 0.0)}; }

 private:
  Basis basis_;
  Ball domain_;
  std::vector<double> std_;
};

struct SeedLineage {
  std::uint64_t master = 0;
  std::uint64_t replica = 0;
};

/// One realisation of the truncated field: a standard normal per mode.
struct FieldSample {
  std::shared_ptr<const SpectralModel> model;
  std::vector<double> xi;
  SeedLineage lineage;
};

/// Draws the mode variables of replica `replica` from stream `seed`. The
/// same (seed, replica) always gives the same coefficients, and the batch
/// sampler below reproduces them.
FieldSample sample_field(std::shared_ptr<const SpectralModel> model, std::uint64_t seed,
                         std::uint64_t replica);

double pair(const FieldSample& field, const LinearFunctional& f);
double pair(const FieldSample& field, const TestFunction& f);
/// (h, nu_r^{psi_{n,j}}); equals the spherical average h_r(0) for (0, 1).
double pair_nu(const FieldSample& field, int n, int j, double r);

/// Realisations (rows) of the pairings with each functional (columns) for
/// replicas [first_replica, first_replica + replicas) of stream `seed`.
/// Row k equals pair(sample_field(model, seed, first_replica + k), F_c).
Eigen::MatrixXd sample_pairings(const SpectralModel& model, std::span<const LinearFunctional> functionals,
                                std::uint64_t seed, std::size_t replicas, std::size_t first_replica = 0);

/// Exact sampler of the spherical averages (h_r(0))_r on a radius grid:
/// Gaussian with covariance s(max(r, u)) - s(1), drawn by Cholesky.
class SphericalAverageSampler {
 public:
  SphericalAverageSampler(int dim, std::vector<double> radii);

  const std::vector<double>& radii() const { return radii_; }
  const Eigen::MatrixXd& covariance() const { return cov_; }
  /// Rows are replicas, columns radii.
  Eigen::MatrixXd sample(std::uint64_t seed, std::size_t replicas, std::size_t first_replica = 0) const;

 private:
  int dim_;
  std::vector<double> radii_;
  Eigen::MatrixXd cov_;
  Eigen::MatrixXd lower_;
};

/// Covariance of the spherical averages at radii r and u around 0.
double spherical_average_covariance(double r, double u, int dim);

struct ATerm {
  double a = 1.0;
  int n = 0;
  int j = 1;
};

struct RadialPath {
  enum class Kind { SphericalAverage, AProcess };
  Kind kind = Kind::SphericalAverage;
  std::vector<double> radii;
  std::vector<double> values;
  std::vector<ATerm> terms;  // empty for spherical averages
};

RadialPath spherical_average_path(const FieldSample& field, std::span<const double> radii);
RadialPath spherical_average_path(const SphericalAverageSampler& sampler, std::uint64_t seed,
                                  std::uint64_t replica);

/// Functionals of A_r = sum_i a_i r^(-n_i) (h, nu_r^{psi_{n_i,j_i}}), one per radius.
std::vector<LinearFunctional> a_process_functionals(const SpectralModel& model, std::span<const ATerm> terms,
                                                    std::span<const double> radii);
RadialPath a_process(const FieldSample& field, std::span<const ATerm> terms, std::span<const double> radii);

/// Exact covariance of r^-n (h, nu_r^psi) and u^-n (h, nu_u^psi) for a
/// degree-n harmonic; it only depends on max(r, u).
double nu_covariance(int n, double r, double u, int dim);

struct Estimate {
  double value = 0.0;
  double stderr = 0.0;
};

/// Unbiased sample covariance with a delete-one jackknife standard error.
/// Needs at least two observations; with two the error is infinite.
Estimate covariance_estimate(std::span<const double> x, std::span<const double> y);

void require_increasing_radii(std::span<const double> radii, bool open_unit_interval);

}  // namespace gff
