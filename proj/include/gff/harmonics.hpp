#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "gff/geometry.hpp"
#include "gff/quadrature.hpp"

namespace gff {

// Real spherical harmonics psi_{n,j} on S^(d-1), d = 2, 3, orthonormal for
// the uniform probability measure.
//
// Index convention:
//   d = 2: psi_{0,1} = 1, psi_{n,1} = sqrt2 cos(n t), psi_{n,2} = sqrt2 sin(n t).
//   d = 3: j = m + n + 1 for m = -n..n; m < 0 uses sin(|m| phi), m > 0 cos(m phi).

/// Number of independent degree-n harmonics: 1 or 2 in d = 2, 2n + 1 in d = 3.
int multiplicity(int n, int d);

/// psi_{n,j}(theta_bar); the dimension is taken from theta_bar.
double eval_psi(int n, int j, const Point& theta_bar);

/// All psi_{n,j} with n <= max_degree, ordered by n then j.
void eval_psi_all(int max_degree, const Point& theta_bar, std::vector<double>& out);

/// |z|^n psi_{n,j}(z/|z|), harmonic in R^d.
double solid_harmonic(int n, int j, const Point& z);

/// J_n(x) in d = 2, the spherical Bessel function j_n(x) in d = 3.
double radial_bessel(int n, double x, int d);

/// i-th positive zero (i >= 1) of J_n (d = 2) or j_n (d = 3).
double radial_zero(int n, int i, int d);

/// Dirichlet eigenfunction c f_n(alpha |z|) psi_{n,j}(z/|z|) of -Laplacian
/// on the unit ball, L^2(B)-normalised against Lebesgue measure.
struct DirichletEigenfunction {
  int dim = 2;
  int n = 0;
  int j = 1;
  int i = 1;
  double alpha = 0.0;   // radial_zero(n, i, dim)
  double lambda = 0.0;  // alpha^2
  double norm = 0.0;    // c

  /// c f_n(alpha r); zero for r > 1.
  double radial(double r) const;
  /// Value at z; zero outside the closed unit ball.
  double operator()(const Point& z) const;
};

DirichletEigenfunction eigenfunction(int n, int j, int i, int d);

/// Truncation of the eigenbasis: degrees n <= max_degree, radial indices
/// i <= max_radial.
struct BasisSpec {
  int dim = 2;
  int max_degree = 24;
  int max_radial = 40;

  std::size_t mode_count() const;
  void validate() const;
  friend bool operator==(const BasisSpec&, const BasisSpec&) = default;
};

/// Default truncation for the given dimension.
BasisSpec default_basis_spec(int dim);

/// Truncated Dirichlet eigenbasis of the unit ball. Modes are ordered by
/// n, then j, then i.
class Basis {
 public:
  explicit Basis(const BasisSpec& spec);

  const BasisSpec& spec() const { return spec_; }
  int dim() const { return spec_.dim; }
  std::size_t size() const { return modes_.size(); }
  const DirichletEigenfunction& mode(std::size_t k) const { return modes_[k]; }
  const std::vector<DirichletEigenfunction>& modes() const { return modes_; }

  std::size_t index(int n, int j, int i) const;
  /// Index of (n, j, 1); the K radial modes of (n, j) follow contiguously.
  std::size_t block_start(int n, int j) const { return index(n, j, 1); }
  /// Number of (n, j) blocks, i.e. sum of multiplicities.
  std::size_t angular_count() const;

  /// Every mode evaluated at z (zero outside the closed unit ball).
  void evaluate(const Point& z, std::span<double> out) const;

  /// CSV with columns n,j,i,alpha,lambda,norm_const.
  void write_manifest(std::ostream& os) const;

 private:
  BasisSpec spec_;
  std::vector<DirichletEigenfunction> modes_;
};

/// nu_r^psi(phi) = integral of psi_{n,j}(theta) phi(r theta) against the
/// uniform probability measure. The default rule resolves degree n plus
/// 16 extra degrees of phi.
double nu_pair(int n, int j, double r, const std::function<double(const Point&)>& phi, int dim);
double nu_pair(int n, int j, double r, const std::function<double(const Point&)>& phi,
               const SphereRule& rule);

/// max |r^-n nu_r(phi) - mean| over the radius grid.
double check_constancy(int n, int j, const std::function<double(const Point&)>& phi,
                       std::span<const double> radii, int dim);

}  // namespace gff
