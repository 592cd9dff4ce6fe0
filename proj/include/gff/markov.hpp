#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "gff/sampler.hpp"

namespace gff {

// Domain Markov decomposition of the spectral field on a sub-ball:
// h = h_sub + phi on `inner`, phi the harmonic extension of h from
// ∂inner. phi(z) is the pairing of h with the Poisson measure mu_z, the
// measure on ∂inner with density poisson_kernel(inner, z, .), so every
// piece of the decomposition is a linear functional of the mode variables.

/// Builds (h, mu_z) functionals for one inner ball. Spheres concentric with
/// the model domain use the closed form c f_n(alpha rho/R) (|z-a|/rho)^n psi;
/// other spheres use a sphere rule whose mode values are tabulated once.
/// The model must outlive the projector.
class PoissonProjector {
 public:
  /// sphere_order = 0 picks max(2 N_max + 8, 256) in d = 2 and
  /// 2 N_max + 8 in d = 3.
  PoissonProjector(const SpectralModel& model, Ball inner, int sphere_order = 0);

  const Ball& inner() const { return inner_; }
  bool concentric() const { return concentric_; }

  /// phi(z) = (h, mu_z). Rejects z with distance to ∂inner below
  /// 1e-3 times the inner radius.
  LinearFunctional at(const Point& z) const;
  /// Integral of phi(z) f(z) dz for f supported in inner. Radial bumps use
  /// the mean-value property (the integral is phi at their center).
  LinearFunctional integrated(const TestFunction& f, int radial_points = 24, int sphere_order = 16) const;

 private:
  const SpectralModel* model_;
  Ball inner_;
  bool concentric_;
  SphereRule rule_;
  Eigen::MatrixXd table_;  // rule node x mode: weight * std_k * e_k^D(node)
};

LinearFunctional harmonic_part(const SpectralModel& model, const Ball& inner, const Point& z);
/// (h_sub, f) = (h, f) - integral of phi f, for f supported in inner.
LinearFunctional bulk_functional(const SpectralModel& model, const PoissonProjector& projector,
                                 const TestFunction& f);
LinearFunctional bulk_functional(const SpectralModel& model, const Ball& inner, const TestFunction& f);
/// (h, f) minus the bulk pairings of f restricted to each ball; balls must
/// be pairwise disjoint and inside the model domain.
LinearFunctional multi_ball_remainder(const SpectralModel& model, std::span<const Ball> balls,
                                      const TestFunction& f);
/// phi_inner(z) - phi_mid(z) for inner ⊂ mid ⊂ domain.
LinearFunctional nested_increment(const SpectralModel& model, const Ball& inner, const Ball& mid, const Point& z);

double harmonic_part(const FieldSample& field, const Ball& inner, const Point& z);
double bulk_pairing(const FieldSample& field, const Ball& inner, const TestFunction& f);
double multi_ball_remainder(const FieldSample& field, std::span<const Ball> balls, const TestFunction& f);
double nested_increment(const FieldSample& field, const Ball& inner, const Ball& mid, const Point& z);

struct Decomposition {
  Ball outer;
  Ball inner;
  std::vector<Point> points;
  std::vector<double> phi_values;
  std::vector<double> sub_pairings;
};

/// phi at each point and (h_sub, f) for each function, for one field.
Decomposition decompose(const FieldSample& field, const Ball& inner, std::span<const Point> points,
                        std::span<const TestFunction> functions);

/// CSV rows replica,z0,..,z{d-1},phi_value; the header is written when
/// `header` is set.
void write_decomposition_csv(std::ostream& os, std::uint64_t replica, const Decomposition& dec, bool header);

bool same_ball(const Ball& a, const Ball& b);

}  // namespace gff
