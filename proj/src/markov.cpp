#include "gff/markov.hpp"

#include <cmath>
#include <ostream>

#include "gff/kernels.hpp"
#include "gff/quadrature.hpp"

namespace gff {
namespace {

int default_order(const BasisSpec& spec) {
  const int base = 2 * spec.max_degree + 8;
  return spec.dim == 2 ? std::max(base, 256) : base;
}

bool radial_bump(const TestFunction& f) {
  return std::holds_alternative<RadialMollifier>(f) || std::holds_alternative<AnnularBump>(f);
}

Point bump_center(const TestFunction& f) {
  if (const auto* m = std::get_if<RadialMollifier>(&f)) return m->center();
  return std::get<AnnularBump>(f).center();
}

}  // namespace

bool same_ball(const Ball& a, const Ball& b) {
  return a.dim() == b.dim() && a.radius() == b.radius() && a.center() == b.center();
}

PoissonProjector::PoissonProjector(const SpectralModel& model, Ball inner, int sphere_order)
    : model_(&model),
      inner_(std::move(inner)),
      concentric_((inner_.center() - model.domain().center()).norm() <= 1e-14 * model.domain().radius()),
      rule_(model.dim(), sphere_order > 0 ? sphere_order : default_order(model.spec())) {
  if (inner_.dim() != model.dim()) throw DomainError("PoissonProjector: dimension mismatch");
  if (!model.domain().contains(inner_)) throw DomainError("PoissonProjector: inner ball must lie inside the domain");
  if (concentric_) return;
  const Basis& basis = model.basis();
  const Ball& domain = model.domain();
  const double scale = std::pow(domain.radius(), -0.5 * model.dim());
  table_.resize(static_cast<Eigen::Index>(rule_.size()), static_cast<Eigen::Index>(basis.size()));
  std::vector<double> values(basis.size());
  for (std::size_t q = 0; q < rule_.size(); ++q) {
    basis.evaluate(domain.to_unit(inner_.from_unit(rule_.nodes()[q])), values);
    const double w = rule_.weights()[q] * scale;
    for (std::size_t k = 0; k < values.size(); ++k) table_(q, k) = w * model.mode_std(k) * values[k];
  }
}

LinearFunctional PoissonProjector::at(const Point& z) const {
  require_dim(z, inner_.dim(), "harmonic_part");
  const double margin = inner_.boundary_distance(z);
  if (!(margin >= 1e-3 * inner_.radius()))
    throw DomainError("harmonic_part: z must lie inside the inner ball, away from its boundary");
  const SpectralModel& model = *model_;
  LinearFunctional out = model.zero();
  if (concentric_) {
    const Basis& basis = model.basis();
    const Ball& domain = model.domain();
    const int d = model.dim();
    const double rho = inner_.radius();
    const double scale = std::pow(domain.radius(), -0.5 * d);
    const Point rel = (z - inner_.center()) / rho;
    const PolarPoint p = PolarPoint::from_cartesian(rel);
    std::vector<double> psi;
    eval_psi_all(model.spec().max_degree, p.theta_bar, psi);
    const int k_max = model.spec().max_radial;
    std::size_t block = 0;
    double power = 1.0;
    for (int n = 0; n <= model.spec().max_degree; ++n, power *= p.r) {
      const std::size_t first = basis.block_start(n, 1);
      for (int j = 1; j <= multiplicity(n, d); ++j, ++block) {
        const double angular = power * psi[block];
        if (angular == 0.0) continue;
        const std::size_t start = basis.block_start(n, j);
        for (int i = 0; i < k_max; ++i)
          out.coeffs[start + i] =
              model.mode_std(start + i) * scale * basis.mode(first + i).radial(rho / domain.radius()) * angular;
      }
    }
    return out;
  }
  Eigen::VectorXd weights(static_cast<Eigen::Index>(rule_.size()));
  for (std::size_t q = 0; q < rule_.size(); ++q)
    weights(q) = poisson_kernel(inner_, z, inner_.from_unit(rule_.nodes()[q]));
  Eigen::Map<Eigen::VectorXd>(out.coeffs.data(), static_cast<Eigen::Index>(out.coeffs.size())) =
      table_.transpose() * weights;
  return out;
}

LinearFunctional PoissonProjector::integrated(const TestFunction& f, int radial_points, int sphere_order) const {
  if (!is_volume_function(f)) throw DomainError("bulk_pairing: test function must be a volume function");
  if (!inner_.contains(support_of(f))) throw DomainError("bulk_pairing: test function support leaks outside the inner ball");
  if (radial_bump(f)) return at(bump_center(f));

  const VolumeRule rule = VolumeRule::ball(support_of(f), radial_points, sphere_order);
  const SpectralModel& model = *model_;
  if (concentric_) {
    LinearFunctional out = model.zero();
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const double w = rule.weights[q] * value_at(f, rule.nodes[q]);
      if (w != 0.0) out += w * at(rule.nodes[q]);
    }
    return out;
  }
  Eigen::VectorXd weights = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(rule_.size()));
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const double w = rule.weights[q] * value_at(f, rule.nodes[q]);
    if (w == 0.0) continue;
    if (inner_.boundary_distance(rule.nodes[q]) < 1e-3 * inner_.radius())
      throw DomainError("bulk_pairing: quadrature node too close to the inner boundary");
    for (std::size_t k = 0; k < rule_.size(); ++k)
      weights(k) += w * poisson_kernel(inner_, rule.nodes[q], inner_.from_unit(rule_.nodes()[k]));
  }
  LinearFunctional out = model.zero();
  Eigen::Map<Eigen::VectorXd>(out.coeffs.data(), static_cast<Eigen::Index>(out.coeffs.size())) =
      table_.transpose() * weights;
  return out;
}

LinearFunctional harmonic_part(const SpectralModel& model, const Ball& inner, const Point& z) {
  return PoissonProjector(model, inner).at(z);
}

LinearFunctional bulk_functional(const SpectralModel& model, const PoissonProjector& projector,
                                 const TestFunction& f) {
  LinearFunctional swept = projector.integrated(f);
  return model.functional(f) - swept;
}

LinearFunctional bulk_functional(const SpectralModel& model, const Ball& inner, const TestFunction& f) {
  return bulk_functional(model, PoissonProjector(model, inner), f);
}

LinearFunctional multi_ball_remainder(const SpectralModel& model, std::span<const Ball> balls,
                                      const TestFunction& f) {
  for (std::size_t a = 0; a < balls.size(); ++a) {
    if (!model.domain().contains(balls[a])) throw DomainError("multi_ball_remainder: ball outside the domain");
    for (std::size_t b = a + 1; b < balls.size(); ++b)
      if (!balls[a].disjoint(balls[b])) throw DomainError("multi_ball_remainder: balls overlap");
  }
  LinearFunctional out = model.functional(f);
  for (const Ball& ball : balls) {
    if (ball.disjoint(support_of(f))) continue;
    out -= bulk_functional(model, ball, restrict_to(f, ball));
  }
  return out;
}

LinearFunctional nested_increment(const SpectralModel& model, const Ball& inner, const Ball& mid, const Point& z) {
  if (!mid.contains(inner)) throw DomainError("nested_increment: inner ball must lie inside mid");
  if (!model.domain().contains(mid)) throw DomainError("nested_increment: mid ball must lie inside the domain");
  if (same_ball(inner, mid)) {
    harmonic_part(model, inner, z);  // validates z
    return model.zero();
  }
  return harmonic_part(model, inner, z) - harmonic_part(model, mid, z);
}

double harmonic_part(const FieldSample& field, const Ball& inner, const Point& z) {
  return pair(field, harmonic_part(*field.model, inner, z));
}

double bulk_pairing(const FieldSample& field, const Ball& inner, const TestFunction& f) {
  return pair(field, bulk_functional(*field.model, inner, f));
}

double multi_ball_remainder(const FieldSample& field, std::span<const Ball> balls, const TestFunction& f) {
  return pair(field, multi_ball_remainder(*field.model, balls, f));
}

double nested_increment(const FieldSample& field, const Ball& inner, const Ball& mid, const Point& z) {
  return pair(field, nested_increment(*field.model, inner, mid, z));
}

Decomposition decompose(const FieldSample& field, const Ball& inner, std::span<const Point> points,
                        std::span<const TestFunction> functions) {
  const SpectralModel& model = *field.model;
  const PoissonProjector projector(model, inner);
  Decomposition out{model.domain(), inner, {}, {}, {}};
  for (const Point& z : points) {
    out.points.push_back(z);
    out.phi_values.push_back(pair(field, projector.at(z)));
  }
  for (const TestFunction& f : functions) out.sub_pairings.push_back(pair(field, bulk_functional(model, projector, f)));
  return out;
}

void write_decomposition_csv(std::ostream& os, std::uint64_t replica, const Decomposition& dec, bool header) {
  const int d = dec.inner.dim();
  if (header) {
    os << "replica";
    for (int k = 0; k < d; ++k) os << ",z" << k;
    os << ",phi_value\n";
  }
  os.precision(17);
  for (std::size_t p = 0; p < dec.points.size(); ++p) {
    os << replica;
    for (int k = 0; k < d; ++k) os << ',' << dec.points[p](k);
    os << ',' << dec.phi_values[p] << '\n';
  }
}

}  // namespace gff
