#include "gff/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>

#include <boost/math/special_functions/bessel.hpp>

#include "gff/parallel.hpp"
#include "gff/quadrature.hpp"
#include "gff/rng.hpp"

namespace gff {
namespace {

constexpr int kDefaultRadialPoints = 96;
constexpr std::size_t kReplicaChunk = 2048;
constexpr std::size_t kOverlapChunks = 16;

// Spherical mean of a Helmholtz solution with wavenumber k over a sphere of
// radius rho, relative to its value at the center.
double spherical_mean_factor(double k_rho, int d) {
  if (d == 2) return boost::math::cyl_bessel_j(0, k_rho);
  if (k_rho < 1e-4) return 1.0 - k_rho * k_rho / 6.0;
  return std::sin(k_rho) / k_rho;
}

struct RadialProfile {
  Point center;
  double lo;
  double hi;
  std::function<double(double)> profile;
};

std::optional<RadialProfile> radial_profile(const TestFunction& f) {
  if (const auto* m = std::get_if<RadialMollifier>(&f))
    return RadialProfile{m->center(), 0.0, m->eps(), [m](double rho) { return m->profile(rho); }};
  if (const auto* a = std::get_if<AnnularBump>(&f))
    return RadialProfile{a->center(), a->inner(), a->outer(), [a](double rho) { return a->profile(rho); }};
  return std::nullopt;
}

int default_sphere_order(const Basis& basis) { return std::max(2 * basis.spec().max_degree + 8, 64); }

// Angular degree, about the center of a support of radius rho, that the
// truncated modes can excite: N when the support is concentric with the
// domain, otherwise about alpha_max rho / R.
double mode_bandwidth(const Basis& basis, const Ball& domain, const Ball& support) {
  const double alpha = basis.mode(basis.size() - 1).alpha;
  const double R = domain.radius();
  const bool concentric = (support.center() - domain.center()).norm() <= 1e-14 * R;
  if (concentric) return basis.spec().max_degree;
  return alpha * std::min(support.radius(), 2.0 * R) / R;
}

int volume_sphere_order(const Basis& basis, const Ball& domain, const Ball& support) {
  return static_cast<int>(std::ceil(0.5 * (mode_bandwidth(basis, domain, support) + 24.0)));
}

int volume_radial_points(const Basis& basis, const Ball& domain, const Ball& support) {
  const double alpha = basis.mode(basis.size() - 1).alpha;
  return static_cast<int>(std::ceil(0.5 * alpha * std::min(support.radius(), 2.0 * domain.radius()) /
                                    domain.radius())) + 32;
}

// Sum of w_q g(x_q) e^D_k(x_q) over quadrature nodes, for every mode k.
std::vector<double> overlaps_by_nodes(const Basis& basis, const Ball& domain, const std::vector<Point>& nodes,
                                      const std::vector<double>& weights,
                                      const std::function<double(const Point&)>& g) {
  const std::size_t modes = basis.size();
  const std::size_t chunks = std::min(kOverlapChunks, std::max<std::size_t>(nodes.size(), 1));
  std::vector<std::vector<double>> partial(chunks, std::vector<double>(modes, 0.0));
  parallel_for(chunks, [&](std::size_t c) {
    std::vector<double> values(modes);
    std::vector<double>& acc = partial[c];
    for (std::size_t q = c; q < nodes.size(); q += chunks) {
      const Point& x = nodes[q];
      if (!domain.contains_closed(x)) continue;
      const double w = weights[q] * g(x);
      if (w == 0.0) continue;
      basis.evaluate(domain.to_unit(x), values);
      for (std::size_t k = 0; k < modes; ++k) acc[k] += w * values[k];
    }
  });
  const double scale = std::pow(domain.radius(), -0.5 * basis.dim());
  std::vector<double> out(modes, 0.0);
  for (const auto& acc : partial)
    for (std::size_t k = 0; k < modes; ++k) out[k] += acc[k];
  for (double& v : out) v *= scale;
  return out;
}

// Radial test function about z with support inside the closed domain:
// <e^D_k, f> = e^D_k(z) * integral of f(rho) |S| rho^(d-1) M(alpha_k rho / R).
std::vector<double> radial_overlaps(const Basis& basis, const Ball& domain, const RadialProfile& p,
                                    int radial_points) {
  const int d = basis.dim();
  const double R = domain.radius();
  const LineRule rule = gauss_legendre(radial_points, p.lo, p.hi);
  std::vector<double> weights(rule.size());
  for (std::size_t q = 0; q < rule.size(); ++q)
    weights[q] = rule.weights[q] * p.profile(rule.nodes[q]) * sphere_area(d) * std::pow(rule.nodes[q], d - 1);

  std::vector<double> out(basis.size());
  basis.evaluate(domain.to_unit(p.center), out);
  const double scale = std::pow(R, -0.5 * d);
  const int k_max = basis.spec().max_radial;
  std::vector<double> factor(k_max);
  for (int n = 0; n <= basis.spec().max_degree; ++n) {
    const std::size_t first = basis.block_start(n, 1);
    bool all_zero = true;
    for (int j = 1; j <= multiplicity(n, d) && all_zero; ++j)
      for (int i = 0; i < k_max; ++i)
        if (out[basis.block_start(n, j) + i] != 0.0) {
          all_zero = false;
          break;
        }
    if (all_zero) continue;
    for (int i = 0; i < k_max; ++i) {
      const double k = basis.mode(first + i).alpha / R;
      double sum = 0.0;
      for (std::size_t q = 0; q < rule.size(); ++q) sum += weights[q] * spherical_mean_factor(k * rule.nodes[q], d);
      factor[i] = sum * scale;
    }
    for (int j = 1; j <= multiplicity(n, d); ++j) {
      const std::size_t start = basis.block_start(n, j);
      for (int i = 0; i < k_max; ++i) out[start + i] *= factor[i];
    }
  }
  return out;
}

std::vector<double> sphere_overlaps(const Basis& basis, const Ball& domain, const SphereMeasure& m,
                                    const OverlapOptions& options) {
  const int d = basis.dim();
  const double R = domain.radius();
  const double rho = m.sphere.radius();
  const double scale = std::pow(R, -0.5 * d);
  const int k_max = basis.spec().max_radial;
  const bool concentric = (m.sphere.center() - domain.center()).norm() <= 1e-14 * R;
  const int order = options.sphere_order > 0 ? options.sphere_order : default_sphere_order(basis);

  if (concentric && rho <= R * (1.0 + 1e-12)) {
    // The radial and angular parts factorise on a sphere about the domain center.
    std::vector<double> angular(basis.angular_count(), 0.0);
    if (!m.density) {
      angular[0] = 1.0;
    } else {
      const SphereRule rule(d, order);
      std::vector<double> psi;
      for (std::size_t q = 0; q < rule.size(); ++q) {
        const double w = rule.weights()[q] * m.density(rule.nodes()[q]);
        eval_psi_all(basis.spec().max_degree, rule.nodes()[q], psi);
        for (std::size_t b = 0; b < angular.size(); ++b) angular[b] += w * psi[b];
      }
    }
    std::vector<double> out(basis.size(), 0.0);
    const double t = std::min(rho / R, 1.0);
    std::size_t block = 0;
    for (int n = 0; n <= basis.spec().max_degree; ++n) {
      const std::size_t first = basis.block_start(n, 1);
      for (int j = 1; j <= multiplicity(n, d); ++j, ++block) {
        if (angular[block] == 0.0) continue;
        const std::size_t start = basis.block_start(n, j);
        for (int i = 0; i < k_max; ++i)
          out[start + i] = scale * basis.mode(first + i).radial(t) * angular[block];
      }
    }
    return out;
  }

  if (!m.density && domain.contains(m.sphere)) {
    std::vector<double> out(basis.size());
    basis.evaluate(domain.to_unit(m.sphere.center()), out);
    for (std::size_t k = 0; k < out.size(); ++k)
      out[k] *= scale * spherical_mean_factor(basis.mode(k).alpha / R * rho, d);
    return out;
  }

  const SphereRule rule(d, options.sphere_order > 0 ? options.sphere_order
                                                    : volume_sphere_order(basis, domain, m.sphere));
  std::vector<Point> nodes;
  nodes.reserve(rule.size());
  std::vector<double> weights = rule.weights();
  for (std::size_t q = 0; q < rule.size(); ++q) {
    nodes.push_back(m.sphere.from_unit(rule.nodes()[q]));
    if (m.density) weights[q] *= m.density(rule.nodes()[q]);
  }
  return overlaps_by_nodes(basis, domain, nodes, weights, [](const Point&) { return 1.0; });
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  const std::size_t n = std::min(a.size(), b.size());
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) s += a[k] * b[k];
  return s;
}

}  // namespace

std::vector<double> mode_overlaps(const Basis& basis, const Ball& domain, const TestFunction& f,
                                  const OverlapOptions& options) {
  const int d = basis.dim();
  if (dim_of(f) != d || domain.dim() != d) throw DomainError("mode_overlaps: dimension mismatch");
  const Ball support = support_of(f);
  if (domain.disjoint(support)) return std::vector<double>(basis.size(), 0.0);

  if (const auto* m = std::get_if<SphereMeasure>(&f)) return sphere_overlaps(basis, domain, *m, options);

  const int radial_points = options.radial_points > 0 ? options.radial_points : kDefaultRadialPoints;
  if (auto p = radial_profile(f); p && domain.contains(support))
    return radial_overlaps(basis, domain, *p, radial_points);

  const int order =
      options.sphere_order > 0 ? options.sphere_order : volume_sphere_order(basis, domain, support);
  const int points =
      options.radial_points > 0 ? options.radial_points : volume_radial_points(basis, domain, support);
  VolumeRule rule;
  if (const auto* a = std::get_if<AnnularBump>(&f))
    rule = VolumeRule::shell(a->center(), a->inner(), a->outer(), points, order);
  else
    rule = VolumeRule::ball(support, points, order);
  return overlaps_by_nodes(basis, domain, rule.nodes, rule.weights,
                           [&f](const Point& x) { return value_at(f, x); });
}

std::size_t LinearFunctional::active_end() const {
  std::size_t end = coeffs.size();
  while (end > 0 && coeffs[end - 1] == 0.0) --end;
  return end;
}

double LinearFunctional::variance() const { return dot(coeffs, coeffs); }

double LinearFunctional::covariance(const LinearFunctional& other) const { return dot(coeffs, other.coeffs); }

LinearFunctional& LinearFunctional::operator+=(const LinearFunctional& other) {
  if (other.coeffs.size() != coeffs.size()) throw DomainError("LinearFunctional: size mismatch");
  for (std::size_t k = 0; k < coeffs.size(); ++k) coeffs[k] += other.coeffs[k];
  return *this;
}

LinearFunctional& LinearFunctional::operator-=(const LinearFunctional& other) {
  if (other.coeffs.size() != coeffs.size()) throw DomainError("LinearFunctional: size mismatch");
  for (std::size_t k = 0; k < coeffs.size(); ++k) coeffs[k] -= other.coeffs[k];
  return *this;
}

LinearFunctional& LinearFunctional::operator*=(double a) {
  for (double& c : coeffs) c *= a;
  return *this;
}

SpectralModel::SpectralModel(const BasisSpec& spec) : SpectralModel(spec, Ball::unit(spec.dim)) {}

SpectralModel::SpectralModel(const BasisSpec& spec, Ball domain) : basis_(spec), domain_(std::move(domain)) {
  if (domain_.dim() != spec.dim) throw DomainError("SpectralModel: domain dimension mismatch");
  const double c = green_normalization(spec.dim) * domain_.radius() * domain_.radius();
  std_.resize(basis_.size());
  for (std::size_t k = 0; k < std_.size(); ++k) std_[k] = std::sqrt(c / basis_.mode(k).lambda);
}

LinearFunctional SpectralModel::functional(const TestFunction& f, const OverlapOptions& options) const {
  const std::vector<double> ov = mode_overlaps(basis_, domain_, f, options);
  return from_overlaps(ov);
}

LinearFunctional SpectralModel::from_overlaps(std::span<const double> overlaps) const {
  if (overlaps.size() != size()) throw DomainError("SpectralModel: overlap count mismatch");
  LinearFunctional out{std::vector<double>(size())};
  for (std::size_t k = 0; k < size(); ++k) out.coeffs[k] = std_[k] * overlaps[k];
  return out;
}

LinearFunctional SpectralModel::nu_functional(int n, int j, double r) const {
  if (!(r > 0.0 && r < 1.0)) throw DomainError("nu_functional: radius must lie in (0, 1)");
  if (domain_.radius() != 1.0 || domain_.center().norm() != 0.0)
    throw DomainError("nu_functional: requires the unit-ball domain");
  LinearFunctional out = zero();
  const std::size_t start = basis_.block_start(n, j);
  for (int i = 0; i < spec().max_radial; ++i)
    out.coeffs[start + i] = std_[start + i] * basis_.mode(start + i).radial(r);
  return out;
}

FieldSample sample_field(std::shared_ptr<const SpectralModel> model, std::uint64_t seed, std::uint64_t replica) {
  if (!model) throw DomainError("sample_field: missing model");
  FieldSample out;
  out.xi.resize(model->size());
  ReplicaRng rng(seed, replica);
  for (double& x : out.xi) x = rng.normal();
  out.model = std::move(model);
  out.lineage = {seed, replica};
  return out;
}

double pair(const FieldSample& field, const LinearFunctional& f) {
  if (f.coeffs.size() != field.xi.size()) throw DomainError("pair: functional does not match the field");
  return dot(f.coeffs, field.xi);
}

double pair(const FieldSample& field, const TestFunction& f) { return pair(field, field.model->functional(f)); }

double pair_nu(const FieldSample& field, int n, int j, double r) {
  return pair(field, field.model->nu_functional(n, j, r));
}

Eigen::MatrixXd sample_pairings(const SpectralModel& model, std::span<const LinearFunctional> functionals,
                                std::uint64_t seed, std::size_t replicas, std::size_t first_replica) {
  const std::size_t m = functionals.size();
  std::size_t active = 0;
  for (const auto& f : functionals) {
    if (f.coeffs.size() != model.size()) throw DomainError("sample_pairings: functional does not match the model");
    active = std::max(active, f.active_end());
  }
  Eigen::MatrixXd weights = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(active), static_cast<Eigen::Index>(m));
  for (std::size_t c = 0; c < m; ++c)
    for (std::size_t k = 0; k < active; ++k) weights(k, c) = functionals[c].coeffs[k];

  Eigen::MatrixXd out(static_cast<Eigen::Index>(replicas), static_cast<Eigen::Index>(m));
  const std::size_t chunks = (replicas + kReplicaChunk - 1) / kReplicaChunk;
  parallel_for(chunks, [&](std::size_t c) {
    const std::size_t begin = c * kReplicaChunk;
    const std::size_t rows = std::min(kReplicaChunk, replicas - begin);
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> xi(rows, active);
    for (std::size_t r = 0; r < rows; ++r) {
      ReplicaRng rng(seed, first_replica + begin + r);
      for (std::size_t k = 0; k < active; ++k) xi(r, k) = rng.normal();
    }
    out.block(begin, 0, rows, m).noalias() = xi * weights;
  });
  return out;
}

double spherical_average_covariance(double r, double u, int dim) {
  if (!(r > 0.0 && u > 0.0)) throw DomainError("spherical_average_covariance: radii must be positive");
  return scaling_s(std::max(r, u), dim) - scaling_s(1.0, dim);
}

double nu_covariance(int n, double r, double u, int dim) {
  if (n < 0) throw DomainError("nu_covariance: degree must be non-negative");
  const double m = std::max(r, u);
  if (n == 0) return spherical_average_covariance(r, u, dim);
  const double e = 2.0 * n + dim - 2.0;
  return (std::pow(m, -e) - 1.0) / e;
}

SphericalAverageSampler::SphericalAverageSampler(int dim, std::vector<double> radii)
    : dim_(dim), radii_(std::move(radii)) {
  require_increasing_radii(radii_, true);
  const auto m = static_cast<Eigen::Index>(radii_.size());
  cov_.resize(m, m);
  for (Eigen::Index a = 0; a < m; ++a)
    for (Eigen::Index b = 0; b < m; ++b) cov_(a, b) = spherical_average_covariance(radii_[a], radii_[b], dim_);
  Eigen::LLT<Eigen::MatrixXd> llt(cov_);
  if (llt.info() != Eigen::Success) throw DomainError("SphericalAverageSampler: covariance not positive definite");
  lower_ = llt.matrixL();
}

Eigen::MatrixXd SphericalAverageSampler::sample(std::uint64_t seed, std::size_t replicas,
                                                std::size_t first_replica) const {
  const auto m = static_cast<Eigen::Index>(radii_.size());
  Eigen::MatrixXd out(static_cast<Eigen::Index>(replicas), m);
  const std::size_t chunks = (replicas + kReplicaChunk - 1) / kReplicaChunk;
  const Eigen::MatrixXd upper = lower_.transpose();
  parallel_for(chunks, [&](std::size_t c) {
    const std::size_t begin = c * kReplicaChunk;
    const std::size_t rows = std::min(kReplicaChunk, replicas - begin);
    Eigen::MatrixXd z(rows, m);
    for (std::size_t r = 0; r < rows; ++r) {
      ReplicaRng rng(seed, first_replica + begin + r);
      for (Eigen::Index k = 0; k < m; ++k) z(r, k) = rng.normal();
    }
    out.block(begin, 0, rows, m).noalias() = z * upper;
  });
  return out;
}

void require_increasing_radii(std::span<const double> radii, bool open_unit_interval) {
  if (radii.empty()) throw DomainError("radius grid is empty");
  for (std::size_t k = 0; k < radii.size(); ++k) {
    if (!std::isfinite(radii[k]) || radii[k] <= 0.0) throw DomainError("radius grid must be positive");
    if (open_unit_interval && radii[k] >= 1.0) throw DomainError("radius grid must lie in (0, 1)");
    if (k > 0 && !(radii[k] > radii[k - 1])) throw DomainError("radius grid must be strictly increasing");
  }
}

RadialPath spherical_average_path(const FieldSample& field, std::span<const double> radii) {
  require_increasing_radii(radii, true);
  RadialPath path;
  path.radii.assign(radii.begin(), radii.end());
  for (double r : radii) path.values.push_back(pair_nu(field, 0, 1, r));
  return path;
}

RadialPath spherical_average_path(const SphericalAverageSampler& sampler, std::uint64_t seed,
                                  std::uint64_t replica) {
  const Eigen::MatrixXd row = sampler.sample(seed, 1, replica);
  RadialPath path;
  path.radii = sampler.radii();
  path.values.assign(row.data(), row.data() + row.size());
  return path;
}

std::vector<LinearFunctional> a_process_functionals(const SpectralModel& model, std::span<const ATerm> terms,
                                                    std::span<const double> radii) {
  if (terms.empty()) throw DomainError("a_process: empty coefficient list");
  require_increasing_radii(radii, true);
  std::vector<LinearFunctional> out;
  out.reserve(radii.size());
  for (double r : radii) {
    LinearFunctional f = model.zero();
    for (const ATerm& t : terms) f += (t.a * std::pow(r, -t.n)) * model.nu_functional(t.n, t.j, r);
    out.push_back(std::move(f));
  }
  return out;
}

RadialPath a_process(const FieldSample& field, std::span<const ATerm> terms, std::span<const double> radii) {
  const std::vector<LinearFunctional> fs = a_process_functionals(*field.model, terms, radii);
  RadialPath path;
  path.kind = RadialPath::Kind::AProcess;
  path.radii.assign(radii.begin(), radii.end());
  path.terms.assign(terms.begin(), terms.end());
  for (const auto& f : fs) path.values.push_back(pair(field, f));
  return path;
}

Estimate covariance_estimate(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n != y.size()) throw DomainError("covariance_estimate: sample sizes differ");
  if (n < 2) throw DomainError("covariance_estimate: need at least two observations");
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    mx += x[k];
    my += y[k];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) s += (x[k] - mx) * (y[k] - my);
  const double nn = static_cast<double>(n);
  Estimate out{s / (nn - 1.0), 0.0};
  // Leave-one-out covariances differ from their mean by a multiple of
  // p_k - mean(p), p_k the centred cross products.
  const double pbar = s / nn;
  double ss = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double p = (x[k] - mx) * (y[k] - my) - pbar;
    ss += p * p;
  }
  if (ss == 0.0) return out;
  if (n == 2) {
    out.stderr = std::numeric_limits<double>::infinity();
    return out;
  }
  out.stderr = nn / ((nn - 1.0) * (nn - 2.0)) * std::sqrt((nn - 1.0) / nn * ss);
  return out;
}

}  // namespace gff
