#include <algorithm>
#include <cmath>
#include <sstream>

#include "common.hpp"
#include "gff/quadrature.hpp"

namespace gff {
namespace {

double psi_gram_error(int dim, int max_degree) {
  const SphereRule rule(dim, SphereRule::order_for_degree(2 * max_degree));
  std::vector<double> psi;
  eval_psi_all(max_degree, rule.nodes()[0], psi);
  const std::size_t m = psi.size();
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  for (std::size_t q = 0; q < rule.size(); ++q) {
    eval_psi_all(max_degree, rule.nodes()[q], psi);
    const Eigen::Map<const Eigen::VectorXd> v(psi.data(), static_cast<Eigen::Index>(m));
    gram.noalias() += rule.weights()[q] * v * v.transpose();
  }
  return (gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

// Angular orthogonality is the psi Gram; the radial factors of each (n, j)
// block are checked here against r^(d-1) |S^(d-1)| dr.
double radial_gram_error(const Basis& basis) {
  const int d = basis.dim();
  const int k_max = basis.spec().max_radial;
  const double alpha_max = basis.mode(basis.size() - 1).alpha;
  const int points = std::max(200, static_cast<int>(2.0 * alpha_max) + 64);
  const LineRule rule = gauss_legendre(points, 0.0, 1.0);
  double err = 0.0;
  Eigen::MatrixXd values(k_max, static_cast<Eigen::Index>(rule.size()));
  for (int n = 0; n <= basis.spec().max_degree; ++n) {
    const std::size_t start = basis.block_start(n, 1);
    for (int i = 0; i < k_max; ++i)
      for (std::size_t q = 0; q < rule.size(); ++q)
        values(i, static_cast<Eigen::Index>(q)) =
            basis.mode(start + i).radial(rule.nodes[q]) *
            std::sqrt(rule.weights[q] * std::pow(rule.nodes[q], d - 1) * sphere_area(d));
    const Eigen::MatrixXd gram = values * values.transpose();
    err = std::max(err, (gram - Eigen::MatrixXd::Identity(k_max, k_max)).cwiseAbs().maxCoeff());
  }
  return err;
}

double volume_gram_error(int d) {
  const Basis basis(BasisSpec{d, 4, 6});
  const VolumeRule rule = VolumeRule::ball(Ball::unit(d), 80, 12);
  const auto m = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(m, m);
  Eigen::VectorXd v(m);
  for (std::size_t q = 0; q < rule.size(); ++q) {
    basis.evaluate(rule.nodes[q], std::span<double>(v.data(), static_cast<std::size_t>(m)));
    gram.noalias() += rule.weights[q] * v * v.transpose();
  }
  return (gram - Eigen::MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff();
}

// |Laplacian_h e + lambda e| / (lambda max|e|) over interior points, central
// differences with step h.
double eigen_residual(const Basis& basis, std::string& worst) {
  const int d = basis.dim();
  const auto& spec = basis.spec();
  std::vector<std::size_t> modes;
  for (int n = 0; n <= std::min(spec.max_degree, 4); ++n)
    for (int i : {1, 2, std::max(1, spec.max_radial / 2), spec.max_radial}) modes.push_back(basis.index(n, 1, i));
  modes.push_back(basis.index(spec.max_degree, 1, 1));
  modes.push_back(basis.index(spec.max_degree, multiplicity(spec.max_degree, d), spec.max_radial));
  std::sort(modes.begin(), modes.end());
  modes.erase(std::unique(modes.begin(), modes.end()), modes.end());

  std::vector<Point> points;
  for (int k = 0; k < 8; ++k) {
    const double r = 0.1 + 0.1 * k;
    Point p = Point::Zero(d);
    p(0) = r * std::cos(0.7 + 1.3 * k);
    p(1) = r * std::sin(0.7 + 1.3 * k);
    if (d == 3) {
      p *= std::cos(0.4 * k - 1.0);
      p(2) = r * std::sin(0.4 * k - 1.0);
    }
    points.push_back(p);
  }
  const double h = 1e-4;
  double worst_value = 0.0;
  for (std::size_t k : modes) {
    const auto& e = basis.mode(k);
    double scale = 0.0;
    double res = 0.0;
    for (const Point& z : points) {
      const double c = e(z);
      double lap = 0.0;
      for (int a = 0; a < d; ++a) {
        Point zp = z;
        Point zm = z;
        zp(a) += h;
        zm(a) -= h;
        lap += (e(zp) - 2.0 * c + e(zm)) / (h * h);
      }
      scale = std::max(scale, std::abs(c));
      res = std::max(res, std::abs(lap + e.lambda * c));
    }
    const double rel = res / (e.lambda * scale);
    if (rel > worst_value) {
      worst_value = rel;
      std::ostringstream os;
      os << "worst mode (n,j,i)=(" << e.n << ',' << e.j << ',' << e.i << ')';
      worst = os.str();
    }
  }
  return worst_value;
}

}  // namespace

std::vector<StatReport> suite_basis(const SuiteContext& ctx) {
  detail::Reporter rep(ctx, "basis", "orthonormal Dirichlet eigenbasis of the ball");
  const int d = ctx.dim;
  const BasisSpec spec = ctx.base_spec(d);
  const Basis basis(spec);
  const std::string trunc = detail::truncation_label(spec);

  const double psi_tol = ctx.tolerance("basis.psi_gram", 1e-10);
  const double e_tol = ctx.tolerance("basis.e_gram", 1e-8);

  const double psi_err = psi_gram_error(d, spec.max_degree);
  rep.add(deterministic(rep.header("psi_gram", trunc, 0, "orthonormal spherical harmonics"), "psi_gram",
                        "max |Gram - I| of psi_{n,j}, n <= N, on the sphere", psi_err, 0.0, psi_err, psi_tol));

  const double radial_err = radial_gram_error(basis);
  rep.add(deterministic(rep.header("e_gram_radial", trunc, 0), "e_gram_radial",
                        "max |Gram - I| of the radial factors of every (n, j) block", radial_err, 0.0, radial_err,
                        e_tol, "angular orthogonality is covered by psi_gram"));

  const double vol_err = volume_gram_error(d);
  rep.add(deterministic(rep.header("e_gram_volume", detail::truncation_label(BasisSpec{d, 4, 6}), 0),
                        "e_gram_volume", "max |Gram - I| of e_k by volume quadrature on the ball", vol_err, 0.0,
                        vol_err, e_tol));

  std::string worst;
  const double eig = eigen_residual(basis, worst);
  rep.add(deterministic(rep.header("eigen_residual", trunc, 0, "Dirichlet eigen-equation"), "eigen_residual",
                        "finite-difference |Lap e + lambda e| / (lambda max|e|), h = 1e-4", eig, 0.0, eig,
                        ctx.tolerance("basis.eigen_residual", 1e-3), worst));

  double zero_res = 0.0;
  for (const auto& e : basis.modes()) {
    zero_res = std::max(zero_res, std::abs(radial_bessel(e.n, e.alpha, d)));
  }
  rep.add(deterministic(rep.header("bessel_zero", trunc, 0, "Dirichlet boundary condition"), "bessel_zero",
                        "max |f_n(alpha_{n,i})| over the truncation", zero_res, 0.0, zero_res,
                        ctx.tolerance("basis.zero_residual", 1e-12)));

  std::size_t expected = 0;
  for (int n = 0; n <= spec.max_degree; ++n)
    expected += static_cast<std::size_t>(multiplicity(n, d) * spec.max_radial);
  std::ostringstream manifest;
  basis.write_manifest(manifest);
  const std::string text = manifest.str();
  const auto rows = static_cast<double>(std::count(text.begin(), text.end(), '\n') - 1);
  rep.add(deterministic(rep.header("manifest_rows", trunc, 0), "manifest_rows",
                        "manifest rows = sum over n of M_n * K_max", rows, static_cast<double>(expected),
                        std::abs(rows - static_cast<double>(expected)), 0.0));
  return std::move(rep.reports());
}

}  // namespace gff
