#include <algorithm>
#include <cmath>
#include <sstream>

#include "common.hpp"
#include "gff/kernels.hpp"
#include "gff/quadrature.hpp"
#include "gff/rng.hpp"

namespace gff {
namespace {

constexpr int kMaxDegree = 4;

struct Harmonic {
  int n;
  int j;
};

std::vector<Harmonic> harmonics(int d, int max_degree) {
  std::vector<Harmonic> out;
  for (int n = 0; n <= max_degree; ++n)
    for (int j = 1; j <= multiplicity(n, d); ++j) out.push_back({n, j});
  return out;
}

struct Worst {
  double value = 0.0;
  std::string where;

  void update(double v, const std::string& label) {
    if (v > value || where.empty()) {
      value = std::max(value, v);
      where = label;
    }
  }
};

std::string label(const char* what, int m, int l, int n, int j) {
  std::ostringstream os;
  os << what << " (" << m << ',' << l << ") against psi_(" << n << ',' << j << ')';
  return os.str();
}

}  // namespace

std::vector<StatReport> suite_constancy(const SuiteContext& ctx) {
  detail::Reporter rep(ctx, "constancy", "r^-n nu_r^psi of a harmonic function is constant in r");
  const std::vector<double> radii{0.1, 0.2, 0.35, 0.5, 0.6};
  const double tol = ctx.tolerance("constancy.deviation", 1e-8);
  const double orth_tol = ctx.tolerance("constancy.orthogonality", 1e-10);

  for (int d : {2, 3}) {
    const std::string dl = detail::dim_label(d);
    const auto hs = harmonics(d, kMaxDegree);

    Worst matched;
    Worst unit_value;
    Worst orthogonal;
    for (const auto& phi : hs) {
      const auto f = [&](const Point& z) { return solid_harmonic(phi.n, phi.j, z); };
      for (const auto& psi : hs) {
        if (psi.n == phi.n) {
          matched.update(check_constancy(psi.n, psi.j, f, radii, d), label("solid harmonic", phi.n, phi.j, psi.n, psi.j));
          const double expect = psi.j == phi.j ? 1.0 : 0.0;
          for (double r : radii)
            unit_value.update(std::abs(std::pow(r, -psi.n) * nu_pair(psi.n, psi.j, r, f, d) - expect),
                              label("solid harmonic", phi.n, phi.j, psi.n, psi.j));
        } else {
          for (double r : radii)
            orthogonal.update(std::abs(nu_pair(psi.n, psi.j, r, f, d)),
                              label("solid harmonic", phi.n, phi.j, psi.n, psi.j));
        }
      }
    }
    const std::string trunc = "exact";
    rep.add(deterministic(rep.header(dl + "/solid_harmonics", trunc, 0), dl + "/solid_harmonics",
                          "max deviation of r^-n nu_r over r for solid harmonics of degree <= 4", matched.value, 0.0,
                          matched.value, tol, matched.where));
    rep.add(deterministic(rep.header(dl + "/solid_harmonic_value", trunc, 0), dl + "/solid_harmonic_value",
                          "r^-n nu_r^psi(|z|^n psi'(z/|z|)) = <psi, psi'>", unit_value.value, 0.0, unit_value.value,
                          tol, unit_value.where));
    rep.add(deterministic(rep.header(dl + "/orthogonality", trunc, 0), dl + "/orthogonality",
                          "nu_r^psi vanishes on harmonics of another degree", orthogonal.value, 0.0, orthogonal.value,
                          orth_tol, orthogonal.where));

    // Random combinations of solid harmonics of degree <= 4, and Poisson
    // extensions of random boundary data of degree <= 6; both are harmonic
    // and r^-n nu_r^psi recovers the coefficient of psi.
    const auto data_harmonics = harmonics(d, 6);
    const SphereRule poisson_rule(d, 24);
    const Ball unit = Ball::unit(d);
    Worst combo;
    Worst combo_coeff;
    Worst poisson;
    Worst poisson_coeff;
    for (int trial = 0; trial < 3; ++trial) {
      ReplicaRng rng(ctx.stream("constancy", dl + "/random"), static_cast<std::uint64_t>(trial));
      std::vector<double> coeffs(data_harmonics.size());
      for (double& c : coeffs) c = rng.normal();
      const auto series = [&](const Point& z, int max_degree) {
        double v = 0.0;
        for (std::size_t k = 0; k < data_harmonics.size(); ++k)
          if (data_harmonics[k].n <= max_degree)
            v += coeffs[k] * solid_harmonic(data_harmonics[k].n, data_harmonics[k].j, z);
        return v;
      };
      const auto f = [&](const Point& z) { return series(z, kMaxDegree); };
      std::vector<double> boundary(poisson_rule.size());
      for (std::size_t q = 0; q < poisson_rule.size(); ++q) boundary[q] = series(poisson_rule.nodes()[q], 6);
      const auto g = [&](const Point& z) {
        double v = 0.0;
        for (std::size_t q = 0; q < poisson_rule.size(); ++q)
          v += poisson_rule.weights()[q] * poisson_kernel(unit, z, poisson_rule.nodes()[q]) * boundary[q];
        return v;
      };
      for (std::size_t k = 0; k < hs.size(); ++k) {
        const auto& psi = hs[k];
        const std::string where = "trial " + std::to_string(trial) + " psi_(" + std::to_string(psi.n) + ',' +
                                  std::to_string(psi.j) + ')';
        combo.update(check_constancy(psi.n, psi.j, f, radii, d), where);
        poisson.update(check_constancy(psi.n, psi.j, g, radii, d), where);
        const double r = 0.35;
        combo_coeff.update(std::abs(std::pow(r, -psi.n) * nu_pair(psi.n, psi.j, r, f, d) - coeffs[k]), where);
        poisson_coeff.update(std::abs(std::pow(r, -psi.n) * nu_pair(psi.n, psi.j, r, g, d) - coeffs[k]), where);
      }
    }
    rep.add(deterministic(rep.header(dl + "/random_combinations", trunc, 0), dl + "/random_combinations",
                          "max deviation of r^-n nu_r over r for random harmonic polynomials", combo.value, 0.0,
                          combo.value, tol, combo.where));
    rep.add(deterministic(rep.header(dl + "/random_combination_coefficients", trunc, 0),
                          dl + "/random_combination_coefficients",
                          "r^-n nu_r^psi equals the psi coefficient of a random harmonic polynomial", combo_coeff.value,
                          0.0, combo_coeff.value, tol, combo_coeff.where));
    rep.add(deterministic(rep.header(dl + "/poisson_extensions", "sphere order 24", 0), dl + "/poisson_extensions",
                          "max deviation of r^-n nu_r over r for Poisson extensions of random boundary data",
                          poisson.value, 0.0, poisson.value, tol, poisson.where));
    rep.add(deterministic(rep.header(dl + "/poisson_extension_coefficients", "sphere order 24", 0),
                          dl + "/poisson_extension_coefficients",
                          "r^-n nu_r^psi of a Poisson extension equals the boundary coefficient of psi",
                          poisson_coeff.value, 0.0, poisson_coeff.value, tol, poisson_coeff.where));
  }
  return std::move(rep.reports());
}

}  // namespace gff
