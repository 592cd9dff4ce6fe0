#include "gff/harmonics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/spherical_harmonic.hpp>

namespace gff {
namespace {

void require_supported_dim(int d, const char* what) {
  if (d != 2 && d != 3) throw DomainError(std::string(what) + ": only d = 2 and d = 3 are supported");
}

double radial_bessel_prime(int n, double x, int d) {
  if (d == 2) {
    if (n == 0) return -boost::math::cyl_bessel_j(1, x);
    return 0.5 * (boost::math::cyl_bessel_j(n - 1, x) - boost::math::cyl_bessel_j(n + 1, x));
  }
  if (n == 0) return -boost::math::sph_bessel(1u, x);
  return boost::math::sph_bessel(static_cast<unsigned>(n - 1), x) -
         (n + 1) / x * boost::math::sph_bessel(static_cast<unsigned>(n), x);
}

// Root of f_n in (a, b) where f_n changes sign: bisection to a narrow
// bracket, then safeguarded Newton.
double refine_zero(int n, double a, double b, int d) {
  double fa = radial_bessel(n, a, d);
  double fb = radial_bessel(n, b, d);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0))
    throw std::logic_error("radial_zero: bracket without sign change (n = " + std::to_string(n) + ")");
  for (int it = 0; it < 40 && (b - a) > 1e-6 * b; ++it) {
    const double m = 0.5 * (a + b);
    const double fm = radial_bessel(n, m, d);
    if (fm == 0.0) return m;
    if ((fm > 0.0) == (fa > 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  double x = 0.5 * (a + b);
  for (int it = 0; it < 50; ++it) {
    const double fx = radial_bessel(n, x, d);
    if (fx == 0.0) return x;
    if ((fx > 0.0) == (fa > 0.0)) {
      a = x;
      fa = fx;
    } else {
      b = x;
    }
    const double step = fx / radial_bessel_prime(n, x, d);
    double next = x - step;
    if (!(next > a && next < b)) next = 0.5 * (a + b);
    if (std::abs(next - x) <= 1e-15 * x) return next;
    x = next;
  }
  return x;
}

// Zeros are built order by order: the zeros of order n interlace with those
// of order n - 1, so consecutive zeros of order n - 1 bracket each zero of
// order n.
class ZeroTable {
 public:
  explicit ZeroTable(int d) : d_(d) {}

  double get(int n, int i) {
    std::lock_guard lock(mutex_);
    ensure(n, i);
    return zeros_[n][i - 1];
  }

 private:
  void ensure(int n, int count) {
    if (static_cast<int>(zeros_.size()) <= n) zeros_.resize(n + 1);
    std::vector<double>& row = zeros_[n];
    if (static_cast<int>(row.size()) >= count) return;
    if (n > 0) ensure(n - 1, count + 1);
    for (int i = static_cast<int>(row.size()) + 1; i <= count; ++i) {
      double a;
      double b;
      if (n == 0) {
        if (d_ == 3) {
          row.push_back(refine_zero(0, (i - 0.5) * std::numbers::pi, (i + 0.5) * std::numbers::pi, d_));
          continue;
        }
        a = (i - 0.5) * std::numbers::pi;
        b = i * std::numbers::pi;
      } else {
        a = zeros_[n - 1][i - 1];
        b = zeros_[n - 1][i];
      }
      row.push_back(refine_zero(n, a, b, d_));
    }
  }

  int d_;
  std::mutex mutex_;
  std::vector<std::vector<double>> zeros_;
};

ZeroTable& zero_table(int d) {
  static ZeroTable two(2);
  static ZeroTable three(3);
  return d == 2 ? two : three;
}

// f_n on a uniform grid of [0, x_max] with first and second derivatives,
// interpolated by quintic Hermite polynomials (error below 1e-13 at the
// grid step used). Arguments below kDirect go to Boost directly.
class RadialTable {
 public:
  static constexpr double kStep = 0.03;
  static constexpr double kDirect = 1.0;

  RadialTable(int d, int max_order, double x_max)
      : d_(d), max_order_(max_order), cells_(static_cast<int>(std::ceil(x_max / kStep)) + 1) {
    const auto points = static_cast<std::size_t>(cells_ + 1);
    data_.assign(static_cast<std::size_t>(max_order + 1) * points * 3, 0.0);
    std::vector<double> f(static_cast<std::size_t>(max_order + 2));
    for (std::size_t k = 0; k < points; ++k) {
      const double x = k * kStep;
      if (x < 0.5 * kDirect) continue;  // cells there are never interpolated
      for (int n = 0; n <= max_order + 1; ++n) f[static_cast<std::size_t>(n)] = radial_bessel(n, x, d);
      for (int n = 0; n <= max_order; ++n) {
        const double v = f[static_cast<std::size_t>(n)];
        double dv;
        double ddv;
        if (d == 2) {
          dv = n == 0 ? -f[1] : 0.5 * (f[static_cast<std::size_t>(n - 1)] - f[static_cast<std::size_t>(n + 1)]);
          ddv = -dv / x - (1.0 - static_cast<double>(n) * n / (x * x)) * v;
        } else {
          dv = n == 0 ? -f[1] : f[static_cast<std::size_t>(n - 1)] - (n + 1.0) / x * v;
          ddv = -2.0 * dv / x - (1.0 - n * (n + 1.0) / (x * x)) * v;
        }
        double* slot = &data_[(static_cast<std::size_t>(n) * points + k) * 3];
        slot[0] = v;
        slot[1] = dv;
        slot[2] = ddv;
      }
    }
  }

  int dim() const { return d_; }
  int max_order() const { return max_order_; }
  double x_max() const { return (cells_ - 1) * kStep; }

  double operator()(int n, double x) const {
    if (x < kDirect) return radial_bessel(n, x, d_);
    const int cell = std::min(static_cast<int>(x / kStep), cells_ - 1);
    const double t = x / kStep - cell;
    const auto points = static_cast<std::size_t>(cells_ + 1);
    const double* a = &data_[(static_cast<std::size_t>(n) * points + static_cast<std::size_t>(cell)) * 3];
    const double* b = a + 3;
    const double h = kStep;
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double u = 1.0 - t;
    const double u2 = u * u;
    const double u3 = u2 * u;
    // Quintic Hermite basis on [0, 1], written symmetrically in t and 1 - t.
    const double h0 = u3 * (1.0 + 3.0 * t + 6.0 * t2);
    const double h1 = u3 * t * (1.0 + 3.0 * t);
    const double h2 = 0.5 * u3 * t2;
    const double g0 = t3 * (1.0 + 3.0 * u + 6.0 * u2);
    const double g1 = -t3 * u * (1.0 + 3.0 * u);
    const double g2 = 0.5 * t3 * u2;
    return h0 * a[0] + h * h1 * a[1] + h * h * h2 * a[2] + g0 * b[0] + h * g1 * b[1] + h * h * g2 * b[2];
  }

 private:
  int d_;
  int max_order_;
  int cells_;
  std::vector<double> data_;
};

std::shared_ptr<const RadialTable> radial_table(int d, int max_order, double x_max) {
  static std::mutex mutex;
  static std::shared_ptr<const RadialTable> tables[2];
  std::lock_guard lock(mutex);
  auto& slot = tables[d == 2 ? 0 : 1];
  if (!slot || slot->max_order() < max_order || slot->x_max() < x_max) {
    const int order = slot ? std::max(slot->max_order(), max_order) : max_order;
    const double extent = slot ? std::max(slot->x_max(), x_max) : x_max;
    slot = std::make_shared<const RadialTable>(d, order, extent);
  }
  return slot;
}

}  // namespace

int multiplicity(int n, int d) {
  require_supported_dim(d, "multiplicity");
  if (n < 0) throw DomainError("multiplicity: degree must be non-negative");
  if (d == 2) return n == 0 ? 1 : 2;
  return 2 * n + 1;
}

double eval_psi(int n, int j, const Point& theta_bar) {
  const int d = static_cast<int>(theta_bar.size());
  if (j < 1 || j > multiplicity(n, d)) throw DomainError("eval_psi: index j out of range");
  if (d == 2) {
    if (n == 0) return 1.0;
    const double t = std::atan2(theta_bar(1), theta_bar(0));
    return std::numbers::sqrt2 * (j == 1 ? std::cos(n * t) : std::sin(n * t));
  }
  const double polar = std::acos(std::clamp(theta_bar(2), -1.0, 1.0));
  const double azimuth = std::atan2(theta_bar(1), theta_bar(0));
  const int m = j - n - 1;
  const double root4pi = 2.0 * std::sqrt(std::numbers::pi);
  if (m == 0) return root4pi * boost::math::spherical_harmonic_r<double>(n, 0, polar, azimuth);
  if (m > 0)
    return root4pi * std::numbers::sqrt2 * boost::math::spherical_harmonic_r<double>(n, m, polar, azimuth);
  return root4pi * std::numbers::sqrt2 * boost::math::spherical_harmonic_i<double>(n, -m, polar, azimuth);
}

void eval_psi_all(int max_degree, const Point& theta_bar, std::vector<double>& out) {
  const int d = static_cast<int>(theta_bar.size());
  require_supported_dim(d, "eval_psi_all");
  out.clear();
  if (d == 2) {
    const double t = std::atan2(theta_bar(1), theta_bar(0));
    const double c1 = std::cos(t);
    const double s1 = std::sin(t);
    out.push_back(1.0);
    double c = 1.0;
    double s = 0.0;
    for (int n = 1; n <= max_degree; ++n) {
      const double cn = c * c1 - s * s1;
      const double sn = s * c1 + c * s1;
      c = cn;
      s = sn;
      out.push_back(std::numbers::sqrt2 * c);
      out.push_back(std::numbers::sqrt2 * s);
    }
    return;
  }
  // Normalised associated Legendre functions sqrt((2n+1)(n-m)!/(n+m)!) P_n^m
  // (Condon-Shortley phase) by the standard three-term recurrence in n.
  const double x = std::clamp(theta_bar(2), -1.0, 1.0);
  const double sx = std::sqrt(std::max(0.0, 1.0 - x * x));
  const double azimuth = std::atan2(theta_bar(1), theta_bar(0));
  const int size = max_degree + 1;
  std::vector<double> p(static_cast<std::size_t>(size * size), 0.0);
  const auto at = [&](int n, int m) -> double& { return p[static_cast<std::size_t>(n * size + m)]; };
  at(0, 0) = 1.0;
  for (int m = 1; m <= max_degree; ++m) at(m, m) = -std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * sx * at(m - 1, m - 1);
  for (int m = 0; m < max_degree; ++m) at(m + 1, m) = std::sqrt(2.0 * m + 3.0) * x * at(m, m);
  for (int m = 0; m <= max_degree; ++m)
    for (int n = m + 2; n <= max_degree; ++n) {
      const double a = std::sqrt((4.0 * n * n - 1.0) / (static_cast<double>(n) * n - static_cast<double>(m) * m));
      const double b = std::sqrt(((n - 1.0) * (n - 1.0) - static_cast<double>(m) * m) / (4.0 * (n - 1.0) * (n - 1.0) - 1.0));
      at(n, m) = a * (x * at(n - 1, m) - b * at(n - 2, m));
    }
  out.resize(static_cast<std::size_t>(size * size));
  std::size_t k = 0;
  for (int n = 0; n <= max_degree; ++n)
    for (int m = -n; m <= n; ++m, ++k) {
      if (m == 0)
        out[k] = at(n, 0);
      else if (m > 0)
        out[k] = std::numbers::sqrt2 * at(n, m) * std::cos(m * azimuth);
      else
        out[k] = std::numbers::sqrt2 * at(n, -m) * std::sin(-m * azimuth);
    }
}

double solid_harmonic(int n, int j, const Point& z) {
  const double r = z.norm();
  if (r == 0.0) {
    if (j < 1 || j > multiplicity(n, static_cast<int>(z.size())))
      throw DomainError("solid_harmonic: index j out of range");
    return n == 0 ? 1.0 : 0.0;
  }
  return std::pow(r, n) * eval_psi(n, j, z / r);
}

double radial_bessel(int n, double x, int d) {
  if (d == 2) return boost::math::cyl_bessel_j(n, x);
  if (d == 3) return boost::math::sph_bessel(static_cast<unsigned>(n), x);
  throw DomainError("radial_bessel: only d = 2 and d = 3 are supported");
}

double radial_zero(int n, int i, int d) {
  require_supported_dim(d, "radial_zero");
  if (n < 0 || i < 1) throw DomainError("radial_zero: need n >= 0 and i >= 1");
  return zero_table(d).get(n, i);
}

double DirichletEigenfunction::radial(double r) const {
  if (r > 1.0) return 0.0;
  return norm * radial_bessel(n, alpha * r, dim);
}

double DirichletEigenfunction::operator()(const Point& z) const {
  const double r = z.norm();
  if (r > 1.0 + 1e-12) return 0.0;
  if (r == 0.0) return n == 0 ? radial(0.0) : 0.0;
  return radial(std::min(r, 1.0)) * eval_psi(n, j, z / r);
}

DirichletEigenfunction eigenfunction(int n, int j, int i, int d) {
  require_supported_dim(d, "eigenfunction");
  if (j < 1 || j > multiplicity(n, d)) throw DomainError("eigenfunction: index j out of range");
  DirichletEigenfunction e;
  e.dim = d;
  e.n = n;
  e.j = j;
  e.i = i;
  e.alpha = radial_zero(n, i, d);
  e.lambda = e.alpha * e.alpha;
  // integral_0^1 f_n(alpha r)^2 r^(d-1) dr = f_{n+1}(alpha)^2 / 2 at a zero of f_n.
  const double next = radial_bessel(n + 1, e.alpha, d);
  e.norm = std::sqrt(2.0 / (sphere_area(d) * next * next));
  return e;
}

std::size_t BasisSpec::mode_count() const {
  std::size_t blocks = 0;
  for (int n = 0; n <= max_degree; ++n) blocks += multiplicity(n, dim);
  return blocks * static_cast<std::size_t>(max_radial);
}

void BasisSpec::validate() const {
  require_supported_dim(dim, "BasisSpec");
  if (max_degree < 0) throw DomainError("BasisSpec: max_degree must be non-negative");
  if (max_radial < 1) throw DomainError("BasisSpec: max_radial must be positive");
}

BasisSpec default_basis_spec(int dim) {
  require_supported_dim(dim, "default_basis_spec");
  return dim == 2 ? BasisSpec{2, 24, 40} : BasisSpec{3, 12, 24};
}

Basis::Basis(const BasisSpec& spec) : spec_(spec) {
  spec.validate();
  modes_.reserve(spec.mode_count());
  for (int n = 0; n <= spec.max_degree; ++n)
    for (int j = 1; j <= multiplicity(n, spec.dim); ++j)
      for (int i = 1; i <= spec.max_radial; ++i) {
        if (j == 1) {
          modes_.push_back(eigenfunction(n, j, i, spec.dim));
        } else {
          // Radial data is shared by every j of a degree.
          DirichletEigenfunction e = modes_[index(n, 1, i)];
          e.j = j;
          modes_.push_back(e);
        }
      }
}

std::size_t Basis::angular_count() const { return modes_.size() / spec_.max_radial; }

std::size_t Basis::index(int n, int j, int i) const {
  if (n < 0 || n > spec_.max_degree || j < 1 || j > multiplicity(n, spec_.dim) || i < 1 ||
      i > spec_.max_radial)
    throw DomainError("Basis::index: mode outside the truncation");
  // Blocks before degree n: 1 + 2(n-1) in d = 2, n^2 in d = 3.
  const std::size_t before = spec_.dim == 2 ? (n == 0 ? 0 : 2 * n - 1) : static_cast<std::size_t>(n) * n;
  return (before + (j - 1)) * spec_.max_radial + (i - 1);
}

void Basis::evaluate(const Point& z, std::span<double> out) const {
  if (out.size() != modes_.size()) throw DomainError("Basis::evaluate: output span has wrong size");
  const double r = z.norm();
  if (r > 1.0 + 1e-12) {
    std::fill(out.begin(), out.end(), 0.0);
    return;
  }
  const PolarPoint p = PolarPoint::from_cartesian(z);
  std::vector<double> psi;
  eval_psi_all(spec_.max_degree, p.theta_bar, psi);
  const int k_max = spec_.max_radial;
  const auto table = radial_table(spec_.dim, spec_.max_degree, modes_.back().alpha + 1.0);
  const double rc = std::min(r, 1.0);
  std::vector<double> radial(k_max);
  std::size_t block = 0;
  for (int n = 0; n <= spec_.max_degree; ++n) {
    const std::size_t first = index(n, 1, 1);
    for (int i = 0; i < k_max; ++i) {
      const auto& e = modes_[first + i];
      radial[i] = e.norm * (*table)(n, e.alpha * rc);
    }
    for (int j = 1; j <= multiplicity(n, spec_.dim); ++j, ++block) {
      const double a = psi[block];
      double* dst = out.data() + block * k_max;
      for (int i = 0; i < k_max; ++i) dst[i] = radial[i] * a;
    }
  }
}

void Basis::write_manifest(std::ostream& os) const {
  os << "n,j,i,alpha,lambda,norm_const\n";
  os.precision(17);
  for (const auto& e : modes_)
    os << e.n << ',' << e.j << ',' << e.i << ',' << e.alpha << ',' << e.lambda << ',' << e.norm << '\n';
}

double nu_pair(int n, int j, double r, const std::function<double(const Point&)>& phi, int dim) {
  return nu_pair(n, j, r, phi, SphereRule(dim, SphereRule::order_for_degree(n + 16)));
}

double nu_pair(int n, int j, double r, const std::function<double(const Point&)>& phi,
               const SphereRule& rule) {
  if (!(r > 0.0 && r < 1.0)) throw DomainError("nu_pair: radius must lie in (0, 1)");
  double sum = 0.0;
  for (std::size_t k = 0; k < rule.size(); ++k) {
    const Point& u = rule.nodes()[k];
    sum += rule.weights()[k] * eval_psi(n, j, u) * phi(r * u);
  }
  return sum;
}

double check_constancy(int n, int j, const std::function<double(const Point&)>& phi,
                       std::span<const double> radii, int dim) {
  if (radii.empty()) throw DomainError("check_constancy: empty radius grid");
  const SphereRule rule(dim, SphereRule::order_for_degree(n + 16));
  std::vector<double> values;
  values.reserve(radii.size());
  for (double r : radii) values.push_back(std::pow(r, -n) * nu_pair(n, j, r, phi, rule));
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double dev = 0.0;
  for (double v : values) dev = std::max(dev, std::abs(v - mean));
  return dev;
}

}  // namespace gff
