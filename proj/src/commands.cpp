#include "gff/commands.hpp"

#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <iomanip>
#include <memory>
#include <ostream>
#include <sstream>
#include <vector>

#include "gff/bounds.hpp"
#include "gff/kernels.hpp"
#include "gff/parallel.hpp"
#include "gff/rng.hpp"
#include "gff/sampler.hpp"

namespace gff {
namespace {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) throw IoError("cannot create output directory " + dir.string());
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  out.close();
  if (!out) throw IoError("cannot write " + path.string());
}

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

std::size_t count_failed(const std::vector<StatReport>& reports) {
  std::size_t failed = 0;
  for (const auto& r : reports)
    if (!r.pass) ++failed;
  return failed;
}

void write_reports(const RunConfig& config, const std::string& stem, const std::vector<StatReport>& reports) {
  write_file(config.out_dir / (stem + ".json"), render_json(config.echo(), config.hash(), reports));
  std::ostringstream csv;
  write_csv(csv, config.provenance(), reports);
  write_file(config.out_dir / (stem + ".csv"), csv.str());
}

StatReport suite_error(const RunConfig& config, const SuiteInfo& suite, const std::string& what) {
  const BasisSpec spec = config.truncation();
  ReportHeader h{suite.name, suite.anchor, config.seed,
                 "d=" + std::to_string(spec.dim) + ",N=" + std::to_string(spec.max_degree) +
                     ",K=" + std::to_string(spec.max_radial),
                 0};
  return deterministic(h, "suite_error", "suite runs to completion", std::nan(""), 0.0, std::nan(""), 0.0, what);
}

template <class F>
int guarded(std::ostream& log, F body) {
  try {
    return body();
  } catch (const IoError& e) {
    log << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConfigError& e) {
    log << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace

int cmd_basis(const RunConfig& config, std::ostream& log) {
  return guarded(log, [&] {
    ensure_dir(config.out_dir);
    const BasisSpec spec = config.truncation();
    const Basis basis(spec);
    std::ostringstream manifest;
    manifest << "# " << config.provenance() << '\n';
    basis.write_manifest(manifest);
    write_file(config.out_dir / "basis_manifest.csv", manifest.str());

    const auto reports = run_suite(*find_suite("basis"), config.suite_context());
    write_reports(config, "basis_checks", reports);
    const std::size_t failed = count_failed(reports);
    log << "basis: " << basis.size() << " modes, " << reports.size() - failed << "/" << reports.size()
        << " checks passed\n";
    return failed == 0 ? kExitPass : kExitFailure;
  });
}

int cmd_verify(const RunConfig& config, std::ostream& log) {
  return guarded(log, [&] {
    ensure_dir(config.out_dir);
    const auto names = config.selected_suites();
    std::vector<const SuiteInfo*> suites;
    for (const auto& name : names) {
      const SuiteInfo* s = find_suite(name);
      if (!s) throw ConfigError("unknown suite '" + name + "'");
      suites.push_back(s);
    }
    const SuiteContext ctx = config.suite_context();
    std::vector<std::vector<StatReport>> results(suites.size());
    std::vector<double> seconds(suites.size(), 0.0);
    parallel_for(suites.size(), [&](std::size_t i) {
      const auto start = std::chrono::steady_clock::now();
      try {
        results[i] = run_suite(*suites[i], ctx);
      } catch (const std::exception& e) {
        results[i] = {suite_error(config, *suites[i], e.what())};
      }
      seconds[i] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    });

    std::vector<StatReport> all;
    std::size_t failed = 0;
    for (std::size_t i = 0; i < suites.size(); ++i) {
      const std::size_t f = count_failed(results[i]);
      failed += f;
      log << std::left << std::setw(18) << suites[i]->name << (f == 0 ? "pass" : "FAIL") << "  "
          << results[i].size() - f << "/" << results[i].size() << "  " << std::fixed << std::setprecision(1)
          << seconds[i] << " s\n"
          << std::defaultfloat;
      for (const auto& r : results[i])
        if (!r.pass) log << "  failed: " << r.test << " (" << r.note << ")\n";
      all.insert(all.end(), results[i].begin(), results[i].end());
    }
    write_reports(config, "report", all);
    log << all.size() - failed << "/" << all.size() << " tests passed; reports in " << config.out_dir.string()
        << '\n';
    return failed == 0 ? kExitPass : kExitFailure;
  });
}

int cmd_plotdata(const RunConfig& config, std::ostream& log) {
  return guarded(log, [&] {
    ensure_dir(config.out_dir);
    const int d = config.dim;
    const BasisSpec spec = config.truncation();
    const std::string header = "# " + config.provenance() + "\n";

    // Var h_r(0): exact against the truncated spectral model.
    {
      const auto model = std::make_shared<const SpectralModel>(spec);
      std::vector<double> radii;
      for (int k = 1; k <= 19; ++k) radii.push_back(0.05 * k);
      std::vector<LinearFunctional> fs;
      for (double r : radii) fs.push_back(model->nu_functional(0, 1, r));
      const auto draws = sample_pairings(*model, fs, derive_seed(config.seed, "plotdata/variance_curve"),
                                         config.replicas);
      std::ostringstream csv;
      csv << header << "r,analytic,mc_estimate,stderr\n";
      for (std::size_t c = 0; c < radii.size(); ++c) {
        const std::vector<double> x(draws.col(static_cast<Eigen::Index>(c)).data(),
                                    draws.col(static_cast<Eigen::Index>(c)).data() + draws.rows());
        const Estimate e = covariance_estimate(x, x);
        csv << num(radii[c]) << ',' << num(spherical_average_covariance(radii[c], radii[c], d)) << ','
            << num(e.value) << ',' << num(e.stderr) << '\n';
      }
      write_file(config.out_dir / "variance_curve.csv", csv.str());
    }

    // G(x, y) for y = -0.3 e1 and x = t e1, t in [0, 1], exact and truncated.
    {
      const Ball unit = Ball::unit(d);
      const Basis basis(spec);
      const Point y = Point::Unit(d, 0) * -0.3;
      std::vector<double> ey(basis.size());
      std::vector<double> ex(basis.size());
      basis.evaluate(y, ey);
      const double g = green_normalization(d);
      std::ostringstream csv;
      csv << header << "t,exact,spectral\n";
      for (int k = 0; k <= 40; ++k) {
        const double t = k / 40.0;
        const Point x = Point::Unit(d, 0) * t;
        basis.evaluate(x, ex);
        double spectral = 0.0;
        for (std::size_t m = 0; m < basis.size(); ++m) spectral += g / basis.mode(m).lambda * ex[m] * ey[m];
        csv << num(t) << ',' << num(green_ball(x, y, unit)) << ',' << num(spectral) << '\n';
      }
      write_file(config.out_dir / "kernel_cross_section.csv", csv.str());
    }

    // Audited bound ratios along coalescing configurations.
    {
      std::ostringstream csv;
      csv << header << "delta,separation,k2_ratio,k4_ratio,circle_ratio\n";
      for (double delta : {0.3, 0.1, 0.03})
        for (int k = 0; k <= 12; ++k) {
          const double sep = 0.1 * std::pow(10.0, -0.5 * k);
          const BoundRatios r = coalescence_ratios(d, delta, sep);
          csv << num(delta) << ',' << num(sep) << ',' << num(r.k2) << ',' << num(r.k4) << ',' << num(r.circle)
              << '\n';
        }
      write_file(config.out_dir / "bound_ratios.csv", csv.str());
    }
    log << "plot data written to " << config.out_dir.string() << '\n';
    return kExitPass;
  });
}

}  // namespace gff
