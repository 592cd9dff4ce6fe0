#include <cmath>

#include "common.hpp"
#include "gff/walk_on_spheres.hpp"

namespace gff {
namespace {

constexpr int kBins = 16;

void bin_tests(detail::Reporter& rep, const ReportHeader& h, const std::string& label, const WosResult& res,
               const std::vector<double>& probs) {
  const auto counts = angular_histogram(res.carved_exits, kBins);
  const double n = static_cast<double>(res.carved_exits.size());
  for (int b = 0; b < kBins; ++b) {
    const double p = probs[static_cast<std::size_t>(b)];
    const double est = static_cast<double>(counts[static_cast<std::size_t>(b)]) / n;
    rep.add(statistical(h, label + "/bin_" + std::to_string(b), "exit frequency of angular bin = Poisson-kernel mass",
                        est, std::sqrt(p * (1.0 - p) / n), p, 3.0));
  }
  rep.add(detail::p_value_report(h, label + "/chi_square", "exit histogram against Poisson-kernel bin masses",
                                 chi_square_gof(counts, probs)));
}

}  // namespace

std::vector<StatReport> suite_harmonic_measure(const SuiteContext& ctx) {
  detail::Reporter rep(ctx, "harmonic_measure", "harmonic measure is the Poisson kernel");
  const int d = ctx.dim;
  const std::string dl = detail::dim_label(d);
  const std::size_t n = ctx.replicas;
  const Ball outer = Ball::unit(d);
  const Ball carved(d, detail::planar(d, 0.1, 0.05), 0.5);

  {
    const WosResult res = wos_harmonic_measure(carved.center(), outer, carved, n, rep.seed(dl + "/center"));
    const ReportHeader h = rep.header(dl + "/center", "walk on spheres", n);
    rep.add(deterministic(h, dl + "/center/all_hit_carved", "every walk exits through the carved sphere",
                          static_cast<double>(res.carved_hits), static_cast<double>(n),
                          static_cast<double>(res.outer_hits), 0.0));
    bin_tests(rep, h, dl + "/center", res, std::vector<double>(kBins, 1.0 / kBins));
  }
  {
    const Point start = carved.center() + detail::planar(d, 0.2, 0.15);
    const WosResult res = wos_harmonic_measure(start, outer, carved, n, rep.seed(dl + "/off_center"));
    const ReportHeader h = rep.header(dl + "/off_center", "walk on spheres", n);
    bin_tests(rep, h, dl + "/off_center", res, poisson_bin_probabilities(carved, start, kBins));
  }
  {
    // Lens carved ∩ outer: exits split between the two spheres.
    const Ball lens(d, detail::planar(d, 0.7, 0.0), 0.6);
    const std::size_t walks = std::min<std::size_t>(n, 20000);
    const WosResult res = wos_harmonic_measure(detail::planar(d, 0.6, 0.0), outer, lens, walks, rep.seed(dl + "/lens"));
    const double missing = static_cast<double>(res.walks - res.carved_hits - res.outer_hits);
    const double mixed = (res.carved_hits > 0 && res.outer_hits > 0) ? 0.0 : 1.0;
    const ReportHeader h = rep.header(dl + "/lens", "walk on spheres", walks);
    rep.add(deterministic(h, dl + "/lens/mass", "every walk exits through one of the two spheres",
                          static_cast<double>(res.carved_hits + res.outer_hits), static_cast<double>(res.walks),
                          missing, 0.0, "mean steps " + detail::fmt(res.mean_steps)));
    rep.add(deterministic(h, dl + "/lens/both_boundaries", "both boundary pieces carry harmonic measure",
                          static_cast<double>(res.carved_hits) / static_cast<double>(res.walks), 0.0, mixed, 0.0));
  }
  if (d == 2) {
    const Ball outer3 = Ball::unit(3);
    const Ball carved3(3, detail::planar(3, 0.1, 0.05), 0.5);
    const WosResult res = wos_harmonic_measure(carved3.center(), outer3, carved3, n, rep.seed("d3/center"));
    const ReportHeader h = rep.header("d3/center", "walk on spheres", n);
    const auto counts = angular_histogram(res.carved_exits, kBins);
    rep.add(detail::p_value_report(h, "d3/center/chi_square", "azimuth of exits from the centre is uniform",
                                   chi_square_gof(counts, std::vector<double>(kBins, 1.0 / kBins))));
  }
  return std::move(rep.reports());
}

}  // namespace gff
