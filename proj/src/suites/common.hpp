#pragma once

// Helpers shared by the suite implementations.

#include <cmath>
#include <initializer_list>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "gff/geometry.hpp"
#include "gff/harmonics.hpp"
#include "gff/report.hpp"
#include "gff/sampler.hpp"
#include "gff/stats.hpp"
#include "gff/suites.hpp"

namespace gff::detail {

inline Point point(std::initializer_list<double> v) {
  Point p(static_cast<Eigen::Index>(v.size()));
  Eigen::Index k = 0;
  for (double x : v) p(k++) = x;
  return p;
}

/// (x, y) in d = 2, (x, y, 0) in d = 3.
inline Point planar(int d, double x, double y) {
  Point p = Point::Zero(d);
  p(0) = x;
  p(1) = y;
  return p;
}

std::string truncation_label(const BasisSpec& spec);
std::string dim_label(int d);

/// Builds a report header for one test: the stream seed is derived from
/// the suite and test names.
class Reporter {
 public:
  Reporter(const SuiteContext& ctx, std::string suite, std::string anchor)
      : ctx_(ctx), suite_(std::move(suite)), anchor_(std::move(anchor)) {}

  const SuiteContext& ctx() const { return ctx_; }
  std::uint64_t seed(std::string_view test) const { return ctx_.stream(suite_, test); }

  ReportHeader header(std::string_view test, std::string truncation, std::size_t replicas,
                      std::string anchor = {}) const {
    return ReportHeader{suite_, anchor.empty() ? anchor_ : std::move(anchor), seed(test), std::move(truncation),
                        replicas};
  }

  void add(StatReport r) { reports_.push_back(std::move(r)); }
  std::vector<StatReport>& reports() { return reports_; }

 private:
  const SuiteContext& ctx_;
  std::string suite_;
  std::string anchor_;
  std::vector<StatReport> reports_;
};

inline std::vector<double> column(const Eigen::MatrixXd& m, Eigen::Index c) {
  return std::vector<double>(m.col(c).data(), m.col(c).data() + m.rows());
}

/// Report for a p-value: z is its two-sided normal equivalent, so the usual
/// |z| gate rejects small p.
StatReport p_value_report(const ReportHeader& h, std::string test, std::string target, const ChiSquare& chi,
                          std::string note = {});

/// Skewness, kurtosis and chi-square normality reports for one sample.
void add_normality(Reporter& rep, const ReportHeader& h, const std::string& label, std::span<const double> x);

/// Ratio of two independent variance estimates with a delta-method error.
Estimate variance_ratio(std::span<const double> num, std::span<const double> den);

std::string fmt(double v, int precision = 6);

}  // namespace gff::detail
