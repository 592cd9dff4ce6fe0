#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gff/harmonics.hpp"
#include "gff/report.hpp"

namespace gff {

/// Inputs shared by every suite. Suites derive their streams from `seed`
/// and their own name, so each owns a disjoint seed subtree.
struct SuiteContext {
  int dim = 2;
  std::uint64_t seed = 20240917;
  std::size_t replicas = 100000;
  /// Base truncation for `dim`; tests that need more modes raise it.
  std::optional<BasisSpec> truncation;
  std::map<std::string, double, std::less<>> tolerances;
  double family_level = 0.01;

  double tolerance(std::string_view key, double fallback) const;
  /// The base truncation for dimension d, raised componentwise to `minimum`.
  BasisSpec spec_at_least(const BasisSpec& minimum) const;
  BasisSpec base_spec(int d) const;
  std::uint64_t stream(std::string_view suite, std::string_view test) const;
};

using SuiteFn = std::vector<StatReport> (*)(const SuiteContext&);

struct SuiteInfo {
  std::string name;
  std::string anchor;
  SuiteFn run;
};

/// Registered suites, sorted by name.
const std::vector<SuiteInfo>& registered_suites();
const SuiteInfo* find_suite(std::string_view name);
/// Tolerance keys that configuration files may override.
const std::vector<std::string>& known_tolerances();

/// Runs one suite and applies its Bonferroni gate: every statistical
/// report gets threshold max(3, z*) with z* the two-sided quantile at
/// family_level / (number of statistical reports).
std::vector<StatReport> run_suite(const SuiteInfo& suite, const SuiteContext& ctx);

std::vector<StatReport> suite_basis(const SuiteContext& ctx);
std::vector<StatReport> suite_bounds_audit(const SuiteContext& ctx);
std::vector<StatReport> suite_constancy(const SuiteContext& ctx);
std::vector<StatReport> suite_covariance_green(const SuiteContext& ctx);
std::vector<StatReport> suite_dmp(const SuiteContext& ctx);
std::vector<StatReport> suite_gaussianity(const SuiteContext& ctx);
std::vector<StatReport> suite_harmonic_measure(const SuiteContext& ctx);
std::vector<StatReport> suite_radial_processes(const SuiteContext& ctx);
std::vector<StatReport> suite_scaling(const SuiteContext& ctx);
std::vector<StatReport> suite_zero_boundary(const SuiteContext& ctx);

}  // namespace gff
