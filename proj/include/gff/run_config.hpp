#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "gff/harmonics.hpp"
#include "gff/suites.hpp"

namespace gff {

/// Invalid configuration or command line; the CLI maps it to exit code 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Resolved run configuration.
///
/// Files are `key = value` lines with `#` comments. A `[section]` line
/// prefixes the keys below it with `section.`, so `[truncation]` followed
/// by `max_degree = 30` sets `truncation.max_degree`. Recognised keys:
///   dim, seed, replicas, suites (comma separated), out, family_level,
///   truncation.max_degree, truncation.max_radial, tolerances.<name>.
struct RunConfig {
  int dim = 2;
  std::uint64_t seed = 20240917;
  std::size_t replicas = 100000;
  /// Empty selects every registered suite.
  std::vector<std::string> suites;
  std::filesystem::path out_dir = "out";
  double family_level = 0.01;
  std::optional<int> max_degree;
  std::optional<int> max_radial;
  std::map<std::string, double, std::less<>> tolerances;

  /// Truncation for `dim`, unset entries taken from default_basis_spec.
  BasisSpec truncation() const;
  /// Selected suite names, sorted; every registered suite when none given.
  std::vector<std::string> selected_suites() const;
  SuiteContext suite_context() const;

  /// Throws ConfigError on the first invalid field.
  void validate() const;

  /// Canonical echo of every field that affects results. The output
  /// directory is left out so reruns into different directories produce
  /// identical documents.
  nlohmann::ordered_json echo() const;
  /// 16 hex digits of FNV-1a over echo().dump().
  std::string hash() const;
  /// "seed=..., truncation=..., config_hash=..." for file headers.
  std::string provenance() const;
};

/// Values given on the command line; each set field replaces the file value.
struct ConfigOverrides {
  std::optional<int> dim;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> replicas;
  std::optional<std::vector<std::string>> suites;
  std::optional<std::filesystem::path> out_dir;
};

/// Applies `key = value` text to `config`. `origin` names the source in errors.
void apply_config_text(RunConfig& config, std::string_view text, std::string_view origin);

/// Defaults, then the file (if any), then the overrides; validated.
RunConfig load_config(const std::optional<std::filesystem::path>& file, const ConfigOverrides& overrides);

/// Splits "a,b, c" into trimmed non-empty names.
std::vector<std::string> split_list(std::string_view text);

}  // namespace gff
