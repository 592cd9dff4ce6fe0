#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace gff {

/// Outcome of one gated test.
///
/// Statistical tests pass when |z| <= threshold, z = (estimate - reference)
/// / stderr. Deterministic tests pass when residual <= tolerance.
struct StatReport {
  enum class Kind { Statistical, Deterministic };

  std::string suite;
  std::string test;
  std::string anchor;
  std::string target;
  Kind kind = Kind::Statistical;
  double estimate = 0.0;
  double stderr = 0.0;
  double reference = 0.0;
  double z = 0.0;
  double threshold = 3.0;
  std::optional<double> residual;
  double tolerance = 0.0;
  bool pass = false;
  std::uint64_t seed = 0;
  std::string truncation;
  std::size_t replicas = 0;
  std::string note;
};

struct ReportHeader {
  std::string suite;
  std::string anchor;
  std::uint64_t seed = 0;
  std::string truncation;
  std::size_t replicas = 0;
};

StatReport statistical(const ReportHeader& h, std::string test, std::string target, double estimate, double stderr,
                       double reference, double threshold, std::string note = {});
StatReport deterministic(const ReportHeader& h, std::string test, std::string target, double estimate,
                         double reference, double residual, double tolerance, std::string note = {});

const char* kind_name(StatReport::Kind kind);

nlohmann::ordered_json to_json(const StatReport& r);

/// Report document: the run configuration, its hash and every report, in
/// the given order.
std::string render_json(const nlohmann::ordered_json& config, const std::string& config_hash,
                        const std::vector<StatReport>& reports);
/// Flat CSV of the same rows. The first line is a comment carrying the seed
/// and config hash.
void write_csv(std::ostream& os, const std::string& provenance, const std::vector<StatReport>& reports);

}  // namespace gff
