#pragma once

#include <iosfwd>

#include "gff/run_config.hpp"

namespace gff {

inline constexpr int kExitPass = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitFailure = 2;

/// Builds the basis at the configured truncation, runs the basis checks and
/// writes basis_manifest.csv and basis_checks.json to the output directory.
/// Returns kExitFailure if a check fails and kExitUsage on I/O errors.
int cmd_basis(const RunConfig& config, std::ostream& log);

/// Runs the selected suites on the worker pool and writes report.json and
/// report.csv, sorted by suite id, once every suite has finished. A suite
/// that throws contributes a failing suite_error row; the other reports are
/// still written.
int cmd_verify(const RunConfig& config, std::ostream& log);

/// Writes variance_curve.csv, kernel_cross_section.csv and bound_ratios.csv.
int cmd_plotdata(const RunConfig& config, std::ostream& log);

}  // namespace gff
