#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "hk/dynamics.hpp"
#include "hk/experiments.hpp"
#include "hk/verify.hpp"

namespace hk::io {

// Interchange formats (all JSON unless noted):
//   configuration   {"n": int, "d": int, "coords": [[..], ..]}  (row per agent)
//   trajectory      metadata + optional "states" + "diagnostics" table
//   experiment spec / report;  report also as CSV (deterministic bytes)
//   diagnostics CSV columns: t,energy_total,energy_active,lambda_t,diameter,
//     decrement,slack_rmf,slack_spectral,slack_gap,slack_path,merged
// Floats in CSV files are printed with 17 significant digits so re-ingestion
// is bit-faithful.

std::string config_to_json(const OpinionState& x);
OpinionState config_from_json(const std::string& text);

std::string trajectory_to_json(const Trajectory& tr, bool include_states);
Trajectory trajectory_from_json(const std::string& text);

std::string diagnostics_csv(const std::vector<StepDiagnostics>& diags);

std::string spec_to_json(const ExperimentSpec& spec);
ExperimentSpec spec_from_json(const std::string& text);

std::string report_to_json(const ExperimentReport& report);
ExperimentReport report_from_json(const std::string& text);
std::string report_csv(const ExperimentReport& report);

std::string summary_to_json(const VerificationSummary& s);

/// "%.17g" formatting used by every CSV writer.
std::string format_double(double v);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);

/// True if the JSON document looks like a trajectory (has "states"),
/// false if it looks like a bare configuration.
bool json_is_trajectory(const std::string& text);

}  // namespace hk::io
