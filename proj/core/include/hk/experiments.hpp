#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hk/dynamics.hpp"

namespace hk {

enum class Family { kCircle, kDumbbell, kLine, kRandom };

/// A batch of independent runs: one initial-configuration family swept over
/// agent counts, with per-step verification on every trajectory.
struct ExperimentSpec {
  Family family = Family::kRandom;

  // Family parameters (each family reads the ones it needs).
  double chord = 0.99;                 // circle, unless radius is given
  std::optional<double> radius;        // circle override
  double spacing = 1.0;                // dumbbell, line
  double box_side = 5.0;               // random
  int dim = 2;                         // random

  std::vector<int> n_values;           // strictly increasing
  int trials_per_n = 1;
  std::uint64_t seed = 0;
  ArithmeticMode mode = ArithmeticMode::kFloat;
  double cap_multiplier = 10.0;        // cap = multiplier * n^4
  bool with_spectral = true;

  std::string output_dir;              // empty: no files written
  bool write_trajectories = false;     // per-trial trajectory JSON
  bool write_states = false;           // embed full state histories (large)
};

/// One (n, trial) outcome row.
struct TrialRow {
  int n = 0;
  int trial = 0;
  std::optional<long long> freezing_time;  // nullopt = cap exceeded
  long long cap = 0;
  long long merge_count = 0;
  double min_slack_rmf = std::numeric_limits<double>::quiet_NaN();
  double min_slack_spectral = std::numeric_limits<double>::quiet_NaN();
  double min_slack_gap = std::numeric_limits<double>::quiet_NaN();
  double min_slack_path = std::numeric_limits<double>::quiet_NaN();
  double initial_energy = 0.0;
  double final_energy = 0.0;
  bool violated = false;
  std::string violation_check;   // empty unless violated
  long long violation_step = -1;
  double wall_ms = 0.0;          // reported in JSON only, not in the CSV
};

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double ci = 0.0;  // 2 * standard error of the slope
};

struct ExperimentReport {
  ExperimentSpec spec;
  std::vector<TrialRow> rows;
  std::optional<FitResult> fit;  // log-log fit of median freezing time vs n
  long long violation_count = 0;
};

/// Builds the initial configuration for one trial. Only the random family
/// varies with the trial index (per-trial derived seed); the others are
/// deterministic in n. For the dumbbell, n splits as m = max(1, n/4) cluster
/// agents per side and a chain of k = n - 2m.
OpinionState make_family_config(const ExperimentSpec& spec, int n, int trial);

/// Runs all (n, trial) pairs on a worker pool (size from HKLAB_WORKERS, else
/// hardware concurrency), deterministically given the spec seed. Violations
/// are recorded per row -- remaining trials continue. Writes report.json and
/// report.csv into output_dir before returning (if set); the CSV is
/// byte-identical across reruns of the same spec.
ExperimentReport run_experiment(const ExperimentSpec& spec);

/// Ordinary least squares of log(median freezing time) against log(n);
/// ci = 2 * standard error of the slope. Requires >= 3 distinct n values,
/// none with a cap-exceeded median and all medians >= 1.
FitResult fit_scaling(const std::vector<TrialRow>& rows);

/// OLS on already-transformed points (used by fit_scaling and tests).
FitResult fit_loglog(const std::vector<double>& n_values,
                     const std::vector<double>& medians);

double median(std::vector<double> values);

}  // namespace hk
