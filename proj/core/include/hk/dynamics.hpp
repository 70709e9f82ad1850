#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hk/diagnostics.hpp"
#include "hk/graph.hpp"
#include "hk/state.hpp"

namespace hk {

/// float: plain double arithmetic, the workhorse.
/// rational: exact arbitrary-precision rationals; freeze and merge decisions
/// become exact equalities. Practical for n <= 25 and <= 100 steps only.
enum class ArithmeticMode { kFloat, kRational };

/// Freeze threshold per coordinate (float mode). A state counts as frozen
/// only if additionally the communication graph did not change, which rules
/// out slow drift across a distance threshold masquerading as freezing.
inline constexpr double kFreezeTol = 1e-12;

/// Merge equality threshold per coordinate (float mode). Merges are exact
/// rational events; 1e-9 separates them from accumulated float noise.
inline constexpr double kMergeTol = 1e-9;

/// Hard limits of the exact-rational engine.
inline constexpr int kRationalMaxAgents = 25;
inline constexpr long long kRationalMaxSteps = 100;

/// One synchronous update: each agent moves to the mean of all opinions
/// within distance 1 of its own (its own included via the self-loop).
OpinionState hk_step(const OpinionState& x);
/// Same, with the communication graph of x already built.
OpinionState hk_step(const OpinionState& x, const CommGraph& g);

/// True iff some pair of agents with different opinions in x holds a common
/// opinion in x_next. Equality is judged per coordinate within tol.
bool detect_merges(const OpinionState& x, const OpinionState& x_next,
                   double tol = kMergeTol);

/// Default simulation cap: multiplier * n^4 steps, at least 1.
long long default_cap(int n, double multiplier = 10.0);

struct SimulateOptions {
  long long cap = 0;  // required, >= 1
  ArithmeticMode mode = ArithmeticMode::kFloat;
  /// Fill lambda/diameter and run the spectral, gap and path checks each
  /// step. Turning this off leaves only the energy-side diagnostics and is
  /// much faster for pure freezing-time sweeps.
  bool with_spectral = true;
  /// Keep the full state history. Off: only the initial and final states.
  bool record_states = true;
  /// Keep the per-step diagnostics list. Aggregates are filled either way.
  bool record_diagnostics = true;
  /// Abort threshold for the exact engine's common denominator, in bits.
  long long rational_bit_bound = 1'000'000;
};

struct Trajectory {
  ArithmeticMode mode = ArithmeticMode::kFloat;
  long long cap = 0;

  /// x_0 .. x_T (complete when states_complete; otherwise just {x_0, x_T}).
  std::vector<OpinionState> states;
  bool states_complete = true;

  /// One record per executed transition (empty if record_diagnostics was off).
  std::vector<StepDiagnostics> diagnostics;

  /// First T with x_{T+1} = x_T under the mode's freeze criterion;
  /// nullopt means the cap was exhausted first (not a failure).
  std::optional<long long> freezing_time;

  /// Steps t at which some pair of distinct opinions became one.
  std::vector<long long> merge_times;

  /// Number of transitions executed (= freezing_time or cap).
  long long steps_taken = 0;

  // Aggregates over all executed transitions, kept even when the per-step
  // lists are dropped. Min slacks are NaN when never computed.
  double initial_energy = 0.0;
  double final_energy = 0.0;
  double min_slack_rmf = std::numeric_limits<double>::quiet_NaN();
  double min_slack_spectral = std::numeric_limits<double>::quiet_NaN();
  double min_slack_gap = std::numeric_limits<double>::quiet_NaN();
  double min_slack_path = std::numeric_limits<double>::quiet_NaN();
  /// Transitions with energy decrement below 1/n^2.
  long long slow_step_count = 0;

  bool cap_exceeded() const { return !freezing_time.has_value(); }
  const OpinionState& initial_state() const { return states.front(); }
  const OpinionState& final_state() const { return states.back(); }
};

/// Runs the update rule until frozen or until cap transitions, verifying all
/// certified inequalities along the way. Throws CheckViolation on the first
/// violated check and std::domain_error if a state turns non-finite.
/// Rational mode replays exactly (freeze/merge decisions exact), requires
/// n <= 25 and clamps the cap to 100 steps.
Trajectory simulate(const OpinionState& x0, const SimulateOptions& opts);

}  // namespace hk
