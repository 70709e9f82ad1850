#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "hk/diagnostics.hpp"
#include "hk/dynamics.hpp"

namespace hk {

/// A violated certified inequality. Carries the name of the violated check,
/// the step index, and a self-contained JSON reproduction bundle (offending
/// state, its graph, and all intermediate quantities) so the event can be
/// replayed -- in exact arithmetic if need be -- instead of being a log line.
class CheckViolation : public std::runtime_error {
 public:
  CheckViolation(std::string check, long long step, std::string bundle_json);

  const std::string& check() const { return check_; }
  long long step() const { return step_; }
  const std::string& bundle_json() const { return bundle_; }

 private:
  std::string check_;
  long long step_ = 0;
  std::string bundle_;
};

/// All per-transition checks for x_next the update of x: energy monotone,
/// displacement decrement bound, spectral decrement bound, contraction-gap
/// bound, active-energy path bound, and -- on non-merging steps with
/// diameter >= 2 -- the composed decrement >= E_active/(n^2*diam) bound.
/// Returns the packaged diagnostics; throws CheckViolation on any failure.
StepDiagnostics verify_step(const OpinionState& x, const OpinionState& x_next,
                            long long t = 0, bool with_spectral = true);
/// Same with the communication graph of x supplied by the caller (used by
/// the exact engine, whose adjacency comes from exact comparisons). The
/// exact engine also pins the merged flag, whose float heuristic it replaces
/// with an exact decision.
StepDiagnostics verify_step(const OpinionState& x, const OpinionState& x_next,
                            const CommGraph& g, long long t = 0,
                            bool with_spectral = true,
                            std::optional<bool> merged_override = std::nullopt);

struct VerificationSummary {
  int n = 0;
  long long transitions = 0;
  long long merge_count = 0;
  bool merge_bound_ok = true;      // merge_count <= n-1
  bool energy_monotone_ok = true;  // decrement >= -tol each step
  bool merges_irreversible_ok = true;

  double min_slack_rmf = std::numeric_limits<double>::quiet_NaN();
  double min_slack_spectral = std::numeric_limits<double>::quiet_NaN();
  double min_slack_gap = std::numeric_limits<double>::quiet_NaN();
  double min_slack_path = std::numeric_limits<double>::quiet_NaN();
  double mean_slack_rmf = std::numeric_limits<double>::quiet_NaN();
  double mean_slack_spectral = std::numeric_limits<double>::quiet_NaN();
  double mean_slack_gap = std::numeric_limits<double>::quiet_NaN();
  double mean_slack_path = std::numeric_limits<double>::quiet_NaN();

  /// Transitions whose energy decrement is below 1/n^2.
  long long slow_step_count = 0;
  bool all_ok = true;
};

/// Re-checks a complete trajectory: replays each stored transition (the
/// stored successor must match the recomputed update), reruns every per-step
/// check, and enforces the trajectory-level invariants (merge count <= n-1,
/// merge irreversibility, monotone energy). Trajectories recorded without
/// full state history are audited from their stored diagnostics instead.
/// Throws CheckViolation at the first violation.
VerificationSummary verify_trajectory(const Trajectory& tr);

}  // namespace hk
