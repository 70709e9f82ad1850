#pragma once

#include <limits>

namespace hk {

/// Everything measured and certified for one transition x_t -> x_{t+1}.
/// When a run skips the spectral work (spectral_done = false), lambda and
/// the three spectral slacks stay NaN and diameter stays -1.
struct StepDiagnostics {
  long long t = 0;

  double energy_total = 0.0;
  double energy_active = 0.0;
  double lambda = std::numeric_limits<double>::quiet_NaN();
  int diameter = -1;
  double decrement = 0.0;

  double rmf_bound = 0.0;
  double spectral_bound = std::numeric_limits<double>::quiet_NaN();
  double gap_rhs = std::numeric_limits<double>::quiet_NaN();

  double slack_rmf = 0.0;
  double slack_spectral = std::numeric_limits<double>::quiet_NaN();
  double slack_gap = std::numeric_limits<double>::quiet_NaN();
  double slack_path = std::numeric_limits<double>::quiet_NaN();

  bool merged = false;
  bool spectral_done = false;
};

}  // namespace hk
