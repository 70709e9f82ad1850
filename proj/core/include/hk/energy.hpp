#pragma once

#include "hk/state.hpp"

namespace hk {

/// Energy of a configuration, summed over all ordered pairs (i, j) in [n]^2
/// including i = j: each pair contributes min{squared distance, 1}. Pairs
/// within distance 1 are "active" and contribute their squared distance;
/// the rest contribute exactly 1, so
///   total = active + inactive_pair_count   and   0 <= total <= n^2.
/// The identity holds exactly: total is assembled from the two parts.
struct EnergyReport {
  double total = 0.0;
  double active = 0.0;
  long long inactive_pair_count = 0;
};

EnergyReport energy(const OpinionState& x);

/// One decrement-vs-bound comparison. slack = decrement - bound for the
/// decrement checks (and rhs - lambda for the contraction-gap check);
/// violated means slack < -tol.
struct SlackRecord {
  double decrement = 0.0;
  double bound = 0.0;
  double slack = 0.0;
  double tol = 0.0;
  bool violated = false;
};

/// Tolerance used by the decrement checks: 1e-9 * max(1, E(x_t)). Slacks
/// compare quantities of order n^2, so the tolerance scales with them.
double check_tolerance(double energy_total);

/// Checks E(x_t) - E(x_{t+1}) >= 4 * ||x_{t+1} - x_t||^2 for x_next the
/// update of x.
SlackRecord check_rmf_decrement(const OpinionState& x, const OpinionState& x_next);

/// Same check on precomputed energy totals (avoids recomputing them).
SlackRecord check_rmf_decrement(const OpinionState& x, const OpinionState& x_next,
                                double energy_before, double energy_after);

/// Checks E_active >= floor(diameter/2)/2. In a shortest path every second
/// edge has length >= 1/2, and each such edge is an active pair contributing
/// >= 1/4 twice (ordered pairs).
SlackRecord check_path_bound(const EnergyReport& e, int diameter);

}  // namespace hk
