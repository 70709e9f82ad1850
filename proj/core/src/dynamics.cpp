#include "hk/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "hk/energy.hpp"
#include "hk/rational.hpp"
#include "hk/verify.hpp"

namespace hk {

namespace {

bool rows_equal(const OpinionState& x, int i, int j, double tol) {
  for (int k = 0; k < x.d; ++k) {
    if (std::abs(x.at(i, k) - x.at(j, k)) > tol) return false;
  }
  return true;
}

void accumulate(Trajectory& tr, const StepDiagnostics& diag, double slow_threshold) {
  auto update_min = [](double& slot, double value) {
    if (std::isnan(value)) return;
    if (std::isnan(slot) || value < slot) slot = value;
  };
  update_min(tr.min_slack_rmf, diag.slack_rmf);
  update_min(tr.min_slack_spectral, diag.slack_spectral);
  update_min(tr.min_slack_gap, diag.slack_gap);
  update_min(tr.min_slack_path, diag.slack_path);
  if (diag.decrement < slow_threshold) ++tr.slow_step_count;
}

Trajectory simulate_float(const OpinionState& x0, const SimulateOptions& opts) {
  Trajectory tr;
  tr.mode = ArithmeticMode::kFloat;
  tr.cap = opts.cap;
  tr.initial_energy = energy(x0).total;
  tr.states.push_back(x0);

  const double slow_threshold = 1.0 / (static_cast<double>(x0.n) * x0.n);
  OpinionState x = x0;
  CommGraph g = build_graph(x);

  for (long long t = 0; t < opts.cap; ++t) {
    OpinionState x_next = hk_step(x, g);
    if (!all_finite(x_next)) {
      throw std::domain_error("simulate: non-finite state at step " + std::to_string(t));
    }
    CommGraph g_next = build_graph(x_next);
    // Frozen: negligible move AND a stable communication graph, so a slow
    // drift toward a distance threshold cannot pass as a freeze.
    if (g_next == g && max_coord_diff(x, x_next) <= kFreezeTol) {
      tr.freezing_time = t;
      break;
    }
    StepDiagnostics diag = verify_step(x, x_next, g, t, opts.with_spectral);
    if (diag.merged) tr.merge_times.push_back(t);
    accumulate(tr, diag, slow_threshold);
    if (opts.record_diagnostics) tr.diagnostics.push_back(diag);
    if (opts.record_states) tr.states.push_back(x_next);
    x = std::move(x_next);
    g = std::move(g_next);
  }

  tr.steps_taken = tr.freezing_time ? *tr.freezing_time : opts.cap;
  if (!opts.record_states && tr.steps_taken > 0) tr.states.push_back(x);
  tr.states_complete =
      static_cast<long long>(tr.states.size()) == tr.steps_taken + 1;
  tr.final_energy = energy(tr.states.back()).total;
  return tr;
}

Trajectory simulate_rational(const OpinionState& x0, const SimulateOptions& opts) {
  if (x0.n > kRationalMaxAgents) {
    throw std::invalid_argument("simulate: rational mode supports n <= " +
                                std::to_string(kRationalMaxAgents) +
                                "; use float mode for larger systems");
  }
  const long long steps = std::min(opts.cap, kRationalMaxSteps);
  RationalTrajectory rt = rational_replay(x0, steps, opts.rational_bit_bound);

  Trajectory tr;
  tr.mode = ArithmeticMode::kRational;
  tr.cap = opts.cap;
  tr.freezing_time = rt.freezing_time;
  tr.merge_times = rt.merge_times;
  tr.steps_taken = static_cast<long long>(rt.states.size()) - 1;

  std::vector<OpinionState> dstates;
  dstates.reserve(rt.states.size());
  for (const auto& rs : rt.states) dstates.push_back(rs.to_state());

  const double slow_threshold = 1.0 / (static_cast<double>(x0.n) * x0.n);
  for (long long t = 0; t + 1 < static_cast<long long>(dstates.size()); ++t) {
    // Checks run on the double view, but adjacency comes from the exact
    // comparisons, so ties at distance exactly 1 are decided exactly.
    const CommGraph g = build_graph_exact(rt.states[t]);
    const bool merged =
        std::find(rt.merge_times.begin(), rt.merge_times.end(), t) != rt.merge_times.end();
    StepDiagnostics diag =
        verify_step(dstates[t], dstates[t + 1], g, t, opts.with_spectral, merged);
    accumulate(tr, diag, slow_threshold);
    if (opts.record_diagnostics) tr.diagnostics.push_back(diag);
  }

  tr.initial_energy = energy(dstates.front()).total;
  tr.final_energy = energy(dstates.back()).total;
  if (opts.record_states || dstates.size() <= 2) {
    tr.states = std::move(dstates);
  } else {
    tr.states = {dstates.front(), dstates.back()};
  }
  tr.states_complete =
      static_cast<long long>(tr.states.size()) == tr.steps_taken + 1;
  return tr;
}

}  // namespace

OpinionState hk_step(const OpinionState& x, const CommGraph& g) {
  OpinionState out(x.n, x.d);
  std::vector<double> acc(x.d);
  for (int i = 0; i < x.n; ++i) {
    std::fill(acc.begin(), acc.end(), 0.0);
    const std::uint8_t* row = g.adj.data() + static_cast<std::size_t>(i) * x.n;
    for (int j = 0; j < x.n; ++j) {
      if (!row[j]) continue;
      const double* xr = x.coords.data() + static_cast<std::size_t>(j) * x.d;
      for (int k = 0; k < x.d; ++k) acc[k] += xr[k];
    }
    const double deg = g.degrees[i];
    for (int k = 0; k < x.d; ++k) out.at(i, k) = acc[k] / deg;
  }
  return out;
}

OpinionState hk_step(const OpinionState& x) { return hk_step(x, build_graph(x)); }

bool detect_merges(const OpinionState& x, const OpinionState& x_next, double tol) {
  for (int i = 0; i < x.n; ++i) {
    for (int j = i + 1; j < x.n; ++j) {
      if (rows_equal(x_next, i, j, tol) && !rows_equal(x, i, j, tol)) return true;
    }
  }
  return false;
}

long long default_cap(int n, double multiplier) {
  const double nd = static_cast<double>(n);
  return std::max(1LL, static_cast<long long>(std::llround(multiplier * nd * nd * nd * nd)));
}

Trajectory simulate(const OpinionState& x0, const SimulateOptions& opts) {
  validate(x0);
  if (opts.cap < 1) throw std::invalid_argument("simulate: cap must be >= 1");
  if (opts.mode == ArithmeticMode::kRational) return simulate_rational(x0, opts);
  return simulate_float(x0, opts);
}

}  // namespace hk
