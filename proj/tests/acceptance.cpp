// Acceptance suite: runs every gate criterion end to end and prints one
// PASS/FAIL line per criterion. Exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hk/dynamics.hpp"
#include "hk/experiments.hpp"
#include "hk/generators.hpp"
#include "hk/rational.hpp"
#include "hk/spectral.hpp"
#include "hk/util.hpp"
#include "hk/verify.hpp"

using namespace hk;

namespace {

constexpr std::uint64_t kSweepSeed = 0x484b6c6162ULL;
constexpr double kTimeBudgetSeconds = 300.0;

struct Outcome {
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return buf;
}

// ---------------------------------------------------------------------------
// Shared sweep: 1000 random trajectories, n in [2,50], d in [1,5], box side 5,
// run to freeze or cap with every per-step check on. Feeds criteria 1-4, 8, 11.
struct SweepResults {
  long long trials = 0;
  long long transitions = 0;
  std::map<std::string, long long> violations;  // by check name
  double min_slack_rmf = 1e300, min_slack_spectral = 1e300;
  double min_slack_gap = 1e300, min_slack_path = 1e300;
  long long capped = 0;
  long long merge_bound_breaches = 0;
  double seconds = 0.0;
};

SweepResults run_random_sweep(int trials) {
  struct PerTrial {
    std::string violation;
    long long transitions = 0;
    double min_rmf = 1e300, min_spec = 1e300, min_gap = 1e300, min_path = 1e300;
    bool capped = false;
    bool merge_bound_ok = true;
  };
  std::vector<PerTrial> results(trials);

  const auto start = std::chrono::steady_clock::now();
  parallel_for(trials, [&](int idx) {
    PerTrial& out = results[idx];
    std::mt19937_64 rng(trial_seed(kSweepSeed, 0, idx));
    const int n = 2 + static_cast<int>(rng() % 49);
    const int d = 1 + static_cast<int>(rng() % 5);
    const OpinionState x0 = random_config(n, d, 5.0, rng());

    SimulateOptions opts;
    opts.cap = default_cap(n);
    opts.record_states = false;
    opts.record_diagnostics = false;
    try {
      const Trajectory tr = simulate(x0, opts);
      out.transitions = tr.steps_taken;
      out.capped = tr.cap_exceeded();
      out.merge_bound_ok = static_cast<long long>(tr.merge_times.size()) <= n - 1;
      if (!std::isnan(tr.min_slack_rmf)) out.min_rmf = tr.min_slack_rmf;
      if (!std::isnan(tr.min_slack_spectral)) out.min_spec = tr.min_slack_spectral;
      if (!std::isnan(tr.min_slack_gap)) out.min_gap = tr.min_slack_gap;
      if (!std::isnan(tr.min_slack_path)) out.min_path = tr.min_slack_path;
    } catch (const CheckViolation& v) {
      out.violation = v.check();
    }
  });

  SweepResults agg;
  agg.trials = trials;
  agg.seconds = seconds_since(start);
  for (const auto& r : results) {
    agg.transitions += r.transitions;
    if (!r.violation.empty()) ++agg.violations[r.violation];
    agg.min_slack_rmf = std::min(agg.min_slack_rmf, r.min_rmf);
    agg.min_slack_spectral = std::min(agg.min_slack_spectral, r.min_spec);
    agg.min_slack_gap = std::min(agg.min_slack_gap, r.min_gap);
    agg.min_slack_path = std::min(agg.min_slack_path, r.min_path);
    if (r.capped) ++agg.capped;
    if (!r.merge_bound_ok) ++agg.merge_bound_breaches;
  }
  return agg;
}

Outcome criterion_sweep_check(const SweepResults& sweep, const std::string& check,
                              double min_slack, bool enforce_budget) {
  Outcome out;
  long long bad = 0;
  for (const auto& [name, count] : sweep.violations) {
    if (name == check) bad += count;
  }
  const bool in_budget = !enforce_budget || sweep.seconds <= kTimeBudgetSeconds;
  out.pass = bad == 0 && in_budget;
  out.detail = fmt("%lld violations over %lld trajectories (%lld transitions), "
                   "min slack %.3e%s",
                   bad, sweep.trials, sweep.transitions, min_slack,
                   in_budget ? "" : ", TIME BUDGET EXCEEDED");
  out.seconds = sweep.seconds;
  return out;
}

// ---------------------------------------------------------------------------
Outcome criterion5_hand_trajectory() {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;

  OpinionState x0(3, 1);
  x0.coords = {0.0, 1.0, 2.0};

  const RationalTrajectory rt = rational_replay(x0, 10);
  const bool freeze_ok = rt.freezing_time && *rt.freezing_time == 2;
  const bool energy_ok = rt.energies.size() == 3 && rt.energies[0] == BigRational(6) &&
                         rt.energies[1] == BigRational(3) && rt.energies[2] == BigRational(0);
  const bool merge_ok = rt.merge_times == std::vector<long long>{1};

  SimulateOptions opts;
  opts.cap = 100;
  const Trajectory tr = simulate(x0, opts);
  const bool float_freeze_ok = tr.freezing_time && *tr.freezing_time == 2;
  bool slack_ok = false;
  double slack0 = std::numeric_limits<double>::quiet_NaN();
  if (!tr.diagnostics.empty()) {
    const StepDiagnostics& d0 = tr.diagnostics.front();
    slack0 = d0.slack_spectral;
    slack_ok = std::abs(d0.slack_spectral) <= 1e-12 && std::abs(d0.lambda - 0.5) <= 1e-10 &&
               d0.energy_active == 4.0 && d0.decrement == 3.0;
  }

  out.pass = freeze_ok && energy_ok && merge_ok && float_freeze_ok && slack_ok;
  out.detail = fmt("exact freeze at 2: %s, energies (6,3,0): %s, one merge: %s, "
                   "equality slack %.1e: %s",
                   freeze_ok ? "yes" : "NO", energy_ok ? "yes" : "NO",
                   merge_ok ? "yes" : "NO", slack0, slack_ok ? "yes" : "NO");
  out.seconds = seconds_since(start);
  return out;
}

Outcome criterion6_eigen_oracle() {
  const auto start = std::chrono::steady_clock::now();
  OpinionState path(3, 1);
  path.coords = {0.0, 1.0, 2.0};
  const double lam_path = lambda_t(build_graph(path));
  const double lam_complete = lambda_t(build_graph(line_config(5, 0.2)));

  Outcome out;
  out.pass = std::abs(lam_path - 0.5) <= 1e-10 && std::abs(lam_complete) <= 1e-10;
  out.detail = fmt("path-3 lambda = %.12f (want 1/2), complete-graph lambda = %.2e",
                   lam_path, lam_complete);
  out.seconds = seconds_since(start);
  return out;
}

struct CircleOutcome {
  Outcome outcome;
  long long capped = 0;
  long long merge_breaches = 0;
};

CircleOutcome criterion7_circle_scaling() {
  const auto start = std::chrono::steady_clock::now();
  ExperimentSpec spec;
  spec.family = Family::kCircle;
  spec.chord = 0.99;
  spec.n_values = {20, 40, 80, 160};
  spec.trials_per_n = 1;
  spec.with_spectral = false;  // pure freezing-time sweep
  const ExperimentReport report = run_experiment(spec);

  CircleOutcome result;
  for (const TrialRow& row : report.rows) {
    if (!row.freezing_time && !row.violated) ++result.capped;
    if (row.merge_count > row.n - 1) ++result.merge_breaches;
  }
  const double seconds = seconds_since(start);
  const bool have_fit = report.fit.has_value();
  const double slope = have_fit ? report.fit->slope : 0.0;
  result.outcome.pass = have_fit && std::abs(slope - 2.0) <= 0.3 &&
                        report.violation_count == 0 && seconds <= kTimeBudgetSeconds;
  result.outcome.detail =
      have_fit ? fmt("log-log slope %.3f +/- %.3f over n {20,40,80,160} (want 2.0 +/- 0.3)",
                     slope, report.fit->ci)
               : "fit unavailable (capped or violated rows)";
  result.outcome.seconds = seconds;
  return result;
}

Outcome criterion9_dumbbell_decrement() {
  const auto start = std::chrono::steady_clock::now();
  std::vector<double> ns, decrements;
  for (int m : {4, 8, 16, 32}) {
    const int n = 4 * m;
    // one exact update step; E(x0) - E(x1) computed in exact rationals
    const auto r0 = RationalState::from_state(dumbbell_config(m, 2 * m, 1.0));
    const auto r1 = hk_step_exact(r0, build_graph_exact(r0), 1'000'000);
    const BigRational decrement = energy_exact(r0) - energy_exact(r1);
    ns.push_back(static_cast<double>(n));
    decrements.push_back(decrement.convert_to<double>());
  }
  const FitResult fit = fit_loglog(ns, decrements);

  Outcome out;
  out.pass = std::abs(fit.slope - (-2.0)) <= 0.4;
  out.detail = fmt("first-step decrement slope %.3f over n {16,32,64,128} "
                   "(want -2.0 +/- 0.4); decrements %.3e .. %.3e",
                   fit.slope, decrements.front(), decrements.back());
  out.seconds = seconds_since(start);
  return out;
}

struct OracleOutcome {
  Outcome outcome;
  long long merge_breaches = 0;
};

OracleOutcome criterion10_oracle_agreement() {
  const auto start = std::chrono::steady_clock::now();
  const int trials = 100;
  std::vector<double> worst(trials, 0.0);
  std::vector<std::uint8_t> merge_ok(trials, 1);

  parallel_for(trials, [&](int idx) {
    std::mt19937_64 rng(trial_seed(kSweepSeed, 10, idx));
    const int n = 2 + static_cast<int>(rng() % 19);
    const int d = 1 + static_cast<int>(rng() % 3);
    OpinionState x0(n, d);
    for (double& c : x0.coords) c = static_cast<double>(rng() % 81) / 16.0;

    const RationalTrajectory rt = rational_replay(x0, 50);
    SimulateOptions opts;
    opts.cap = 50;
    opts.with_spectral = false;
    const Trajectory tr = simulate(x0, opts);
    merge_ok[idx] = static_cast<long long>(tr.merge_times.size()) <= n - 1 &&
                    static_cast<long long>(rt.merge_times.size()) <= n - 1;

    double max_diff = 0.0;
    for (long long t = 0; t <= 50; ++t) {
      const auto ei = std::min<std::size_t>(t, rt.states.size() - 1);
      const auto fi = std::min<std::size_t>(t, tr.states.size() - 1);
      max_diff = std::max(max_diff, max_coord_diff(rt.states[ei].to_state(), tr.states[fi]));
    }
    worst[idx] = max_diff;
  });

  double global_worst = 0.0;
  OracleOutcome result;
  for (int i = 0; i < trials; ++i) {
    global_worst = std::max(global_worst, worst[i]);
    if (!merge_ok[i]) ++result.merge_breaches;
  }
  result.outcome.pass = global_worst <= 1e-9;
  result.outcome.detail = fmt("worst per-coordinate divergence %.3e over %d replays x 50 "
                              "steps (want <= 1e-9)",
                              global_worst, trials);
  result.outcome.seconds = seconds_since(start);
  return result;
}

}  // namespace

int main() {
  std::printf("acceptance suite: %d workers\n", worker_count());

  const SweepResults sweep = run_random_sweep(1000);

  std::vector<std::pair<std::string, Outcome>> results;

  results.emplace_back("01 displacement decrement bound (random sweep)",
                       criterion_sweep_check(sweep, "rmf", sweep.min_slack_rmf, true));
  results.emplace_back("02 spectral decrement bound (random sweep)",
                       criterion_sweep_check(sweep, "spectral", sweep.min_slack_spectral,
                                             false));
  results.emplace_back("03 contraction gap bound (random sweep)",
                       criterion_sweep_check(sweep, "gap", sweep.min_slack_gap, false));
  results.emplace_back("04 active-energy path bound (random sweep)",
                       criterion_sweep_check(sweep, "path", sweep.min_slack_path, false));

  // Any violation category outside the four named checks also fails the gate.
  long long other_violations = 0;
  for (const auto& [name, count] : sweep.violations) {
    if (name != "rmf" && name != "spectral" && name != "gap" && name != "path") {
      other_violations += count;
    }
  }

  results.emplace_back("05 hand-verified trajectory [0,1,2]", criterion5_hand_trajectory());
  results.emplace_back("06 eigenvalue oracle (path-3 and complete graph)",
                       criterion6_eigen_oracle());

  const CircleOutcome circle = criterion7_circle_scaling();
  results.emplace_back("07 circle freezing-time scaling", circle.outcome);

  {
    Outcome cap;
    cap.pass = sweep.capped == 0 && circle.capped == 0;
    cap.detail = fmt("0 of %lld full-cap trajectories exceeded 10*n^4 steps "
                     "(random sweep %lld capped, circle %lld capped)",
                     sweep.trials + 4, sweep.capped, circle.capped);
    results.emplace_back("08 freezing-cap consistency", cap);
  }

  results.emplace_back("09 dumbbell first-step decrement scaling",
                       criterion9_dumbbell_decrement());

  const OracleOutcome oracle = criterion10_oracle_agreement();
  results.emplace_back("10 float vs exact-rational agreement", oracle.outcome);

  {
    Outcome merges;
    const long long breaches =
        sweep.merge_bound_breaches + circle.merge_breaches + oracle.merge_breaches;
    merges.pass = breaches == 0;
    merges.detail = fmt("%lld trajectories broke the n-1 merge-time bound", breaches);
    results.emplace_back("11 merge-time bound across all suites", merges);
  }

  bool all_pass = other_violations == 0;
  for (const auto& [name, outcome] : results) {
    std::printf("[%s] %s: %s (%.1fs)\n", outcome.pass ? "PASS" : "FAIL", name.c_str(),
                outcome.detail.c_str(), outcome.seconds);
    all_pass = all_pass && outcome.pass;
  }
  if (other_violations > 0) {
    std::printf("[FAIL] additional check violations outside criteria 1-4: %lld\n",
                other_violations);
  }

  int passed = 0;
  for (const auto& [name, outcome] : results) passed += outcome.pass ? 1 : 0;
  std::printf("ACCEPTANCE: %d/%zu criteria passed\n", passed, results.size());
  return all_pass ? 0 : 1;
}
