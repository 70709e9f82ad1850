#include "hk/verify.hpp"

#include <cmath>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hk/energy.hpp"
#include "hk/spectral.hpp"

namespace hk {

namespace {

// Tolerance for "stored successor matches the recomputed update" when a
// trajectory is replayed from its serialized states.
constexpr double kReplayTol = 1e-9;

nlohmann::json state_json(const OpinionState& x) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < x.n; ++i) {
    rows.push_back(std::vector<double>(x.row(i).begin(), x.row(i).end()));
  }
  return {{"n", x.n}, {"d", x.d}, {"coords", rows}};
}

nlohmann::json graph_json(const CommGraph& g) {
  nlohmann::json nbrs = nlohmann::json::array();
  for (const auto& list : neighbor_lists(g)) nbrs.push_back(list);
  return {{"n", g.n},
          {"neighbors", nbrs},
          {"degrees", g.degrees},
          {"component_count", g.component_count()}};
}

nlohmann::json diag_json(const StepDiagnostics& d) {
  return {{"t", d.t},
          {"energy_total", d.energy_total},
          {"energy_active", d.energy_active},
          {"lambda_t", d.lambda},
          {"diameter", d.diameter},
          {"decrement", d.decrement},
          {"rmf_bound", d.rmf_bound},
          {"spectral_bound", d.spectral_bound},
          {"gap_rhs", d.gap_rhs},
          {"slack_rmf", d.slack_rmf},
          {"slack_spectral", d.slack_spectral},
          {"slack_gap", d.slack_gap},
          {"slack_path", d.slack_path},
          {"merged", d.merged}};
}

[[noreturn]] void raise(const std::string& check, long long t, const OpinionState& x,
                        const OpinionState& x_next, const CommGraph& g,
                        const StepDiagnostics& diag, const SlackRecord& rec) {
  nlohmann::json bundle = {{"check", check},
                           {"t", t},
                           {"slack", rec.slack},
                           {"bound", rec.bound},
                           {"tol", rec.tol},
                           {"state", state_json(x)},
                           {"next_state", state_json(x_next)},
                           {"graph", graph_json(g)},
                           {"quantities", diag_json(diag)}};
  throw CheckViolation(check, t, bundle.dump(2));
}

}  // namespace

CheckViolation::CheckViolation(std::string check, long long step, std::string bundle_json)
    : std::runtime_error("check '" + check + "' violated at step " + std::to_string(step)),
      check_(std::move(check)),
      step_(step),
      bundle_(std::move(bundle_json)) {}

StepDiagnostics verify_step(const OpinionState& x, const OpinionState& x_next,
                            const CommGraph& g, long long t, bool with_spectral,
                            std::optional<bool> merged_override) {
  const EnergyReport before = energy(x);
  const EnergyReport after = energy(x_next);

  StepDiagnostics diag;
  diag.t = t;
  diag.energy_total = before.total;
  diag.energy_active = before.active;
  diag.decrement = before.total - after.total;
  diag.merged = merged_override ? *merged_override : detect_merges(x, x_next);

  const double tol = check_tolerance(before.total);

  SlackRecord rmf = check_rmf_decrement(x, x_next, before.total, after.total);
  diag.rmf_bound = rmf.bound;
  diag.slack_rmf = rmf.slack;

  if (diag.decrement < -tol) {
    SlackRecord mono{diag.decrement, 0.0, diag.decrement, tol, true};
    raise("monotone", t, x, x_next, g, diag, mono);
  }
  if (rmf.violated) raise("rmf", t, x, x_next, g, diag, rmf);

  if (with_spectral) {
    const SpectralReport sr = spectral_report(g);
    diag.lambda = sr.lambda;
    diag.diameter = sr.diameter;
    diag.gap_rhs = sr.gap_bound;
    diag.spectral_done = true;

    SlackRecord spec = check_spectral_decrement(diag.decrement, before.active,
                                                before.total, sr);
    diag.spectral_bound = spec.bound;
    diag.slack_spectral = spec.slack;
    if (spec.violated) raise("spectral", t, x, x_next, g, diag, spec);

    SlackRecord gap = check_gap_bound(g, sr);
    diag.slack_gap = gap.slack;
    if (gap.violated) raise("gap", t, x, x_next, g, diag, gap);

    SlackRecord path = check_path_bound(before, sr.diameter);
    diag.slack_path = path.slack;
    if (path.violated) raise("path", t, x, x_next, g, diag, path);

    // Non-merging step with diameter >= 2: compose the contraction gap with
    // the spectral bound into decrement >= E_active / (n^2 * diam).
    if (!diag.merged && sr.diameter >= 2) {
      SlackRecord comp;
      comp.decrement = diag.decrement;
      comp.bound = before.active / (static_cast<double>(x.n) * x.n * sr.diameter);
      comp.slack = comp.decrement - comp.bound;
      comp.tol = tol;
      comp.violated = comp.slack < -tol;
      if (comp.violated) raise("composed", t, x, x_next, g, diag, comp);
    }
  }

  return diag;
}

StepDiagnostics verify_step(const OpinionState& x, const OpinionState& x_next,
                            long long t, bool with_spectral) {
  return verify_step(x, x_next, build_graph(x), t, with_spectral);
}

namespace {

struct SlackAccum {
  double min = std::numeric_limits<double>::quiet_NaN();
  double sum = 0.0;
  long long count = 0;

  void add(double v) {
    if (std::isnan(v)) return;
    if (std::isnan(min) || v < min) min = v;
    sum += v;
    ++count;
  }
  double mean() const {
    return count > 0 ? sum / count : std::numeric_limits<double>::quiet_NaN();
  }
};

std::vector<std::pair<int, int>> equal_pairs(const OpinionState& x, double tol) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < x.n; ++i) {
    for (int j = i + 1; j < x.n; ++j) {
      bool eq = true;
      for (int k = 0; k < x.d; ++k) {
        if (std::abs(x.at(i, k) - x.at(j, k)) > tol) {
          eq = false;
          break;
        }
      }
      if (eq) pairs.emplace_back(i, j);
    }
  }
  return pairs;
}

[[noreturn]] void raise_trajectory(const std::string& check, long long t,
                                   const std::string& detail) {
  nlohmann::json bundle = {{"check", check}, {"t", t}, {"detail", detail}};
  throw CheckViolation(check, t, bundle.dump(2));
}

}  // namespace

VerificationSummary verify_trajectory(const Trajectory& tr) {
  if (tr.states.empty()) {
    throw std::invalid_argument("verify_trajectory: trajectory has no states");
  }
  VerificationSummary s;
  s.n = tr.states.front().n;
  s.transitions = tr.steps_taken;
  s.merge_count = static_cast<long long>(tr.merge_times.size());

  const double slow_threshold = 1.0 / (static_cast<double>(s.n) * s.n);
  SlackAccum rmf, spectral, gap, path;

  const bool full_replay = tr.mode == ArithmeticMode::kFloat && tr.states_complete &&
                           tr.states.size() >= 2;
  if (full_replay) {
    const bool with_spectral =
        tr.diagnostics.empty() ? true : tr.diagnostics.front().spectral_done;
    long long merges = 0;
    for (std::size_t t = 0; t + 1 < tr.states.size(); ++t) {
      const OpinionState& x = tr.states[t];
      const OpinionState& x_next = tr.states[t + 1];
      const OpinionState recomputed = hk_step(x);
      if (max_coord_diff(recomputed, x_next) > kReplayTol) {
        raise_trajectory("replay", static_cast<long long>(t),
                         "stored successor does not match the recomputed update");
      }
      StepDiagnostics diag =
          verify_step(x, x_next, static_cast<long long>(t), with_spectral);
      if (diag.merged) ++merges;
      rmf.add(diag.slack_rmf);
      spectral.add(diag.slack_spectral);
      gap.add(diag.slack_gap);
      path.add(diag.slack_path);
      if (diag.decrement < slow_threshold) ++s.slow_step_count;

      // merges must be irreversible: pairs equal at t stay equal at t+1
      for (auto [i, j] : equal_pairs(x, kMergeTol)) {
        for (int k = 0; k < x.d; ++k) {
          if (std::abs(x_next.at(i, k) - x_next.at(j, k)) > kMergeTol) {
            raise_trajectory("merge_irreversible", static_cast<long long>(t),
                             "agents " + std::to_string(i) + " and " + std::to_string(j) +
                                 " separated after merging");
          }
        }
      }
    }
    s.merge_count = merges;
  } else if (!tr.diagnostics.empty()) {
    for (const StepDiagnostics& diag : tr.diagnostics) {
      const double tol = check_tolerance(diag.energy_total);
      if (diag.decrement < -tol) raise_trajectory("monotone", diag.t, "energy increased");
      if (diag.slack_rmf < -tol) raise_trajectory("rmf", diag.t, "stored slack negative");
      if (diag.spectral_done) {
        if (diag.slack_spectral < -tol) {
          raise_trajectory("spectral", diag.t, "stored slack negative");
        }
        if (diag.slack_gap < -1e-9) raise_trajectory("gap", diag.t, "stored slack negative");
        if (diag.slack_path < -tol) raise_trajectory("path", diag.t, "stored slack negative");
      }
      rmf.add(diag.slack_rmf);
      spectral.add(diag.slack_spectral);
      gap.add(diag.slack_gap);
      path.add(diag.slack_path);
      if (diag.decrement < slow_threshold) ++s.slow_step_count;
    }
  } else {
    // Aggregates are all that survived; audit those.
    rmf.add(tr.min_slack_rmf);
    spectral.add(tr.min_slack_spectral);
    gap.add(tr.min_slack_gap);
    path.add(tr.min_slack_path);
    s.slow_step_count = tr.slow_step_count;
    const double tol = check_tolerance(tr.initial_energy);
    if (!std::isnan(tr.min_slack_rmf) && tr.min_slack_rmf < -tol) {
      raise_trajectory("rmf", -1, "aggregate min slack negative");
    }
    if (!std::isnan(tr.min_slack_spectral) && tr.min_slack_spectral < -tol) {
      raise_trajectory("spectral", -1, "aggregate min slack negative");
    }
    if (!std::isnan(tr.min_slack_gap) && tr.min_slack_gap < -1e-9) {
      raise_trajectory("gap", -1, "aggregate min slack negative");
    }
    if (!std::isnan(tr.min_slack_path) && tr.min_slack_path < -tol) {
      raise_trajectory("path", -1, "aggregate min slack negative");
    }
  }

  if (s.merge_count > s.n - 1) {
    raise_trajectory("merge_bound", -1,
                     std::to_string(s.merge_count) + " merge times for n = " +
                         std::to_string(s.n));
  }

  s.min_slack_rmf = rmf.min;
  s.min_slack_spectral = spectral.min;
  s.min_slack_gap = gap.min;
  s.min_slack_path = path.min;
  s.mean_slack_rmf = rmf.mean();
  s.mean_slack_spectral = spectral.mean();
  s.mean_slack_gap = gap.mean();
  s.mean_slack_path = path.mean();
  return s;
}

}  // namespace hk
