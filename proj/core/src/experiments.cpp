#include "hk/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>

#include "hk/generators.hpp"
#include "hk/io.hpp"
#include "hk/util.hpp"
#include "hk/verify.hpp"

namespace hk {

namespace {

void validate_spec(const ExperimentSpec& spec) {
  if (spec.n_values.empty()) throw std::invalid_argument("spec: n_values must be non-empty");
  for (std::size_t i = 0; i + 1 < spec.n_values.size(); ++i) {
    if (spec.n_values[i] >= spec.n_values[i + 1]) {
      throw std::invalid_argument("spec: n_values must be strictly increasing");
    }
  }
  if (spec.n_values.front() < 1) throw std::invalid_argument("spec: n values must be >= 1");
  if (spec.trials_per_n < 1) throw std::invalid_argument("spec: trials_per_n must be >= 1");
  if (!(spec.cap_multiplier > 0.0)) {
    throw std::invalid_argument("spec: cap_multiplier must be positive");
  }
  if (spec.mode == ArithmeticMode::kRational &&
      spec.n_values.back() > kRationalMaxAgents) {
    throw std::invalid_argument("spec: rational mode supports n <= " +
                                std::to_string(kRationalMaxAgents));
  }
}

}  // namespace

OpinionState make_family_config(const ExperimentSpec& spec, int n, int trial) {
  switch (spec.family) {
    case Family::kCircle:
      return spec.radius ? circle_config(n, *spec.radius)
                         : circle_config_by_chord(n, spec.chord);
    case Family::kDumbbell: {
      const int m = std::max(1, n / 4);
      const int k = n - 2 * m;
      if (k < 1) {
        throw std::invalid_argument("dumbbell family: n = " + std::to_string(n) +
                                    " leaves no chain agents");
      }
      return dumbbell_config(m, k, spec.spacing);
    }
    case Family::kLine:
      return line_config(n, spec.spacing);
    case Family::kRandom:
      return random_config(n, spec.dim, spec.box_side, trial_seed(spec.seed, n, trial));
  }
  throw std::logic_error("make_family_config: unknown family");
}

ExperimentReport run_experiment(const ExperimentSpec& spec) {
  validate_spec(spec);
  const int trials = spec.trials_per_n;
  const int total = static_cast<int>(spec.n_values.size()) * trials;

  ExperimentReport report;
  report.spec = spec;
  report.rows.resize(total);

  const std::filesystem::path out_dir = spec.output_dir;
  if (!spec.output_dir.empty()) std::filesystem::create_directories(out_dir);

  parallel_for(total, [&](int idx) {
    const int n = spec.n_values[idx / trials];
    const int trial = idx % trials;
    TrialRow row;
    row.n = n;
    row.trial = trial;
    row.cap = default_cap(n, spec.cap_multiplier);

    const auto t0 = std::chrono::steady_clock::now();
    try {
      const OpinionState x0 = make_family_config(spec, n, trial);
      SimulateOptions opts;
      opts.cap = row.cap;
      opts.mode = spec.mode;
      opts.with_spectral = spec.with_spectral;
      opts.record_states = spec.write_trajectories && spec.write_states;
      opts.record_diagnostics = spec.write_trajectories;
      const Trajectory tr = simulate(x0, opts);

      if (static_cast<long long>(tr.merge_times.size()) > n - 1) {
        throw CheckViolation("merge_bound", -1,
                             "{\"check\":\"merge_bound\",\"n\":" + std::to_string(n) + "}");
      }

      row.freezing_time = tr.freezing_time;
      row.merge_count = static_cast<long long>(tr.merge_times.size());
      row.min_slack_rmf = tr.min_slack_rmf;
      row.min_slack_spectral = tr.min_slack_spectral;
      row.min_slack_gap = tr.min_slack_gap;
      row.min_slack_path = tr.min_slack_path;
      row.initial_energy = tr.initial_energy;
      row.final_energy = tr.final_energy;

      if (spec.write_trajectories && !spec.output_dir.empty()) {
        const auto name = "trajectory_n" + std::to_string(n) + "_t" + std::to_string(trial) +
                          ".json";
        io::write_file(out_dir / name, io::trajectory_to_json(tr, spec.write_states));
      }
    } catch (const CheckViolation& v) {
      row.violated = true;
      row.violation_check = v.check();
      row.violation_step = v.step();
      if (!spec.output_dir.empty()) {
        const auto name = "violation_n" + std::to_string(n) + "_t" + std::to_string(trial) +
                          ".json";
        io::write_file(out_dir / name, v.bundle_json());
      }
    }
    row.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    report.rows[idx] = row;
  });

  for (const TrialRow& row : report.rows) {
    if (row.violated) ++report.violation_count;
  }

  std::size_t distinct_n = spec.n_values.size();
  if (distinct_n >= 3) {
    try {
      report.fit = fit_scaling(report.rows);
    } catch (const std::invalid_argument&) {
      report.fit.reset();  // capped medians or degenerate data: no fit
    }
  }

  if (!spec.output_dir.empty()) {
    io::write_file(out_dir / "report.json", io::report_to_json(report));
    io::write_file(out_dir / "report.csv", io::report_csv(report));
  }
  return report;
}

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median: empty input");
  std::sort(values.begin(), values.end());
  const std::size_t k = values.size() / 2;
  return values.size() % 2 == 1 ? values[k] : 0.5 * (values[k - 1] + values[k]);
}

FitResult fit_loglog(const std::vector<double>& n_values,
                     const std::vector<double>& medians) {
  if (n_values.size() != medians.size()) {
    throw std::invalid_argument("fit_loglog: size mismatch");
  }
  const std::size_t k = n_values.size();
  if (k < 3) throw std::invalid_argument("fit_loglog: need at least 3 points");

  std::vector<double> xs(k), ys(k);
  for (std::size_t i = 0; i < k; ++i) {
    if (!(n_values[i] > 0.0) || !(medians[i] > 0.0) || !std::isfinite(medians[i])) {
      throw std::invalid_argument("fit_loglog: values must be positive and finite");
    }
    xs[i] = std::log(n_values[i]);
    ys[i] = std::log(medians[i]);
  }

  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(k);
  my /= static_cast<double>(k);

  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_loglog: degenerate abscissae");

  FitResult fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;

  double ssr = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
    ssr += r * r;
  }
  const double sigma2 = ssr / static_cast<double>(k - 2);
  fit.ci = 2.0 * std::sqrt(sigma2 / sxx);
  return fit;
}

FitResult fit_scaling(const std::vector<TrialRow>& rows) {
  std::map<int, std::vector<double>> by_n;
  for (const TrialRow& row : rows) {
    const double value = row.freezing_time
                             ? static_cast<double>(*row.freezing_time)
                             : std::numeric_limits<double>::infinity();
    by_n[row.n].push_back(value);
  }
  if (by_n.size() < 3) {
    throw std::invalid_argument("fit_scaling: need at least 3 distinct n values");
  }
  std::vector<double> ns, meds;
  for (auto& [n, values] : by_n) {
    const double med = median(std::move(values));
    if (!std::isfinite(med)) {
      throw std::invalid_argument("fit_scaling: median freezing time for n = " +
                                  std::to_string(n) + " is cap-exceeded");
    }
    ns.push_back(static_cast<double>(n));
    meds.push_back(med);
  }
  return fit_loglog(ns, meds);
}

}  // namespace hk
