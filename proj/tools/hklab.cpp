#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "hk/experiments.hpp"
#include "hk/generators.hpp"
#include "hk/io.hpp"
#include "hk/rational.hpp"
#include "hk/verify.hpp"

namespace {

struct FamilyFlags {
  std::string family;
  int n = 0;
  double chord = 0.99;
  std::optional<double> radius;
  int m = 0;
  int k = 0;
  double spacing = 1.0;
  int dim = 2;
  double box = 5.0;
  std::uint64_t seed = 0;
};

void add_family_flags(CLI::App* cmd, FamilyFlags& ff) {
  cmd->add_option("--family", ff.family, "Initial configuration family")
      ->check(CLI::IsMember({"circle", "dumbbell", "line", "random"}));
  cmd->add_option("--n", ff.n, "Agent count (circle, line, random)");
  cmd->add_option("--chord", ff.chord, "Circle: adjacent chord length in (0,1]");
  cmd->add_option_function<double>(
      "--radius", [&ff](double r) { ff.radius = r; }, "Circle: explicit radius");
  cmd->add_option("--m", ff.m, "Dumbbell: cluster size");
  cmd->add_option("--k", ff.k, "Dumbbell: chain length");
  cmd->add_option("--spacing", ff.spacing, "Dumbbell/line: agent spacing in (0,1]");
  cmd->add_option("--d", ff.dim, "Random: opinion dimension");
  cmd->add_option("--box", ff.box, "Random: box side length");
  cmd->add_option("--seed", ff.seed, "Random: RNG seed");
}

hk::OpinionState build_config(const FamilyFlags& ff, const std::string& input_path) {
  if (!input_path.empty()) return hk::io::config_from_json(hk::io::read_file(input_path));
  if (ff.family.empty()) {
    throw CLI::ValidationError("either --input or --family is required");
  }
  if (ff.family == "circle") {
    return ff.radius ? hk::circle_config(ff.n, *ff.radius)
                     : hk::circle_config_by_chord(ff.n, ff.chord);
  }
  if (ff.family == "dumbbell") return hk::dumbbell_config(ff.m, ff.k, ff.spacing);
  if (ff.family == "line") return hk::line_config(ff.n, ff.spacing);
  return hk::random_config(ff.n, ff.dim, ff.box, ff.seed);
}

hk::ArithmeticMode parse_mode(const std::string& name) {
  return name == "rational" ? hk::ArithmeticMode::kRational : hk::ArithmeticMode::kFloat;
}

void print_trajectory_summary(const hk::Trajectory& tr) {
  const auto& x0 = tr.initial_state();
  std::printf("agents: %d   dimension: %d   mode: %s\n", x0.n, x0.d,
              tr.mode == hk::ArithmeticMode::kFloat ? "float" : "rational");
  if (tr.freezing_time) {
    std::printf("freezing time: %lld\n", static_cast<long long>(*tr.freezing_time));
  } else {
    std::printf("freezing time: cap exceeded after %lld steps\n", tr.steps_taken);
  }
  std::printf("merge times: %zu   energy: %.17g -> %.17g\n", tr.merge_times.size(),
              tr.initial_energy, tr.final_energy);
  std::printf("min slack: rmf=%.3g spectral=%.3g gap=%.3g path=%.3g\n", tr.min_slack_rmf,
              tr.min_slack_spectral, tr.min_slack_gap, tr.min_slack_path);
}

int run_simulate(const FamilyFlags& ff, const std::string& input, const std::string& mode,
                 long long cap, double cap_multiplier, bool no_spectral, bool no_states,
                 const std::string& out, const std::string& csv) {
  const hk::OpinionState x0 = build_config(ff, input);
  hk::SimulateOptions opts;
  opts.cap = cap > 0 ? cap : hk::default_cap(x0.n, cap_multiplier);
  opts.mode = parse_mode(mode);
  opts.with_spectral = !no_spectral;
  opts.record_states = !no_states;
  const hk::Trajectory tr = hk::simulate(x0, opts);
  print_trajectory_summary(tr);
  if (!out.empty()) hk::io::write_file(out, hk::io::trajectory_to_json(tr, !no_states));
  if (!csv.empty()) hk::io::write_file(csv, hk::io::diagnostics_csv(tr.diagnostics));
  return 0;
}

int run_verify(const std::string& input, const std::string& mode, long long steps,
               double cap_multiplier, bool no_spectral, const std::string& out) {
  const std::string text = hk::io::read_file(input);
  hk::VerificationSummary summary;
  if (hk::io::json_is_trajectory(text)) {
    summary = hk::verify_trajectory(hk::io::trajectory_from_json(text));
  } else {
    const hk::OpinionState x0 = hk::io::config_from_json(text);
    hk::SimulateOptions opts;
    opts.cap = steps > 0 ? steps : hk::default_cap(x0.n, cap_multiplier);
    opts.mode = parse_mode(mode);
    opts.with_spectral = !no_spectral;
    summary = hk::verify_trajectory(hk::simulate(x0, opts));
  }
  const std::string json = hk::io::summary_to_json(summary);
  std::fputs(json.c_str(), stdout);
  if (!out.empty()) hk::io::write_file(out, json);
  return summary.all_ok ? 0 : 1;
}

int run_sweep(const std::string& spec_path, const std::string& out_dir, bool no_spectral) {
  hk::ExperimentSpec spec = hk::io::spec_from_json(hk::io::read_file(spec_path));
  if (!out_dir.empty()) spec.output_dir = out_dir;
  if (no_spectral) spec.with_spectral = false;
  const hk::ExperimentReport report = hk::run_experiment(spec);

  long long frozen = 0, capped = 0;
  for (const auto& row : report.rows) {
    if (row.freezing_time) ++frozen;
    if (!row.freezing_time && !row.violated) ++capped;
  }
  std::printf("rows: %zu   frozen: %lld   cap-exceeded: %lld   violations: %lld\n",
              report.rows.size(), frozen, capped, report.violation_count);
  if (report.fit) {
    std::printf("freezing-time fit: slope %.4f +/- %.4f (intercept %.4f)\n",
                report.fit->slope, report.fit->ci, report.fit->intercept);
  }
  if (!spec.output_dir.empty()) {
    std::printf("report written to %s\n", spec.output_dir.c_str());
  }
  return report.violation_count > 0 ? 1 : 0;
}

int run_fit(const std::string& report_path, const std::string& out) {
  const hk::ExperimentReport report =
      hk::io::report_from_json(hk::io::read_file(report_path));
  const hk::FitResult fit = hk::fit_scaling(report.rows);
  const nlohmann::json j = {
      {"slope", fit.slope}, {"intercept", fit.intercept}, {"ci", fit.ci}};
  const std::string text = j.dump(2) + "\n";
  std::fputs(text.c_str(), stdout);
  if (!out.empty()) hk::io::write_file(out, text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hklab -- bounded-confidence opinion dynamics: simulation and "
               "step-by-step certification of its energy and contraction bounds"};
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand("simulate", "Run one trajectory with full diagnostics");
  FamilyFlags sim_ff;
  std::string sim_input, sim_mode = "float", sim_out, sim_csv;
  long long sim_cap = 0;
  double sim_cap_multiplier = 10.0;
  bool sim_no_spectral = false, sim_no_states = false;
  add_family_flags(sim, sim_ff);
  sim->add_option("--input", sim_input, "Configuration JSON file instead of --family");
  sim->add_option("--mode", sim_mode, "Arithmetic mode")
      ->check(CLI::IsMember({"float", "rational"}));
  sim->add_option("--cap", sim_cap, "Step cap (0 = cap-multiplier * n^4)");
  sim->add_option("--cap-multiplier", sim_cap_multiplier, "Cap multiplier on n^4");
  sim->add_flag("--no-spectral", sim_no_spectral,
                "Skip eigensolves and graph diameters (faster freezing-time runs)");
  sim->add_flag("--no-states", sim_no_states, "Do not keep or write the state history");
  sim->add_option("--out", sim_out, "Write the trajectory JSON here");
  sim->add_option("--csv", sim_csv, "Write the per-step diagnostics CSV here");

  // verify
  auto* ver = app.add_subcommand("verify",
                                 "Replay and check a serialized trajectory or configuration");
  std::string ver_input, ver_mode = "float", ver_out;
  long long ver_steps = 0;
  double ver_cap_multiplier = 10.0;
  bool ver_no_spectral = false;
  ver->add_option("--input", ver_input, "Trajectory or configuration JSON")->required();
  ver->add_option("--mode", ver_mode, "Arithmetic mode for configuration replays")
      ->check(CLI::IsMember({"float", "rational"}));
  ver->add_option("--steps", ver_steps, "Step budget for configuration replays (0 = auto)");
  ver->add_option("--cap-multiplier", ver_cap_multiplier, "Cap multiplier on n^4");
  ver->add_flag("--no-spectral", ver_no_spectral, "Skip the spectral checks");
  ver->add_option("--out", ver_out, "Write the verification summary JSON here");

  // sweep
  auto* sw = app.add_subcommand("sweep", "Run an experiment spec file");
  std::string sw_spec, sw_out_dir;
  bool sw_no_spectral = false;
  sw->add_option("--spec", sw_spec, "Experiment spec JSON")->required();
  sw->add_option("--out-dir", sw_out_dir, "Override the spec's output directory");
  sw->add_flag("--no-spectral", sw_no_spectral,
               "Override the spec: skip the per-step spectral work");

  // fit
  auto* ft = app.add_subcommand("fit", "Scaling fit on a sweep report");
  std::string ft_report, ft_out;
  ft->add_option("--report", ft_report, "report.json produced by sweep")->required();
  ft->add_option("--out", ft_out, "Write the fit JSON here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) {
      return run_simulate(sim_ff, sim_input, sim_mode, sim_cap, sim_cap_multiplier,
                          sim_no_spectral, sim_no_states, sim_out, sim_csv);
    }
    if (ver->parsed()) {
      return run_verify(ver_input, ver_mode, ver_steps, ver_cap_multiplier, ver_no_spectral,
                        ver_out);
    }
    if (sw->parsed()) return run_sweep(sw_spec, sw_out_dir, sw_no_spectral);
    if (ft->parsed()) return run_fit(ft_report, ft_out);
  } catch (const hk::CheckViolation& v) {
    std::cerr << "VIOLATION: " << v.what() << "\n" << v.bundle_json() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
