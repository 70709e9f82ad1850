#include "hk/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace hk::io {

namespace {

using nlohmann::json;

double as_double(const json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

json rows_json(const OpinionState& x) {
  json rows = json::array();
  for (int i = 0; i < x.n; ++i) {
    rows.push_back(std::vector<double>(x.row(i).begin(), x.row(i).end()));
  }
  return rows;
}

OpinionState state_from(const json& j) {
  OpinionState x;
  x.n = j.at("n").get<int>();
  x.d = j.at("d").get<int>();
  const json& rows = j.at("coords");
  if (!rows.is_array() || static_cast<int>(rows.size()) != x.n) {
    throw std::invalid_argument("configuration: coords must hold n rows");
  }
  x.coords.reserve(static_cast<std::size_t>(x.n) * x.d);
  for (const json& row : rows) {
    if (!row.is_array() || static_cast<int>(row.size()) != x.d) {
      throw std::invalid_argument("configuration: each coords row must hold d values");
    }
    for (const json& v : row) x.coords.push_back(v.get<double>());
  }
  validate(x);
  return x;
}

std::string mode_name(ArithmeticMode mode) {
  return mode == ArithmeticMode::kFloat ? "float" : "rational";
}

ArithmeticMode mode_from(const std::string& name) {
  if (name == "float") return ArithmeticMode::kFloat;
  if (name == "rational") return ArithmeticMode::kRational;
  throw std::invalid_argument("unknown arithmetic mode '" + name + "'");
}

std::string family_name(Family family) {
  switch (family) {
    case Family::kCircle: return "circle";
    case Family::kDumbbell: return "dumbbell";
    case Family::kLine: return "line";
    case Family::kRandom: return "random";
  }
  throw std::logic_error("unknown family");
}

Family family_from(const std::string& name) {
  if (name == "circle") return Family::kCircle;
  if (name == "dumbbell") return Family::kDumbbell;
  if (name == "line") return Family::kLine;
  if (name == "random") return Family::kRandom;
  throw std::invalid_argument("unknown family '" + name + "'");
}

json diag_to_json(const StepDiagnostics& d) {
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
          {"merged", d.merged},
          {"spectral_done", d.spectral_done}};
}

StepDiagnostics diag_from_json(const json& j) {
  StepDiagnostics d;
  d.t = j.at("t").get<long long>();
  d.energy_total = as_double(j.at("energy_total"));
  d.energy_active = as_double(j.at("energy_active"));
  d.lambda = as_double(j.at("lambda_t"));
  d.diameter = j.at("diameter").get<int>();
  d.decrement = as_double(j.at("decrement"));
  d.rmf_bound = as_double(j.at("rmf_bound"));
  d.spectral_bound = as_double(j.at("spectral_bound"));
  d.gap_rhs = as_double(j.at("gap_rhs"));
  d.slack_rmf = as_double(j.at("slack_rmf"));
  d.slack_spectral = as_double(j.at("slack_spectral"));
  d.slack_gap = as_double(j.at("slack_gap"));
  d.slack_path = as_double(j.at("slack_path"));
  d.merged = j.at("merged").get<bool>();
  d.spectral_done = j.value("spectral_done", !std::isnan(d.lambda));
  return d;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string config_to_json(const OpinionState& x) {
  const json j = {{"n", x.n}, {"d", x.d}, {"coords", rows_json(x)}};
  return j.dump(2) + "\n";
}

OpinionState config_from_json(const std::string& text) {
  return state_from(json::parse(text));
}

std::string trajectory_to_json(const Trajectory& tr, bool include_states) {
  json j;
  j["n"] = tr.states.front().n;
  j["d"] = tr.states.front().d;
  j["mode"] = mode_name(tr.mode);
  j["cap"] = tr.cap;
  j["steps_taken"] = tr.steps_taken;
  if (tr.freezing_time) {
    j["freezing_time"] = *tr.freezing_time;
  } else {
    j["freezing_time"] = nullptr;
  }
  j["cap_exceeded"] = tr.cap_exceeded();
  j["merge_times"] = tr.merge_times;
  j["initial_energy"] = tr.initial_energy;
  j["final_energy"] = tr.final_energy;
  j["min_slack"] = {{"rmf", tr.min_slack_rmf},
                    {"spectral", tr.min_slack_spectral},
                    {"gap", tr.min_slack_gap},
                    {"path", tr.min_slack_path}};
  j["slow_step_count"] = tr.slow_step_count;

  json states = json::array();
  if (include_states || tr.states.size() <= 2) {
    for (const OpinionState& s : tr.states) states.push_back(rows_json(s));
    j["states_complete"] = tr.states_complete;
  } else {
    states.push_back(rows_json(tr.states.front()));
    states.push_back(rows_json(tr.states.back()));
    j["states_complete"] = false;
  }
  j["states"] = std::move(states);

  json diags = json::array();
  for (const StepDiagnostics& d : tr.diagnostics) diags.push_back(diag_to_json(d));
  j["diagnostics"] = std::move(diags);
  return j.dump(2) + "\n";
}

Trajectory trajectory_from_json(const std::string& text) {
  const json j = json::parse(text);
  Trajectory tr;
  const int n = j.at("n").get<int>();
  const int d = j.at("d").get<int>();
  tr.mode = mode_from(j.at("mode").get<std::string>());
  tr.cap = j.at("cap").get<long long>();
  tr.steps_taken = j.at("steps_taken").get<long long>();
  if (!j.at("freezing_time").is_null()) {
    tr.freezing_time = j.at("freezing_time").get<long long>();
  }
  tr.merge_times = j.at("merge_times").get<std::vector<long long>>();
  tr.initial_energy = as_double(j.at("initial_energy"));
  tr.final_energy = as_double(j.at("final_energy"));
  const json& ms = j.at("min_slack");
  tr.min_slack_rmf = as_double(ms.at("rmf"));
  tr.min_slack_spectral = as_double(ms.at("spectral"));
  tr.min_slack_gap = as_double(ms.at("gap"));
  tr.min_slack_path = as_double(ms.at("path"));
  tr.slow_step_count = j.at("slow_step_count").get<long long>();
  tr.states_complete = j.at("states_complete").get<bool>();

  for (const json& rows : j.at("states")) {
    OpinionState s;
    s.n = n;
    s.d = d;
    s.coords.reserve(static_cast<std::size_t>(n) * d);
    for (const json& row : rows) {
      for (const json& v : row) s.coords.push_back(v.get<double>());
    }
    validate(s);
    tr.states.push_back(std::move(s));
  }
  if (tr.states.empty()) throw std::invalid_argument("trajectory: no states");

  for (const json& dj : j.at("diagnostics")) tr.diagnostics.push_back(diag_from_json(dj));
  return tr;
}

std::string diagnostics_csv(const std::vector<StepDiagnostics>& diags) {
  std::ostringstream out;
  out << "t,energy_total,energy_active,lambda_t,diameter,decrement,"
         "slack_rmf,slack_spectral,slack_gap,slack_path,merged\n";
  for (const StepDiagnostics& d : diags) {
    out << d.t << ',' << format_double(d.energy_total) << ',' << format_double(d.energy_active)
        << ',' << format_double(d.lambda) << ',' << d.diameter << ','
        << format_double(d.decrement) << ',' << format_double(d.slack_rmf) << ','
        << format_double(d.slack_spectral) << ',' << format_double(d.slack_gap) << ','
        << format_double(d.slack_path) << ',' << (d.merged ? 1 : 0) << '\n';
  }
  return out.str();
}

std::string spec_to_json(const ExperimentSpec& spec) {
  json params = {{"chord", spec.chord},
                 {"spacing", spec.spacing},
                 {"box_side", spec.box_side},
                 {"d", spec.dim}};
  if (spec.radius) params["radius"] = *spec.radius;
  const json j = {{"family", family_name(spec.family)},
                  {"params", params},
                  {"n_values", spec.n_values},
                  {"trials_per_n", spec.trials_per_n},
                  {"seed", spec.seed},
                  {"mode", mode_name(spec.mode)},
                  {"cap_multiplier", spec.cap_multiplier},
                  {"with_spectral", spec.with_spectral},
                  {"outputs",
                   {{"dir", spec.output_dir},
                    {"write_trajectories", spec.write_trajectories},
                    {"write_states", spec.write_states}}}};
  return j.dump(2) + "\n";
}

ExperimentSpec spec_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("spec: invalid JSON: ") + e.what());
  }
  ExperimentSpec spec;
  try {
    spec.family = family_from(j.at("family").get<std::string>());
    const json params = j.value("params", json::object());
    spec.chord = params.value("chord", spec.chord);
    if (params.contains("radius")) spec.radius = params.at("radius").get<double>();
    spec.spacing = params.value("spacing", spec.spacing);
    spec.box_side = params.value("box_side", spec.box_side);
    spec.dim = params.value("d", spec.dim);
    spec.n_values = j.at("n_values").get<std::vector<int>>();
    spec.trials_per_n = j.value("trials_per_n", 1);
    spec.seed = j.value("seed", static_cast<std::uint64_t>(0));
    spec.mode = mode_from(j.value("mode", std::string("float")));
    spec.cap_multiplier = j.value("cap_multiplier", 10.0);
    spec.with_spectral = j.value("with_spectral", true);
    const json outputs = j.value("outputs", json::object());
    spec.output_dir = outputs.value("dir", std::string());
    spec.write_trajectories = outputs.value("write_trajectories", false);
    spec.write_states = outputs.value("write_states", false);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("spec: ") + e.what());
  }
  return spec;
}

namespace {

json row_to_json(const TrialRow& row) {
  json j = {{"n", row.n},
            {"trial", row.trial},
            {"cap", row.cap},
            {"merge_count", row.merge_count},
            {"min_slack_rmf", row.min_slack_rmf},
            {"min_slack_spectral", row.min_slack_spectral},
            {"min_slack_gap", row.min_slack_gap},
            {"min_slack_path", row.min_slack_path},
            {"initial_energy", row.initial_energy},
            {"final_energy", row.final_energy},
            {"violated", row.violated},
            {"violation_check", row.violation_check},
            {"violation_step", row.violation_step},
            {"wall_ms", row.wall_ms}};
  if (row.freezing_time) {
    j["freezing_time"] = *row.freezing_time;
  } else {
    j["freezing_time"] = nullptr;
  }
  return j;
}

TrialRow row_from_json(const json& j) {
  TrialRow row;
  row.n = j.at("n").get<int>();
  row.trial = j.at("trial").get<int>();
  row.cap = j.at("cap").get<long long>();
  if (!j.at("freezing_time").is_null()) {
    row.freezing_time = j.at("freezing_time").get<long long>();
  }
  row.merge_count = j.at("merge_count").get<long long>();
  row.min_slack_rmf = as_double(j.at("min_slack_rmf"));
  row.min_slack_spectral = as_double(j.at("min_slack_spectral"));
  row.min_slack_gap = as_double(j.at("min_slack_gap"));
  row.min_slack_path = as_double(j.at("min_slack_path"));
  row.initial_energy = as_double(j.at("initial_energy"));
  row.final_energy = as_double(j.at("final_energy"));
  row.violated = j.at("violated").get<bool>();
  row.violation_check = j.at("violation_check").get<std::string>();
  row.violation_step = j.at("violation_step").get<long long>();
  row.wall_ms = j.value("wall_ms", 0.0);
  return row;
}

}  // namespace

std::string report_to_json(const ExperimentReport& report) {
  json rows = json::array();
  for (const TrialRow& row : report.rows) rows.push_back(row_to_json(row));
  json j = {{"spec", json::parse(spec_to_json(report.spec))},
            {"rows", std::move(rows)},
            {"violation_count", report.violation_count}};
  if (report.fit) {
    j["fit"] = {{"slope", report.fit->slope},
                {"intercept", report.fit->intercept},
                {"ci", report.fit->ci}};
  } else {
    j["fit"] = nullptr;
  }
  return j.dump(2) + "\n";
}

ExperimentReport report_from_json(const std::string& text) {
  const json j = json::parse(text);
  ExperimentReport report;
  report.spec = spec_from_json(j.at("spec").dump());
  for (const json& rj : j.at("rows")) report.rows.push_back(row_from_json(rj));
  report.violation_count = j.at("violation_count").get<long long>();
  if (!j.at("fit").is_null()) {
    FitResult fit;
    fit.slope = j.at("fit").at("slope").get<double>();
    fit.intercept = j.at("fit").at("intercept").get<double>();
    fit.ci = j.at("fit").at("ci").get<double>();
    report.fit = fit;
  }
  return report;
}

std::string report_csv(const ExperimentReport& report) {
  std::ostringstream out;
  out << "n,trial,freezing_time,cap_exceeded,merge_count,min_slack_rmf,min_slack_spectral,"
         "min_slack_gap,min_slack_path,initial_energy,final_energy,violated,violation_check\n";
  for (const TrialRow& row : report.rows) {
    out << row.n << ',' << row.trial << ','
        << (row.freezing_time ? *row.freezing_time : -1) << ','
        << (row.freezing_time || row.violated ? 0 : 1) << ',' << row.merge_count << ','
        << format_double(row.min_slack_rmf) << ',' << format_double(row.min_slack_spectral)
        << ',' << format_double(row.min_slack_gap) << ',' << format_double(row.min_slack_path)
        << ',' << format_double(row.initial_energy) << ',' << format_double(row.final_energy)
        << ',' << (row.violated ? 1 : 0) << ',' << row.violation_check << '\n';
  }
  return out.str();
}

std::string summary_to_json(const VerificationSummary& s) {
  const json j = {{"n", s.n},
                  {"transitions", s.transitions},
                  {"merge_count", s.merge_count},
                  {"merge_bound_ok", s.merge_bound_ok},
                  {"energy_monotone_ok", s.energy_monotone_ok},
                  {"merges_irreversible_ok", s.merges_irreversible_ok},
                  {"min_slack",
                   {{"rmf", s.min_slack_rmf},
                    {"spectral", s.min_slack_spectral},
                    {"gap", s.min_slack_gap},
                    {"path", s.min_slack_path}}},
                  {"mean_slack",
                   {{"rmf", s.mean_slack_rmf},
                    {"spectral", s.mean_slack_spectral},
                    {"gap", s.mean_slack_gap},
                    {"path", s.mean_slack_path}}},
                  {"slow_step_count", s.slow_step_count},
                  {"all_ok", s.all_ok}};
  return j.dump(2) + "\n";
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

bool json_is_trajectory(const std::string& text) {
  const json j = json::parse(text);
  return j.contains("states");
}

}  // namespace hk::io
