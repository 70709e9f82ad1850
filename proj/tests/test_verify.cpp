#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include <json.hpp>

#include "hk/dynamics.hpp"
#include "hk/energy.hpp"
#include "hk/generators.hpp"
#include "hk/verify.hpp"

using namespace hk;

namespace {

OpinionState make1d(std::vector<double> xs) {
  OpinionState x(static_cast<int>(xs.size()), 1);
  x.coords = std::move(xs);
  return x;
}

}  // namespace

TEST_CASE("verify_step on [0,1,2]: all four slacks at their hand values") {
  const auto x = make1d({0.0, 1.0, 2.0});
  const auto diag = verify_step(x, hk_step(x));
  CHECK(diag.energy_total == 6.0);
  CHECK(diag.energy_active == 4.0);
  CHECK(diag.decrement == 3.0);
  CHECK(diag.slack_rmf == 1.0);
  CHECK(std::abs(diag.slack_spectral) < 1e-12);
  CHECK(diag.slack_gap == doctest::Approx(17.0 / 18 - 0.5).epsilon(1e-9));
  CHECK(diag.slack_path == doctest::Approx(3.5).epsilon(1e-12));
  CHECK(diag.diameter == 2);
  CHECK(std::abs(diag.lambda - 0.5) < 1e-10);
  CHECK_FALSE(diag.merged);
}

TEST_CASE("verify_step on a frozen state: zero decrement, no violations") {
  const auto x = make1d({0.0, 0.0, 4.0});
  const auto diag = verify_step(x, hk_step(x));
  CHECK(diag.decrement == 0.0);
  CHECK(diag.slack_rmf >= 0.0);
  CHECK(diag.slack_spectral >= -1e-12);
  CHECK(diag.slack_path >= 0.0);
}

TEST_CASE("verify_step flags a fabricated violation with a replay bundle") {
  // Pretend the update moved an agent without any energy drop.
  const auto x = make1d({0.0, 1.0});
  auto fake_next = x;
  fake_next.at(0, 0) = 0.9;
  try {
    verify_step(x, fake_next);
    FAIL("expected a CheckViolation");
  } catch (const CheckViolation& v) {
    CHECK(v.step() == 0);
    const auto bundle = nlohmann::json::parse(v.bundle_json());
    CHECK(bundle.at("check").get<std::string>() == v.check());
    CHECK(bundle.at("state").at("coords").size() == 2);
    CHECK(bundle.at("next_state").at("coords").size() == 2);
    CHECK(bundle.at("graph").at("degrees").size() == 2);
    CHECK(bundle.contains("quantities"));
  }
}

TEST_CASE("verify_step without spectral leaves the spectral fields unset") {
  const auto x = make1d({0.0, 1.0, 2.0});
  const auto diag = verify_step(x, hk_step(x), 0, false);
  CHECK_FALSE(diag.spectral_done);
  CHECK(std::isnan(diag.lambda));
  CHECK(std::isnan(diag.slack_spectral));
  CHECK(diag.diameter == -1);
  CHECK(diag.slack_rmf == 1.0);
}

TEST_CASE("verify_trajectory of [0,1,2]: one merge, monotone 6 -> 3 -> 0") {
  SimulateOptions opts;
  opts.cap = 100;
  const auto tr = simulate(line_config(3, 1.0), opts);
  const auto s = verify_trajectory(tr);
  CHECK(s.n == 3);
  CHECK(s.transitions == 2);
  CHECK(s.merge_count == 1);
  CHECK(s.merge_bound_ok);
  CHECK(s.energy_monotone_ok);
  CHECK(s.all_ok);
  CHECK(s.min_slack_rmf == doctest::Approx(1.0));
  CHECK(std::abs(s.min_slack_spectral) < 1e-12);
}

TEST_CASE("verify_trajectory on a single agent is vacuously fine") {
  SimulateOptions opts;
  opts.cap = 5;
  const auto tr = simulate(make1d({1.0}), opts);
  const auto s = verify_trajectory(tr);
  CHECK(s.transitions == 0);
  CHECK(s.merge_count == 0);
  CHECK(s.all_ok);
}

TEST_CASE("verify_trajectory rejects a tampered state history") {
  SimulateOptions opts;
  opts.cap = 100;
  auto tr = simulate(line_config(3, 1.0), opts);
  tr.states[1].at(0, 0) += 0.25;  // not the update of states[0] anymore
  CHECK_THROWS_AS(verify_trajectory(tr), CheckViolation);
}

TEST_CASE("verify_trajectory audits stored diagnostics when states are dropped") {
  SimulateOptions opts;
  opts.cap = default_cap(20);
  opts.record_states = false;
  const auto tr = simulate(random_config(20, 2, 5.0, 31), opts);
  const auto s = verify_trajectory(tr);
  CHECK(s.all_ok);
  CHECK(s.transitions == tr.steps_taken);
}

TEST_CASE("random trajectories carry no violations (spot sweep)") {
  for (std::uint64_t seed = 200; seed < 220; ++seed) {
    const int n = 4 + static_cast<int>(seed % 20);
    const auto x0 = random_config(n, 1 + static_cast<int>(seed % 3), 5.0, seed);
    SimulateOptions opts;
    opts.cap = default_cap(n);
    const auto tr = simulate(x0, opts);  // verify_step runs inside
    REQUIRE(tr.freezing_time.has_value());
    const auto s = verify_trajectory(tr);
    CHECK(s.all_ok);
    if (s.transitions > 0) {
      CHECK(s.min_slack_rmf >= -check_tolerance(tr.initial_energy));
    }
  }
}

TEST_CASE("random_config(50, 2, 5.0, seed 7): the full trajectory verifies") {
  SimulateOptions opts;
  opts.cap = default_cap(50);
  const auto tr = simulate(random_config(50, 2, 5.0, 7), opts);
  REQUIRE(tr.freezing_time.has_value());
  const auto s = verify_trajectory(tr);
  CHECK(s.all_ok);
  CHECK(s.merge_bound_ok);
}

TEST_CASE("anchored dumbbell: stable graph, order-1/n^2 decrements, exact freeze") {
  const auto x0 = dumbbell_config(4, 8, 1.0);  // n = 16
  SimulateOptions opts;
  opts.cap = 60;
  opts.mode = ArithmeticMode::kRational;
  const auto tr = simulate(x0, opts);
  REQUIRE(tr.freezing_time.has_value());  // merges eventually freeze it exactly
  CHECK(tr.initial_energy == 201.0);
  CHECK(tr.diagnostics.front().decrement ==
        doctest::Approx(0.36).epsilon(1e-9));  // 4*(2m+1)/(m(m+1)^2)
  CHECK(static_cast<long long>(tr.merge_times.size()) <= 15);
  // the communication graph holds still through the slow opening phase
  const auto lambda0 = tr.diagnostics.front().lambda;
  int stable = 0;
  while (stable < static_cast<int>(tr.diagnostics.size()) &&
         tr.diagnostics[stable].lambda == lambda0) {
    ++stable;
  }
  CHECK(stable >= 10);
  CHECK_NOTHROW(verify_trajectory(tr));
}

TEST_CASE("first-step decrement times n^2 stays bounded across dumbbell sizes") {
  for (int m : {4, 8, 16, 32}) {
    const int n = 4 * m;
    const double decrement = 4.0 * (2 * m + 1) / (m * double(m + 1) * (m + 1));
    const double scaled = decrement * n * n;
    CHECK(scaled > 80.0);
    CHECK(scaled < 135.0);
  }
}

TEST_CASE("slow_step_count counts transitions below 1/n^2 in a diagnostics audit") {
  Trajectory tr;
  tr.mode = ArithmeticMode::kFloat;
  tr.cap = 10;
  tr.steps_taken = 2;
  tr.states.resize(2, OpinionState(3, 1));
  tr.states[0].coords = {0.0, 1.0, 2.0};
  tr.states[1].coords = {1.0, 1.0, 1.0};
  tr.states_complete = false;
  StepDiagnostics slow;
  slow.t = 0;
  slow.energy_total = 6.0;
  slow.decrement = 0.05;  // below 1/9
  slow.slack_rmf = 0.01;
  StepDiagnostics fast = slow;
  fast.t = 1;
  fast.decrement = 3.0;
  tr.diagnostics = {slow, fast};
  const auto s = verify_trajectory(tr);
  CHECK(s.slow_step_count == 1);
}
