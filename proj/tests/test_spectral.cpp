#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <random>

#include "hk/dynamics.hpp"
#include "hk/generators.hpp"
#include "hk/spectral.hpp"
#include "hk/util.hpp"

using namespace hk;

namespace {

OpinionState make1d(std::vector<double> xs) {
  OpinionState x(static_cast<int>(xs.size()), 1);
  x.coords = std::move(xs);
  return x;
}

CommGraph path3() { return build_graph(make1d({0.0, 1.0, 2.0})); }

}  // namespace

TEST_CASE("transition matrix of a mutually adjacent pair") {
  const auto p = transition_matrix(build_graph(make1d({0.0, 0.5})));
  CHECK(p(0, 0) == 0.5);
  CHECK(p(0, 1) == 0.5);
  CHECK(p(1, 0) == 0.5);
  CHECK(p(1, 1) == 0.5);
}

TEST_CASE("transition matrix of the 3-path") {
  const auto p = transition_matrix(path3());
  CHECK(p(0, 0) == 0.5);
  CHECK(p(0, 1) == 0.5);
  CHECK(p(0, 2) == 0.0);
  CHECK(p(1, 0) == doctest::Approx(1.0 / 3).epsilon(1e-15));
  CHECK(p(2, 2) == 0.5);
  for (int i = 0; i < 3; ++i) {
    CHECK(std::abs(p.row(i).sum() - 1.0) <= 1e-14);
  }
}

TEST_CASE("isolated agent: P is the 1x1 identity") {
  const auto p = transition_matrix(build_graph(make1d({7.0})));
  CHECK(p(0, 0) == 1.0);
}

TEST_CASE("symmetrized matrix of the 3-path") {
  const auto b = symmetrized_matrix(path3());
  const double s = 1.0 / std::sqrt(6.0);
  CHECK(b(0, 0) == 0.5);
  CHECK(b(0, 1) == doctest::Approx(s).epsilon(1e-15));
  CHECK(b(1, 1) == doctest::Approx(1.0 / 3).epsilon(1e-15));
  CHECK(b(0, 2) == 0.0);
  CHECK((b - b.transpose()).norm() == 0.0);  // exactly symmetric
}

TEST_CASE("complete graph with self-loops: B = J/n") {
  const auto g = build_graph(line_config(5, 0.2));
  REQUIRE(g.degrees == std::vector<int>{5, 5, 5, 5, 5});
  const auto b = symmetrized_matrix(g);
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      CHECK(b(i, j) == doctest::Approx(0.2).epsilon(1e-15));
    }
  }
}

TEST_CASE("B and P share their spectrum (similar matrices)") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const auto g = build_graph(random_config(12, 2, 3.0, seed));
    const Eigen::MatrixXd p = transition_matrix(g);
    Eigen::VectorXcd pe = Eigen::EigenSolver<Eigen::MatrixXd>(p, false).eigenvalues();
    std::vector<double> p_spec(pe.size());
    for (int i = 0; i < pe.size(); ++i) {
      CHECK(std::abs(pe(i).imag()) < 1e-9);  // real despite the asymmetry
      p_spec[i] = pe(i).real();
    }
    std::sort(p_spec.begin(), p_spec.end());
    const auto b_spec = spectral_report(g).eigenvalues;
    REQUIRE(p_spec.size() == b_spec.size());
    for (std::size_t i = 0; i < p_spec.size(); ++i) {
      CHECK(p_spec[i] == doctest::Approx(b_spec[i]).epsilon(1e-9));
    }
  }
}

TEST_CASE("lambda of the 3-path is 1/2 (spectrum {1, 1/2, -1/6})") {
  const auto r = spectral_report(path3());
  REQUIRE(r.eigenvalues.size() == 3);
  CHECK(std::abs(r.eigenvalues[0] - (-1.0 / 6)) < 1e-10);
  CHECK(std::abs(r.eigenvalues[1] - 0.5) < 1e-10);
  CHECK(std::abs(r.eigenvalues[2] - 1.0) < 1e-10);
  CHECK(std::abs(r.lambda - 0.5) < 1e-10);
}

TEST_CASE("lambda of complete graphs is 0") {
  CHECK(std::abs(lambda_t(build_graph(line_config(5, 0.2)))) < 1e-10);
  CHECK(lambda_t(build_graph(make1d({42.0}))) == 0.0);  // n = 1
}

TEST_CASE("two disjoint adjacent pairs: lambda 0, both unit eigenvalues removed") {
  const auto g = build_graph(make1d({0.0, 0.5, 3.0, 3.5}));
  REQUIRE(g.component_count() == 2);
  const auto r = spectral_report(g);
  CHECK(std::abs(r.lambda) < 1e-10);
  CHECK(r.diameter == 1);
}

TEST_CASE("unit-eigenvalue multiplicity equals the component count") {
  for (std::uint64_t seed = 20; seed < 30; ++seed) {
    const auto g = build_graph(random_config(18, 1, 6.0, seed));
    const auto r = spectral_report(g);
    int units = 0;
    for (double ev : r.eigenvalues) {
      if (std::abs(ev - 1.0) <= 1e-8) ++units;
    }
    CHECK(units == g.component_count());
  }
}

TEST_CASE("lambda is invariant under agent relabeling") {
  const auto x = random_config(14, 2, 3.0, 99);
  const double base = lambda_t(build_graph(x));
  std::vector<int> perm(x.n);
  for (int i = 0; i < x.n; ++i) perm[i] = (i * 5 + 3) % x.n;  // a fixed permutation
  OpinionState y(x.n, x.d);
  for (int i = 0; i < x.n; ++i) {
    for (int k = 0; k < x.d; ++k) y.at(perm[i], k) = x.at(i, k);
  }
  CHECK(lambda_t(build_graph(y)) == doctest::Approx(base).epsilon(1e-10));
}

TEST_CASE("diameter: cliques, paths, disconnected graphs") {
  CHECK(diameter(build_graph(line_config(5, 0.2))) == 1);
  CHECK(diameter(build_graph(make1d({9.0}))) == 0);
  CHECK(diameter(path3()) == 2);
  CHECK(diameter(build_graph(make1d({0.0, 0.5, 3.0, 3.5}))) == 1);
  CHECK(diameter(build_graph(line_config(7, 1.0))) == 6);
}

TEST_CASE("spectral decrement check: [0,1,2] is the equality case") {
  const auto x = make1d({0.0, 1.0, 2.0});
  const auto g = build_graph(x);
  const auto rec = check_spectral_decrement(x, hk_step(x), g, spectral_report(g));
  CHECK(rec.decrement == 3.0);
  CHECK(rec.bound == doctest::Approx(3.0).epsilon(1e-12));  // (1 - 1/4) * 4
  CHECK(std::abs(rec.slack) < 1e-12);
  CHECK_FALSE(rec.violated);
}

TEST_CASE("spectral decrement check: [0,1] with lambda 0") {
  const auto x = make1d({0.0, 1.0});
  const auto g = build_graph(x);
  const auto r = spectral_report(g);
  CHECK(std::abs(r.lambda) < 1e-12);
  const auto rec = check_spectral_decrement(x, hk_step(x), g, r);
  CHECK(rec.decrement == 2.0);
  CHECK(rec.bound == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std::abs(rec.slack) < 1e-12);
}

TEST_CASE("spectral decrement on a frozen state: bound does not exceed 0") {
  const auto x = make1d({0.0, 0.0, 5.0});
  const auto g = build_graph(x);
  const auto rec = check_spectral_decrement(x, hk_step(x), g, spectral_report(g));
  CHECK(rec.decrement == 0.0);
  CHECK(rec.bound <= 1e-12);
  CHECK_FALSE(rec.violated);
}

TEST_CASE("gap bound: hand values and the vacuous case") {
  const auto g = path3();
  const auto rec = check_gap_bound(g, spectral_report(g));
  CHECK(rec.bound == doctest::Approx(17.0 / 18).epsilon(1e-12));
  CHECK(rec.slack == doctest::Approx(17.0 / 18 - 0.5).epsilon(1e-9));
  CHECK_FALSE(rec.violated);

  const auto complete = build_graph(line_config(4, 0.3));
  const auto rec2 = check_gap_bound(complete, spectral_report(complete));
  CHECK(rec2.bound == doctest::Approx(1.0 - 1.0 / 16).epsilon(1e-12));
  CHECK_FALSE(rec2.violated);

  const auto singletons = build_graph(make1d({0.0, 5.0, 10.0}));
  const auto rec3 = check_gap_bound(singletons, spectral_report(singletons));
  CHECK_FALSE(rec3.violated);  // diameter 0: skipped
}

TEST_CASE("gap bound holds on random graphs") {
  for (std::uint64_t seed = 100; seed < 140; ++seed) {
    const auto g = build_graph(random_config(20, 2, 5.0, seed));
    const auto rec = check_gap_bound(g, spectral_report(g));
    CHECK_FALSE(rec.violated);
  }
}

TEST_CASE("regression: near-clique blocks that defeat the QL iteration") {
  // After three updates this configuration produces two dense blocks with
  // many identical adjacency rows; the stock eigensolver gives up and the
  // Jacobi fallback must take over.
  std::mt19937_64 rng(trial_seed(0x484b6c6162ULL, 0, 104));
  const int n = 2 + static_cast<int>(rng() % 49);
  const int d = 1 + static_cast<int>(rng() % 5);
  auto x = random_config(n, d, 5.0, rng());
  REQUIRE(n == 41);
  for (int t = 0; t < 3; ++t) x = hk_step(x);
  const auto g = build_graph(x);
  const auto r = spectral_report(g);
  CHECK(r.lambda >= 0.0);
  CHECK(r.lambda <= 1.0);
  int units = 0;
  for (double ev : r.eigenvalues) {
    if (std::abs(ev - 1.0) <= 1e-8) ++units;
  }
  CHECK(units == g.component_count());
  CHECK_FALSE(check_gap_bound(g, r).violated);
}
