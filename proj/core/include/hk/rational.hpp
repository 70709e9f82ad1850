#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <stdexcept>
#include <vector>

#include "hk/graph.hpp"
#include "hk/state.hpp"

namespace hk {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// The exact engine grows denominators multiplicatively; this is raised
/// instead of degrading silently when they pass the configured bit bound.
class DenominatorOverflow : public std::runtime_error {
 public:
  DenominatorOverflow(long long bits, long long bound);
  long long bits() const { return bits_; }

 private:
  long long bits_ = 0;
};

/// Exact configuration: an n x d integer matrix over one positive common
/// denominator, kept normalized (gcd of all entries and the denominator = 1).
struct RationalState {
  int n = 0;
  int d = 0;
  BigInt den = 1;
  std::vector<BigInt> num;  // n*d, row-major

  /// Exact conversion: every finite double is a dyadic rational.
  static RationalState from_state(const OpinionState& x);

  /// Nearest-double view.
  OpinionState to_state() const;

  BigRational coord(int i, int k) const;

  /// Divides out the common gcd and fixes the denominator sign.
  void normalize();

  /// Exact equality of normalized states.
  bool operator==(const RationalState&) const = default;
};

/// Communication graph from exact squared-distance comparisons; ties at
/// distance exactly 1 are decided exactly (<= is an edge).
CommGraph build_graph_exact(const RationalState& x);

/// One exact update step under graph g. Throws DenominatorOverflow when the
/// common denominator would exceed bit_bound bits.
RationalState hk_step_exact(const RationalState& x, const CommGraph& g,
                            long long bit_bound);

/// Exact merge predicate: some pair distinct in x, identical in x_next.
bool detect_merges_exact(const RationalState& x, const RationalState& x_next);

/// Exact energy: sum over ordered pairs of min{squared distance, 1}.
BigRational energy_exact(const RationalState& x);

struct RationalTrajectory {
  std::vector<RationalState> states;   // x_0 .. x_T
  std::vector<BigRational> energies;   // one per state
  std::optional<long long> freezing_time;  // exact; nullopt = step budget hit
  std::vector<long long> merge_times;
};

/// Exact replay of the update rule for at most `steps` transitions, stopping
/// early at the exact freezing time. Requires n <= 25 and steps <= 100.
RationalTrajectory rational_replay(const OpinionState& x0, long long steps,
                                   long long bit_bound = 1'000'000);

}  // namespace hk
