#pragma once

#include <span>
#include <vector>

namespace hk {

/// An opinion configuration: n agents, each holding a d-dimensional opinion.
/// Coordinates are stored row-major (agent i owns [i*d, (i+1)*d)) and are
/// expressed in multiples of the confidence radius, which is fixed to 1
/// throughout this library.
struct OpinionState {
  int n = 0;
  int d = 0;
  std::vector<double> coords;

  OpinionState() = default;
  OpinionState(int n_agents, int dim)
      : n(n_agents), d(dim),
        coords(static_cast<std::size_t>(n_agents) * static_cast<std::size_t>(dim), 0.0) {}

  double& at(int i, int k) { return coords[static_cast<std::size_t>(i) * d + k]; }
  double at(int i, int k) const { return coords[static_cast<std::size_t>(i) * d + k]; }

  std::span<const double> row(int i) const {
    return {coords.data() + static_cast<std::size_t>(i) * d, static_cast<std::size_t>(d)};
  }
  std::span<double> row(int i) {
    return {coords.data() + static_cast<std::size_t>(i) * d, static_cast<std::size_t>(d)};
  }

  bool operator==(const OpinionState&) const = default;
};

/// Squared Euclidean distance between the opinions of agents i and j.
double dist2(const OpinionState& x, int i, int j);

/// Max per-coordinate absolute difference between two same-shape states.
double max_coord_diff(const OpinionState& a, const OpinionState& b);

bool all_finite(const OpinionState& x);

/// Throws std::invalid_argument unless n >= 1, d >= 1, the coordinate buffer
/// has size n*d, and every coordinate is finite.
void validate(const OpinionState& x);

}  // namespace hk
