#pragma once

#include <cstdint>

#include "hk/state.hpp"

namespace hk {

/// n agents equally spaced on a circle of the given radius, d = 2.
/// Agent k sits at radius * (cos(2*pi*k/n), sin(2*pi*k/n)). Requires n >= 3.
OpinionState circle_config(int n, double radius);

/// Circle sized by its adjacent chord length instead of the radius. The
/// dynamics depend only on chord/radius ratios, so the chord in (0, 1] is the
/// natural knob for slow-contraction experiments.
OpinionState circle_config_by_chord(int n, double chord);

/// Anchored dumbbell, d = 1: a chain of k agents at spacing, 2*spacing, ...,
/// k*spacing between two co-located clusters of m agents placed just outside
/// the chain ends, at distance spacing/m from the nearest chain agent.
///
/// With that offset the pull of a cluster (m agents at distance spacing/m)
/// exactly cancels the pull of the next chain agent, so every chain agent is
/// a fixed point of the first update and only the clusters move, by
/// spacing/(m*(m+1)). The first-step energy decrement is exactly
/// 4*(2m+1) / (m*(m+1)^2), which decays like 1/n^2 for m ~ n/4.
///
/// Requires spacing in (m/(m+1), 1] so each cluster interacts with exactly
/// one chain agent; rejects anything else.
OpinionState dumbbell_config(int m, int k, double spacing);

/// n i.i.d. uniform points in [0, box_side]^d, reproducible from seed
/// (identical bits on every platform).
OpinionState random_config(int n, int d, double box_side, std::uint64_t seed);

/// n agents on a line at 0, spacing, ..., (n-1)*spacing, d = 1.
/// Requires spacing in (0, 1].
OpinionState line_config(int n, double spacing);

}  // namespace hk
