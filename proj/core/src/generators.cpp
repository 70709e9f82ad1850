#include "hk/generators.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace hk {

OpinionState circle_config(int n, double radius) {
  if (n < 3) throw std::invalid_argument("circle_config: n must be >= 3");
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw std::invalid_argument("circle_config: radius must be positive");
  }
  OpinionState x(n, 2);
  for (int k = 0; k < n; ++k) {
    const double angle = 2.0 * std::numbers::pi * k / n;
    x.at(k, 0) = radius * std::cos(angle);
    x.at(k, 1) = radius * std::sin(angle);
  }
  return x;
}

OpinionState circle_config_by_chord(int n, double chord) {
  if (n < 3) throw std::invalid_argument("circle_config_by_chord: n must be >= 3");
  if (!(chord > 0.0) || chord > 1.0) {
    throw std::invalid_argument("circle_config_by_chord: chord must lie in (0, 1]");
  }
  // chord = 2 r sin(pi/n)
  const double radius = chord / (2.0 * std::sin(std::numbers::pi / n));
  return circle_config(n, radius);
}

OpinionState dumbbell_config(int m, int k, double spacing) {
  if (m < 1) throw std::invalid_argument("dumbbell_config: m must be >= 1");
  if (k < 1) throw std::invalid_argument("dumbbell_config: k must be >= 1");
  if (!(spacing > 0.0) || spacing > 1.0) {
    throw std::invalid_argument("dumbbell_config: spacing must lie in (0, 1]");
  }
  const double lower = static_cast<double>(m) / (m + 1);
  if (!(spacing > lower)) {
    throw std::invalid_argument(
        "dumbbell_config: spacing must lie in (m/(m+1), 1] = (" + std::to_string(lower) +
        ", 1] so each cluster interacts with exactly one chain agent");
  }
  const int n = 2 * m + k;
  OpinionState x(n, 1);
  const double offset = spacing / m;
  const double left = spacing - offset;
  const double right = k * spacing + offset;
  for (int i = 0; i < m; ++i) x.at(i, 0) = left;
  for (int j = 1; j <= k; ++j) x.at(m + j - 1, 0) = j * spacing;
  for (int i = 0; i < m; ++i) x.at(m + k + i, 0) = right;
  return x;
}

OpinionState random_config(int n, int d, double box_side, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("random_config: n must be >= 1");
  if (d < 1) throw std::invalid_argument("random_config: d must be >= 1");
  if (!(box_side > 0.0) || !std::isfinite(box_side)) {
    throw std::invalid_argument("random_config: box_side must be positive");
  }
  OpinionState x(n, d);
  std::mt19937_64 rng(seed);
  for (double& c : x.coords) {
    // Explicit 53-bit mapping; std::uniform_real_distribution is not
    // pinned by the standard and would break cross-platform determinism.
    c = static_cast<double>(rng() >> 11) * 0x1.0p-53 * box_side;
  }
  return x;
}

OpinionState line_config(int n, double spacing) {
  if (n < 1) throw std::invalid_argument("line_config: n must be >= 1");
  if (!(spacing > 0.0) || spacing > 1.0) {
    throw std::invalid_argument("line_config: spacing must lie in (0, 1]");
  }
  OpinionState x(n, 1);
  for (int i = 0; i < n; ++i) x.at(i, 0) = i * spacing;
  return x;
}

}  // namespace hk
