#include "hk/state.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace hk {

double dist2(const OpinionState& x, int i, int j) {
  const double* a = x.coords.data() + static_cast<std::size_t>(i) * x.d;
  const double* b = x.coords.data() + static_cast<std::size_t>(j) * x.d;
  double s = 0.0;
  for (int k = 0; k < x.d; ++k) {
    const double diff = a[k] - b[k];
    s += diff * diff;
  }
  return s;
}

double max_coord_diff(const OpinionState& a, const OpinionState& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.coords.size(); ++i) {
    m = std::max(m, std::abs(a.coords[i] - b.coords[i]));
  }
  return m;
}

bool all_finite(const OpinionState& x) {
  for (double v : x.coords) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

void validate(const OpinionState& x) {
  if (x.n < 1) throw std::invalid_argument("OpinionState: n must be >= 1");
  if (x.d < 1) throw std::invalid_argument("OpinionState: d must be >= 1");
  if (x.coords.size() != static_cast<std::size_t>(x.n) * static_cast<std::size_t>(x.d)) {
    throw std::invalid_argument("OpinionState: coords size " + std::to_string(x.coords.size()) +
                                " does not match n*d");
  }
  if (!all_finite(x)) throw std::invalid_argument("OpinionState: non-finite coordinate");
}

}  // namespace hk
