#include "hk/energy.hpp"

#include <algorithm>

namespace hk {

EnergyReport energy(const OpinionState& x) {
  EnergyReport r;
  for (int i = 0; i < x.n; ++i) {
    for (int j = i + 1; j < x.n; ++j) {
      const double d2 = dist2(x, i, j);
      if (d2 <= 1.0) {
        r.active += 2.0 * d2;  // ordered pairs: (i,j) and (j,i)
      } else {
        r.inactive_pair_count += 2;
      }
    }
  }
  // Self-pairs are active and contribute 0. Assembling the total from the
  // parts keeps the decomposition identity exact.
  r.total = r.active + static_cast<double>(r.inactive_pair_count);
  return r;
}

double check_tolerance(double energy_total) {
  return 1e-9 * std::max(1.0, energy_total);
}

SlackRecord check_rmf_decrement(const OpinionState& x, const OpinionState& x_next,
                                double energy_before, double energy_after) {
  SlackRecord rec;
  rec.decrement = energy_before - energy_after;
  double disp2 = 0.0;
  for (std::size_t i = 0; i < x.coords.size(); ++i) {
    const double diff = x_next.coords[i] - x.coords[i];
    disp2 += diff * diff;
  }
  rec.bound = 4.0 * disp2;
  rec.slack = rec.decrement - rec.bound;
  rec.tol = check_tolerance(energy_before);
  rec.violated = rec.slack < -rec.tol;
  return rec;
}

SlackRecord check_rmf_decrement(const OpinionState& x, const OpinionState& x_next) {
  return check_rmf_decrement(x, x_next, energy(x).total, energy(x_next).total);
}

SlackRecord check_path_bound(const EnergyReport& e, int diameter) {
  SlackRecord rec;
  rec.decrement = e.active;
  rec.bound = static_cast<double>(diameter / 2) / 2.0;
  rec.slack = e.active - rec.bound;
  rec.tol = check_tolerance(e.total);
  rec.violated = rec.slack < -rec.tol;
  return rec;
}

}  // namespace hk
