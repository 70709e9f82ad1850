#include "hk/spectral.hpp"

#include <cmath>
#include <string>

namespace hk {

namespace {
constexpr double kUnitEigTol = 1e-8;
constexpr double kGapTol = 1e-9;

// Cyclic Jacobi sweeps, eigenvalues only. Fallback for the rare inputs where
// the QL iteration hits its sweep limit (blocks of identical rows give B a
// massively degenerate spectrum). Always converges on symmetric input; the
// off-diagonal norm bounds the eigenvalue error directly.
std::vector<double> jacobi_eigenvalues(Eigen::MatrixXd a) {
  const int n = static_cast<int>(a.rows());
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off2 = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) off2 += a(i, j) * a(i, j);
    }
    if (std::sqrt(2.0 * off2) <= 1e-13 * scale) {
      std::vector<double> ev(n);
      for (int i = 0; i < n; ++i) ev[i] = a(i, i);
      std::sort(ev.begin(), ev.end());
      return ev;
    }
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) <= 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
      }
    }
  }
  throw SpectralError("Jacobi fallback did not converge");
}

}  // namespace

Eigen::MatrixXd transition_matrix(const CommGraph& g) {
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(g.n, g.n);
  for (int i = 0; i < g.n; ++i) {
    const double inv_deg = 1.0 / g.degrees[i];
    for (int j = 0; j < g.n; ++j) {
      if (g.adjacent(i, j)) p(i, j) = inv_deg;
    }
  }
  return p;
}

Eigen::MatrixXd symmetrized_matrix(const CommGraph& g) {
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(g.n, g.n);
  for (int i = 0; i < g.n; ++i) {
    for (int j = i; j < g.n; ++j) {
      if (!g.adjacent(i, j)) continue;
      const double v = 1.0 / std::sqrt(static_cast<double>(g.degrees[i]) * g.degrees[j]);
      b(i, j) = v;
      b(j, i) = v;  // mirrored entry, symmetric by construction
    }
  }
  return b;
}

int diameter(const CommGraph& g) {
  const auto nbrs = neighbor_lists(g);
  std::vector<int> dist(g.n);
  std::vector<int> frontier, next;
  int best = 0;
  for (int src = 0; src < g.n; ++src) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[src] = 0;
    frontier.assign(1, src);
    int depth = 0;
    while (!frontier.empty()) {
      next.clear();
      ++depth;
      for (int v : frontier) {
        for (int w : nbrs[v]) {
          if (dist[w] < 0) {
            dist[w] = depth;
            next.push_back(w);
          }
        }
      }
      frontier.swap(next);
    }
    // depth ran one past the deepest layer
    best = std::max(best, depth - 1);
  }
  return best;
}

SpectralReport spectral_report(const CommGraph& g) {
  SpectralReport r;
  r.diameter = diameter(g);
  const double n2 = static_cast<double>(g.n) * g.n;
  r.gap_bound = r.diameter >= 1 ? 1.0 - 1.0 / (n2 * r.diameter) : 1.0;

  const Eigen::MatrixXd b = symmetrized_matrix(g);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(b, Eigen::EigenvaluesOnly);
  if (solver.info() == Eigen::Success) {
    const auto& ev = solver.eigenvalues();  // ascending
    r.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  } else {
    r.eigenvalues = jacobi_eigenvalues(b);
  }
  const auto& ev = r.eigenvalues;

  if (ev.front() < -1.0 - kUnitEigTol || ev.back() > 1.0 + kUnitEigTol) {
    throw SpectralError("eigenvalue outside [-1, 1]: spectrum spans [" +
                        std::to_string(ev.front()) + ", " + std::to_string(ev.back()) + "]");
  }

  // Each connected component contributes exactly one unit eigenvalue, which
  // carries no contraction content; drop the c largest after checking they
  // really sit at 1.
  const int c = g.component_count();
  for (int i = g.n - c; i < g.n; ++i) {
    if (std::abs(ev[i] - 1.0) > kUnitEigTol) {
      throw SpectralError("expected a unit eigenvalue per component, found " +
                          std::to_string(ev[i]));
    }
  }
  double lambda = 0.0;
  for (int i = 0; i < g.n - c; ++i) lambda = std::max(lambda, std::abs(ev[i]));
  r.lambda = lambda;
  return r;
}

double lambda_t(const CommGraph& g) { return spectral_report(g).lambda; }

SlackRecord check_spectral_decrement(double decrement, double energy_active,
                                     double energy_before, const SpectralReport& report) {
  SlackRecord rec;
  rec.decrement = decrement;
  rec.bound = (1.0 - report.lambda * report.lambda) * energy_active;
  rec.slack = rec.decrement - rec.bound;
  rec.tol = check_tolerance(energy_before);
  rec.violated = rec.slack < -rec.tol;
  return rec;
}

SlackRecord check_spectral_decrement(const OpinionState& x, const OpinionState& x_next,
                                     const CommGraph& /*g*/, const SpectralReport& report) {
  const EnergyReport before = energy(x);
  const EnergyReport after = energy(x_next);
  return check_spectral_decrement(before.total - after.total, before.active, before.total,
                                  report);
}

SlackRecord check_gap_bound(const CommGraph& /*g*/, const SpectralReport& report) {
  SlackRecord rec;
  rec.tol = kGapTol;
  if (report.diameter < 1) {
    // only singleton components; lambda is vacuous here
    rec.slack = 1.0;
    return rec;
  }
  rec.decrement = report.lambda;
  rec.bound = report.gap_bound;
  rec.slack = report.gap_bound - report.lambda;
  rec.violated = rec.slack < -rec.tol;
  return rec;
}

}  // namespace hk
