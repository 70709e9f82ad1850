#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

#include "hk/energy.hpp"
#include "hk/graph.hpp"

namespace hk {

/// Raised when an eigensolve fails or produces out-of-range eigenvalues.
class SpectralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Spectral quantities of one communication graph.
struct SpectralReport {
  /// Largest |eigenvalue| of the walk matrix after removing one unit
  /// eigenvalue per connected component; 0 when nothing remains.
  double lambda = 0.0;
  /// Max BFS eccentricity over all vertices (largest component diameter).
  int diameter = 0;
  /// 1 - 1/(n^2 * diameter); set to 1 when diameter = 0 (check is vacuous).
  double gap_bound = 1.0;
  /// Full spectrum of the symmetrized matrix, ascending.
  std::vector<double> eigenvalues;
};

/// Row-stochastic random-walk matrix P = D^{-1} A. Rows sum to 1 within
/// 1e-14; degrees >= 1 because of the self-loops.
Eigen::MatrixXd transition_matrix(const CommGraph& g);

/// Symmetrization B = D^{-1/2} A D^{-1/2}, similar to P, so it shares P's
/// spectrum but is exactly symmetric by construction and real-diagonalizable.
Eigen::MatrixXd symmetrized_matrix(const CommGraph& g);

/// Max |eigenvalue| of P excluding the unit eigenvalues, computed from the
/// symmetric B. Each removed eigenvalue is asserted to be within 1e-8 of 1
/// and the whole spectrum within [-1-1e-8, 1+1e-8]; anything else raises
/// SpectralError.
double lambda_t(const CommGraph& g);

/// Largest shortest-path length within any connected component (0 for
/// singleton components, 1 for non-trivial cliques).
int diameter(const CommGraph& g);

/// lambda, diameter, gap bound and the full spectrum in one pass.
SpectralReport spectral_report(const CommGraph& g);

/// Checks decrement >= (1 - lambda^2) * E_active(x) for x_next the update
/// of x under graph g.
SlackRecord check_spectral_decrement(const OpinionState& x, const OpinionState& x_next,
                                     const CommGraph& g, const SpectralReport& report);
SlackRecord check_spectral_decrement(double decrement, double energy_active,
                                     double energy_before, const SpectralReport& report);

/// Checks lambda <= 1 - 1/(n^2 * diameter) + 1e-9. Returns a non-violated
/// vacuous record when diameter = 0 (all components are single vertices).
SlackRecord check_gap_bound(const CommGraph& g, const SpectralReport& report);

}  // namespace hk
