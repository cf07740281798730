#pragma once

#include <vector>

#include "adia/hamiltonian.hpp"
#include "adia/linalg.hpp"
#include "adia/quadrature.hpp"

namespace adia {

/// Relative width of the degeneracy window: |E_n - E_k| <= kDegeneracyRel * max|E|.
inline constexpr double kDegeneracyRel = 1e-9;

/// Instantaneous eigenframe of H(s) in the parallel-transport gauge.
struct SpectralFrame {
  double s = 0.0;
  RealVector energies;  // ascending
  Matrix vectors;       // column n is phi_n
  /// M_nk = <phi_n|d phi_k/ds> = -<phi_n|dH|phi_k> / (E_n - E_k), M_nn = 0.
  Matrix couplings;
  /// A_nk = <phi_n|dH|phi_k>.
  Matrix hdot;
  /// Levels sharing an id are energy-degenerate at s.
  std::vector<int> energy_block;
  /// Levels sharing an id stay degenerate after derivative-based resolution;
  /// their relative basis is fixed only by alignment with the previous frame.
  std::vector<int> gauge_block;

  Index size() const noexcept { return energies.size(); }
  double gap(Index n, Index k) const { return energies(n) - energies(k); }
  bool degenerate(Index n, Index k) const { return energy_block[n] == energy_block[k]; }
  /// lambda_nk = M_nk / (E_n - E_k); zero on the diagonal and on degenerate pairs.
  Complex lambda(Index n, Index k) const;
  Matrix lambda_matrix() const;
  Vector state(Index n) const { return vectors.col(n); }
};

/// Diagonalizes H(s) and fixes the gauge. With `prev`, eigenvector phases (and
/// bases of persistent degenerate blocks) are aligned to it; without, the
/// first largest component of each nondegenerate vector is made real positive.
/// Throws DegenerateGroundGap, DegenerateCoupling.
SpectralFrame spectral_frame(const HamiltonianFamily& family, double s,
                             const SpectralFrame* prev = nullptr);

/// Ground state of H(s) (arbitrary phase). Throws DegenerateGroundGap.
Vector ground_state(const HamiltonianFamily& family, double s);

/// Ascending eigenvalues of H(s).
RealVector eigenvalues(const HamiltonianFamily& family, double s);

/// d lambda_nk / ds from the analytic derivative of <phi_n|dH|phi_k>.
/// Needs family.max_derivative() >= 2.
Matrix lambda_derivative(const HamiltonianFamily& family, const SpectralFrame& frame);

/// omega_n(s) = integral_0^s E_n(s') ds'.
double dynamical_phase(const HamiltonianFamily& family, Index n, double s,
                       double tol = kDefaultQuadratureTol);

/// omega_n(s) - omega_m(s), integrated as one quadrature of the gap.
double relative_phase(const HamiltonianFamily& family, Index n, Index m, double s,
                      double tol = kDefaultQuadratureTol);

/// Gauge-continuous frames on a uniform grid of [0, 1].
class FramePath {
 public:
  explicit FramePath(HamiltonianFamily family, int nodes = 513);

  const HamiltonianFamily& family() const noexcept { return family_; }
  const std::vector<SpectralFrame>& nodes() const noexcept { return frames_; }
  const SpectralFrame& front() const { return frames_.front(); }
  const SpectralFrame& back() const { return frames_.back(); }

  /// Fresh frame at s, aligned to the nearest grid node.
  SpectralFrame at(double s) const;

 private:
  HamiltonianFamily family_;
  std::vector<SpectralFrame> frames_;
};

}  // namespace adia
