#pragma once

#include <cstddef>
#include <vector>

#include "adia/apt.hpp"
#include "adia/hamiltonian.hpp"
#include "adia/linalg.hpp"
#include "adia/spectral.hpp"

namespace adia {

/// APT coefficients b_nm^(p)(s) on a uniform s-grid, orders 0..max_order.
/// Entries do not depend on T; aggregates b_n^(p) = sum_m e^{iT w_nm} b_nm^(p)
/// are assembled on request.
struct CoefficientTable {
  std::vector<double> grid;
  double h = 0.0;
  int max_order = 0;
  /// b[p][i](n, m) = b_nm^(p)(grid[i]).
  std::vector<std::vector<Matrix>> b;
  /// omega[i](n) = w_n0(grid[i]).
  std::vector<RealVector> omega;
  std::vector<SpectralFrame> frames;
  /// Estimated absolute error of the entries of each order (grid halving).
  std::vector<double> grid_error;

  Index dimension() const { return b.empty() ? 0 : b[0][0].rows(); }
  std::size_t last() const { return grid.size() - 1; }

  PhaseSeries aggregate_series(Index n, int p, std::size_t i) const;
  Complex aggregate(Index n, int p, std::size_t i, double T) const;
};

inline constexpr int kMaxRecurrenceOrder = 4;
inline constexpr double kGridTolerance = 1e-6;

/// Solves the order-by-order recurrence
///   Delta_nm b_nm^(p+1) = d/ds b_nm^(p) + sum_{k != n} M_nk b_km^(p)
/// off the diagonal, and its integrated form on the diagonal, with five-point
/// derivatives and fourth-order cumulative integrals. The same recurrence on
/// every other grid point estimates the discretization error; GridTooCoarse
/// is thrown when it exceeds kGridTolerance (relative to the entry scale).
CoefficientTable recurrence_table(const HamiltonianFamily& family, int max_order,
                                  int grid_points = 2049);

struct DistanceExpansion {
  double leading = 0.0;
  double next = 0.0;
};

/// The two leading terms of the Bures angle at grid index i (default: s = 1)
/// for an order-p boundary-canceled family. Orders 1..p must vanish there.
/// When the order-(p+1) coefficients vanish too (resonant T), leading is 0
/// and next is the order-(p+2) magnitude.
DistanceExpansion distance_expansion(const CoefficientTable& table, double T, int p = 0);
DistanceExpansion distance_expansion(const CoefficientTable& table, double T, int p,
                                     std::size_t i);

}  // namespace adia
