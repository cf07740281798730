#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "adia/hamiltonian.hpp"
#include "adia/linalg.hpp"
#include "adia/recurrence.hpp"

namespace adia {

enum class Integrator {
  magnus2,  // midpoint exponential, second order
  magnus4,  // two Gauss points plus commutator, fourth order
};

struct PropagationOptions {
  /// Target for the final-state error, estimated by step doubling.
  double tol = 1e-9;
  Integrator integrator = Integrator::magnus4;
  /// Number of recorded grid points including s = 0 and s = 1 (minimum 2).
  int output_points = 2;
  /// Upper limit on the number of steps of a single sweep.
  std::size_t max_steps = std::size_t{1} << 24;
};

/// Solution of (i/T) d/ds |Psi> = H(s) |Psi>, |Psi(0)> = |phi_0(0)>.
struct SimulationTrace {
  double T = 0.0;
  std::vector<double> s;
  std::vector<Vector> states;
  std::vector<double> norms;
  /// Bures angle between |Psi(s)> and a freshly computed |phi_0(s)>.
  std::vector<double> distances;
  std::size_t steps = 0;
  /// Estimated error of the final state (step-doubling difference, extrapolated).
  double error_estimate = 0.0;

  double final_distance() const { return distances.back(); }
};

/// Exactly unitary piecewise exponential propagation with step doubling until
/// the final states of successive sweeps differ by less than options.tol.
/// Throws StepSizeUnderflow when this needs more than options.max_steps.
SimulationTrace propagate(const HamiltonianFamily& family, double T,
                          const PropagationOptions& options = {});

/// Same, from an arbitrary initial state.
SimulationTrace propagate_from(const HamiltonianFamily& family, const Vector& initial, double T,
                               const PropagationOptions& options = {});

/// Bures angle arccos(|<b|a>| / (|a| |b|)) evaluated as an arctangent, which
/// stays accurate for small angles. Throws ZeroVector.
double bures_angle(const Vector& a, const Vector& b);

/// sum_n e^{-iT w_n0} sum_{p <= order} (i/T)^p b_n^(p) |phi_n> at grid index i.
/// Not normalized.
Vector truncated_state(const CoefficientTable& table, std::size_t i, double T, int order);

/// CSV rows "s,norm,distance" plus optional re_k,im_k state components.
void write_trace_csv(std::ostream& out, const SimulationTrace& trace, bool components = false);

}  // namespace adia
