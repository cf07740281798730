#pragma once

#include <functional>
#include <string>

#include "adia/linalg.hpp"
#include "adia/schedule.hpp"

namespace adia {

/// A driven Hamiltonian H(s), s in [0, 1], with analytic s-derivatives.
/// Energies are in units of the reference scale, hbar = 1.
class HamiltonianFamily {
 public:
  using Evaluator = std::function<Matrix(double s, int order)>;

  /// `max_derivative` is the highest order `eval` supports; higher orders
  /// throw std::out_of_range. Throws InvalidFamily for dimension < 2.
  HamiltonianFamily(Index dimension, Evaluator eval, int max_derivative,
                    bool real_symmetric = false, std::string name = "custom");

  /// H^(order)(s). Throws InvalidFamily if the result is not Hermitian.
  Matrix operator()(double s, int order = 0) const;

  Index dimension() const noexcept { return dim_; }
  int max_derivative() const noexcept { return max_deriv_; }
  /// True when every H^(j)(s) is real symmetric; eigenvectors are then kept real.
  bool real_symmetric() const noexcept { return real_; }
  const std::string& name() const noexcept { return name_; }

 private:
  Index dim_;
  Evaluator eval_;
  int max_deriv_;
  bool real_;
  std::string name_;
};

/// H(s) = (1 - f(s)) H_i + f(s) H_f.
HamiltonianFamily interpolating(const Matrix& h_initial, const Matrix& h_final,
                                const Schedule& schedule, std::string name = "interpolating");

/// H(s) = H_0 for all s.
HamiltonianFamily constant_family(const Matrix& h0);

}  // namespace adia
