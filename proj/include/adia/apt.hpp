#pragma once

#include <utility>
#include <vector>

#include "adia/hamiltonian.hpp"
#include "adia/linalg.hpp"
#include "adia/quadrature.hpp"
#include "adia/spectral.hpp"

namespace adia {

/// A coefficient written as sum_j a_j exp(i T w_j). T enters only on evaluation.
class PhaseSeries {
 public:
  struct Term {
    Complex amplitude;
    double frequency;
  };

  PhaseSeries() = default;
  explicit PhaseSeries(Complex constant) { add(constant, 0.0); }

  /// Adds a term, merging it with an existing one of the same frequency.
  void add(Complex amplitude, double frequency);

  Complex evaluate(double T) const;
  /// Largest modulus over T when the phases are independent: sum_j |a_j|.
  double max_modulus() const;
  const std::vector<Term>& terms() const noexcept { return terms_; }

 private:
  std::vector<Term> terms_;
};

/// Spectral data at s = 0 and at s, in a common gauge, plus the phases and
/// J integrals the first two APT orders need.
struct EndpointData {
  double s = 1.0;
  SpectralFrame start;
  SpectralFrame end;
  RealVector omega;         // omega_n0(s)
  Matrix lambda_dot_start;  // d lambda_nk/ds at 0
  Matrix lambda_dot_end;    // and at s
  RealVector J;             // J_n(s)
};

struct AptOptions {
  double quadrature_tol = kDefaultQuadratureTol;
  int frame_nodes = 513;
};

EndpointData endpoint_data(const HamiltonianFamily& family, double s = 1.0,
                           const AptOptions& options = {});

/// First-order coefficients b_n^(1)(s), n = 0..d-1; entry 0 is the real J_0(s).
std::vector<PhaseSeries> b1(const EndpointData& data);
/// Second-order coefficients b_n^(2)(s) for n != 0 (entry 0 is left empty).
std::vector<PhaseSeries> b2(const EndpointData& data);

/// J_n(s) = sum_{k != n} integral_0^s |M_kn|^2 / (E_k - E_n).
double j_integral(const HamiltonianFamily& family, Index n, double s,
                  double tol = kDefaultQuadratureTol);
/// integral_0^s F_n / (4 min_k |E_k - E_n|), the minimum taken over levels
/// that couple to n. Upper-bounds j_integral.
double j_fisher_bound(const HamiltonianFamily& family, Index n, double s,
                      double tol = kDefaultQuadratureTol);

/// Leading-order Bures angle at (s, T) of an order-p boundary-canceled family
/// (p = 0 for none): T^-(p+1) sqrt(sum_n |x_n(s) e^{iTw} - x_n(0)|^2) with
/// x_n = <phi_n|H^(p+1)|phi_0> / Delta^(p+2).
double leading_distance(const EndpointData& data, const HamiltonianFamily& family, double T,
                        int p = 0);

struct DistanceBounds {
  double lower;
  double upper;
};
/// Oscillation-free bounds around leading_distance, lower clamped at 0.
DistanceBounds distance_bounds(const EndpointData& data, const HamiltonianFamily& family,
                               double T, int p = 0);

/// Error-time trade-off epsilon <= bound(T) for T >= T_val.
struct TradeoffResult {
  double T_val = 0.0;
  double eps_tilde = 0.0;
  double C = 0.0;
  int p = 0;
  /// bound(T) = bound_coefficient / T^(p+1).
  double bound_coefficient = 0.0;

  double bound(double T) const;
  /// For 0 < alpha <= 1 the relation holds with eps <= max_error(alpha)
  /// whenever T >= min_time(alpha).
  double max_error(double alpha) const;
  double min_time(double alpha) const;
};

/// Trade-off built from a pair of consecutive coefficient orders, with every
/// oscillating factor taken at its maximum modulus.
TradeoffResult tradeoff_from_coefficients(const std::vector<PhaseSeries>& leading,
                                          const std::vector<PhaseSeries>& next, int p, double C);

double validity_time(const EndpointData& data, double C);
double epsilon_tilde(const EndpointData& data, double C);
TradeoffResult tradeoff(const EndpointData& data, double C);

struct BoundaryCoefficients {
  int p = 0;
  std::vector<PhaseSeries> leading;  // b_n^(p+1)(1)
  std::vector<PhaseSeries> next;     // b_n^(p+2)(1)
};

/// Throws BoundaryConditionViolated if some H^(j)(0), H^(j)(1), 1 <= j <= p,
/// exceeds 1e-10.
void check_boundary_cancelation(const HamiltonianFamily& family, int p);

/// b_n^(p+1)(1) and b_n^(p+2)(1) for p >= 1 from endpoint derivatives of H.
BoundaryCoefficients bc_coefficients(const HamiltonianFamily& family, int p,
                                     const AptOptions& options = {});
/// p = 0 falls back to tradeoff(endpoint_data(family), C).
TradeoffResult bc_tradeoff(const HamiltonianFamily& family, int p, double C,
                           const AptOptions& options = {});

}  // namespace adia
