#pragma once

#include <string>
#include <vector>

#include "adia/apt.hpp"
#include "adia/hamiltonian.hpp"
#include "adia/quadrature.hpp"
#include "adia/schedule.hpp"

namespace adia {

enum class GroverMode {
  reduced2,  // 2x2 block on span{|m>, |m_perp>}
  fullN,     // N x N projector form
};

/// Adiabatic search H(s) = (1 - f) (I - |sigma><sigma|) + f (I - |m><m|),
/// |sigma> the uniform superposition of N items, |m> the marked item.
/// In reduced2 mode the basis is {|m>, |m_perp>}; `marked` applies to fullN.
HamiltonianFamily grover_family(long N, const Schedule& schedule,
                                GroverMode mode = GroverMode::reduced2, long marked = 0);

/// Largest N accepted by the fullN mode.
inline constexpr long kMaxFullN = 4096;

/// Two-level quantities of the search Hamiltonian as functions of f.
namespace grover {

/// Dimensionless gap sqrt(1 - 4 (N-1)/N f (1-f)).
double gap(double N, double f);
/// Ground-state mixing angle: sin(theta/2), cos(theta/2).
double sin_half_theta(double N, double f);
double cos_half_theta(double N, double f);
/// lambda_10(s) = sqrt(N-1)/N fdot / Delta^3.
double lambda10(double N, const Schedule& schedule, double s);
/// omega_10(1) = integral of the gap.
double omega10(double N, const Schedule& schedule, double tol = kDefaultQuadratureTol);
/// J_0(1) = (N-1)/N^2 integral fdot^2 / Delta^5.
double j0(double N, const Schedule& schedule, double tol = kDefaultQuadratureTol);
/// J_0(1) closed forms.
double j0_optimal(double N);
double j0_linear(double N);
/// Fitted approximation (N/2)(1 + sqrt p + p/20) for beta schedules.
double j0_beta_approx(double N, int p);

}  // namespace grover

enum class J0Method { quadrature, approximation };

/// Closed-form trade-off of the search problem.
struct GroverClosedForms {
  double N = 0.0;
  std::string schedule;
  int p = 0;
  double C = 0.0;
  double J0 = 0.0;
  double lambda10_end = 0.0;  // lambda_10(1), or the order-p endpoint value for beta
  double omega10 = 0.0;
  TradeoffResult tradeoff;
  /// Large-N estimate of eps_tilde for beta schedules (0 otherwise).
  double eps_tilde_asymptotic = 0.0;
};

/// Throws UnsupportedSchedule for custom schedules.
GroverClosedForms closed_tradeoff(double N, ScheduleKind kind, double C, int p = 0,
                                  J0Method method = J0Method::quadrature);

/// Fisher information of the ground state and path functionals.
struct FisherGeometry {
  double action = 0.0;         // K = integral F/4
  double bures_length = 0.0;   // L = integral sqrt(F)/2
  double shortest_length = 0.0;  // arccos(1/sqrt N)
};

/// F_phi0(s) = [2 sqrt(N-1)/N fdot / Delta^2]^2.
double fisher_information(double N, const Schedule& schedule, double s);
FisherGeometry fisher_geometry(double N, const Schedule& schedule,
                               double tol = kDefaultQuadratureTol);

/// Integrates fdot = c Delta^2(f), f(0) = 0, with c fixed so that f(1) = 1,
/// and returns the tabulated (interpolated) schedule. Throws ODEDivergence.
Schedule schedule_from_constant_fisher(double N, double tol = 1e-12);

/// T_n = 2 pi n / omega_10(1), n = 1..n_max.
std::vector<double> resonance_times(double N, const Schedule& schedule, int n_max,
                                    double tol = kDefaultQuadratureTol);

/// Literature overlays (not tight): an asymptotic error bound and a run-time
/// estimate for a target error.
struct LiteratureBounds {
  double jansen_error = 0.0;  // (pi/2 + pi^2) sqrt(N) / T
  double roland_time = 0.0;   // (pi/2) sqrt(N) / eps
  bool tight = false;
};
double jansen_bound(double N, double T);
double roland_time(double N, double eps);
LiteratureBounds literature_bounds(double N, double T, double eps);

}  // namespace adia
