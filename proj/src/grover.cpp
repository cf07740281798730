#include "adia/grover.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <sstream>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_odeiv2.h>

#include "adia/errors.hpp"

namespace adia {
namespace {

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

QuadratureOptions quad(double tol) {
  QuadratureOptions opt;
  opt.abs_tol = tol;
  opt.rel_tol = 1e-13;
  return opt;
}

void require_size(double N) {
  if (!(N >= 2.0)) throw std::invalid_argument("the search problem needs N >= 2");
}

}  // namespace

HamiltonianFamily grover_family(long N, const Schedule& schedule, GroverMode mode, long marked) {
  require_size(static_cast<double>(N));
  const double n = static_cast<double>(N);
  if (mode == GroverMode::reduced2) {
    const double q = (n - 1.0) / n;
    const double c = std::sqrt(n - 1.0) / n;
    Matrix hi(2, 2);
    hi << q, -c, -c, 1.0 / n;
    Matrix hf = Matrix::Zero(2, 2);
    hf(1, 1) = 1.0;
    return interpolating(hi, hf, schedule, "grover-reduced");
  }
  if (N > kMaxFullN) throw std::invalid_argument("fullN mode supports N <= 4096");
  if (marked < 0 || marked >= N) throw std::out_of_range("marked item outside 0..N-1");
  const Vector sigma = Vector::Constant(N, 1.0 / std::sqrt(n));
  const Matrix id = Matrix::Identity(N, N);
  const Matrix hi = id - sigma * sigma.adjoint();
  Matrix hf = id;
  hf(marked, marked) = 0.0;
  return interpolating(hi, hf, schedule, "grover-full");
}

namespace grover {

double gap(double N, double f) {
  const double q = (N - 1.0) / N;
  return std::sqrt(std::max(0.0, 1.0 - 4.0 * q * f * (1.0 - f)));
}

double sin_half_theta(double N, double f) {
  const double q = (N - 1.0) / N;
  return std::sqrt(0.5 * std::max(0.0, 1.0 - (2.0 * q * (1.0 - f) - 1.0) / gap(N, f)));
}

double cos_half_theta(double N, double f) {
  const double q = (N - 1.0) / N;
  return std::sqrt(0.5 * std::max(0.0, 1.0 + (2.0 * q * (1.0 - f) - 1.0) / gap(N, f)));
}

double lambda10(double N, const Schedule& schedule, double s) {
  const double d = gap(N, schedule(s));
  return std::sqrt(N - 1.0) / N * schedule(s, 1) / (d * d * d);
}

double omega10(double N, const Schedule& schedule, double tol) {
  require_size(N);
  return integrate([&](double s) { return gap(N, schedule(s)); }, 0.0, 1.0, quad(tol));
}

double j0(double N, const Schedule& schedule, double tol) {
  require_size(N);
  const double integral = integrate(
      [&](double s) {
        const double fd = schedule(s, 1);
        return fd * fd / std::pow(gap(N, schedule(s)), 5);
      },
      0.0, 1.0, quad(tol));
  return (N - 1.0) / (N * N) * integral;
}

double j0_optimal(double N) { return std::acos(1.0 / std::sqrt(N)) * std::sqrt(N - 1.0); }

double j0_linear(double N) { return (N - 1.0) / (3.0 * N) + 2.0 * (N - 1.0) / 3.0; }

double j0_beta_approx(double N, int p) {
  return 0.5 * N * (1.0 + std::sqrt(static_cast<double>(p)) + p / 20.0);
}

}  // namespace grover

GroverClosedForms closed_tradeoff(double N, ScheduleKind kind, double C, int p, J0Method method) {
  require_size(N);
  if (!(C > 0.0)) throw std::invalid_argument("C must be positive");
  if (kind == ScheduleKind::beta && p == 0) kind = ScheduleKind::linear;
  GroverClosedForms out;
  out.N = N;
  out.C = C;
  out.tradeoff.C = C;
  const double root = std::sqrt(N - 1.0);
  const double a = std::acos(1.0 / std::sqrt(N));
  switch (kind) {
    case ScheduleKind::optimal: {
      out.schedule = "optimal";
      out.J0 = grover::j0_optimal(N);
      out.lambda10_end = a;
      out.omega10 = grover::omega10(N, Schedule::optimal(N));
      out.tradeoff.T_val = C * a * root;
      out.tradeoff.bound_coefficient = 2.0 * a;
      out.tradeoff.eps_tilde = 2.0 / (C * root);
      break;
    }
    case ScheduleKind::linear: {
      out.schedule = "linear";
      out.J0 = grover::j0_linear(N);
      out.lambda10_end = root / N;
      out.omega10 = grover::omega10(N, Schedule::linear());
      out.tradeoff.T_val = C / 3.0 * std::abs(2.0 * (N - 1.0) - 17.0 * (N - 1.0) / N);
      out.tradeoff.bound_coefficient = 2.0 * root / N;
      out.tradeoff.eps_tilde = 6.0 / (C * std::abs((2.0 * N - 17.0) * root));
      break;
    }
    case ScheduleKind::beta: {
      if (p < 0) throw std::invalid_argument("beta order must be >= 0");
      const Schedule f = Schedule::beta(p);
      out.schedule = "beta";
      out.p = p;
      out.tradeoff.p = p;
      out.J0 = method == J0Method::quadrature ? grover::j0(N, f) : grover::j0_beta_approx(N, p);
      const double fp1 = factorial(2 * p + 1) / factorial(p);
      out.lambda10_end = root / N * fp1;
      out.omega10 = grover::omega10(N, f);
      out.tradeoff.T_val = C * std::abs(out.J0 + p * (p + 1.0));
      out.tradeoff.bound_coefficient = 2.0 * root / N * fp1;
      out.tradeoff.eps_tilde = out.tradeoff.bound(out.tradeoff.T_val);
      out.eps_tilde_asymptotic = std::pow(2.0, p + 2) * fp1 /
                                 (std::pow(C, p + 1) *
                                  std::pow(1.0 + std::sqrt(static_cast<double>(p)) + p / 20.0, p + 1) *
                                  std::pow(N, p + 1.5));
      break;
    }
    case ScheduleKind::custom:
      throw UnsupportedSchedule("no closed form for custom schedules; use the numerical trade-off");
  }
  return out;
}

double fisher_information(double N, const Schedule& schedule, double s) {
  const double d = grover::gap(N, schedule(s));
  const double v = 2.0 * std::sqrt(N - 1.0) / N * schedule(s, 1) / (d * d);
  return v * v;
}

FisherGeometry fisher_geometry(double N, const Schedule& schedule, double tol) {
  require_size(N);
  FisherGeometry g;
  g.action = integrate([&](double s) { return 0.25 * fisher_information(N, schedule, s); }, 0.0,
                       1.0, quad(tol));
  g.bures_length = integrate(
      [&](double s) { return 0.5 * std::sqrt(fisher_information(N, schedule, s)); }, 0.0, 1.0,
      quad(tol));
  g.shortest_length = std::acos(1.0 / std::sqrt(N));
  return g;
}

namespace {

struct OdeParams {
  double c;
  double q;
};

int constant_fisher_rhs(double, const double y[], double dydt[], void* params) {
  const auto* p = static_cast<const OdeParams*>(params);
  dydt[0] = p->c * (1.0 - 4.0 * p->q * y[0] + 4.0 * p->q * y[0] * y[0]);
  return GSL_SUCCESS;
}

struct DriverDeleter {
  void operator()(gsl_odeiv2_driver* d) const { gsl_odeiv2_driver_free(d); }
};

// Tabulated solution of fdot = c (1 - 4q f + 4q f^2). Between nodes the ODE
// itself is Taylor-expanded around the nearest node.
struct ConstantFisherTable {
  double c;
  double q;
  double h;
  std::vector<double> f;

  static constexpr int kTerms = 14;

  double operator()(double s, int order) const {
    if (order < 0) throw std::out_of_range("negative derivative order");
    if (order >= kTerms) return 0.0;
    s = std::clamp(s, 0.0, 1.0);
    const auto i = static_cast<std::size_t>(std::lround(s / h));
    const double x = s - static_cast<double>(i) * h;
    double a[kTerms];
    a[0] = f[std::min(i, f.size() - 1)];
    for (int k = 0; k + 1 < kTerms; ++k) {
      double conv = 0.0;  // (f^2)_k
      for (int j = 0; j <= k; ++j) conv += a[j] * a[k - j];
      const double g = (k == 0 ? 1.0 : 0.0) - 4.0 * q * a[k] + 4.0 * q * conv;
      a[k + 1] = c * g / (k + 1);
    }
    // d^order/ds^order of sum_k a_k x^k.
    double sum = 0.0;
    for (int k = kTerms - 1; k >= order; --k) {
      double falling = 1.0;
      for (int j = 0; j < order; ++j) falling *= (k - j);
      sum = sum * x + falling * a[k];
    }
    return sum;
  }
};

}  // namespace

Schedule schedule_from_constant_fisher(double N, double tol) {
  require_size(N);
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  constexpr int kIntervals = 4096;
  OdeParams params{N / std::sqrt(N - 1.0) * std::acos(1.0 / std::sqrt(N)), (N - 1.0) / N};
  gsl_odeiv2_system sys{&constant_fisher_rhs, nullptr, 1, &params};
  gsl_set_error_handler_off();
  std::unique_ptr<gsl_odeiv2_driver, DriverDeleter> driver(
      gsl_odeiv2_driver_alloc_y_new(&sys, gsl_odeiv2_step_rk8pd, 1e-6, tol, 0.0));

  auto table = std::make_shared<ConstantFisherTable>();
  table->c = params.c;
  table->q = params.q;
  table->h = 1.0 / kIntervals;
  table->f.reserve(kIntervals + 1);
  double s = 0.0;
  double y[1] = {0.0};
  table->f.push_back(0.0);
  for (int i = 1; i <= kIntervals; ++i) {
    const double target = static_cast<double>(i) / kIntervals;
    const int status = gsl_odeiv2_driver_apply(driver.get(), &s, target, y);
    if (status != GSL_SUCCESS || !std::isfinite(y[0])) {
      std::ostringstream msg;
      msg << "constant-Fisher ODE failed at s=" << s << ": " << gsl_strerror(status);
      throw ODEDivergence(msg.str());
    }
    table->f.push_back(y[0]);
  }
  const double miss = std::abs(table->f.back() - 1.0);
  if (miss > std::max(1e3 * tol, 1e-9)) {
    std::ostringstream msg;
    msg << "constant-Fisher ODE misses f(1) = 1 by " << miss;
    throw ODEDivergence(msg.str());
  }
  return Schedule::custom("constant-fisher-ode", [table](double x, int order) {
    return (*table)(x, order);
  });
}

std::vector<double> resonance_times(double N, const Schedule& schedule, int n_max, double tol) {
  const double w = grover::omega10(N, schedule, tol);
  std::vector<double> out;
  for (int n = 1; n <= n_max; ++n) out.push_back(2.0 * std::numbers::pi * n / w);
  return out;
}

double jansen_bound(double N, double T) {
  if (!(T > 0.0)) throw std::invalid_argument("T must be positive");
  return (std::numbers::pi / 2.0 + std::numbers::pi * std::numbers::pi) * std::sqrt(N) / T;
}

double roland_time(double N, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  return std::numbers::pi / 2.0 * std::sqrt(N) / eps;
}

LiteratureBounds literature_bounds(double N, double T, double eps) {
  return {jansen_bound(N, T), roland_time(N, eps), false};
}

}  // namespace adia
