#include "adia/propagate.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include <sstream>

#include "adia/errors.hpp"
#include "adia/spectral.hpp"

namespace adia {
namespace {

// exp(-iX) for Hermitian X.
Matrix expm_hermitian(const Matrix& x) {
  if (x.rows() == 2) {
    const double a = 0.5 * (x(0, 0).real() + x(1, 1).real());
    const double d = 0.5 * (x(0, 0).real() - x(1, 1).real());
    const Complex off = x(0, 1);
    const double theta = std::sqrt(d * d + std::norm(off));
    const double c = std::cos(theta);
    // sin(theta)/theta, continued at 0.
    const double sc = theta < 1e-8 ? 1.0 - theta * theta / 6.0 : std::sin(theta) / theta;
    const Complex phase = std::exp(Complex(0.0, -a));
    Matrix u(2, 2);
    u(0, 0) = phase * Complex(c, -sc * d);
    u(1, 1) = phase * Complex(c, sc * d);
    u(0, 1) = phase * (-kI * sc * off);
    u(1, 0) = phase * (-kI * sc * std::conj(off));
    return u;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(x);
  const Vector phases = (-kI * es.eigenvalues().cast<Complex>()).array().exp().matrix();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

class Stepper {
 public:
  Stepper(const HamiltonianFamily& family, double T, Integrator kind)
      : family_(family), T_(T), kind_(kind) {}

  void step(Vector& psi, double s, double h) const {
    Matrix x;
    if (kind_ == Integrator::magnus2) {
      x = (T_ * h) * family_(s + 0.5 * h, 0);
    } else {
      constexpr double kOff = 0.28867513459481287;  // sqrt(3)/6
      const Matrix h1 = family_(s + (0.5 - kOff) * h, 0);
      const Matrix h2 = family_(s + (0.5 + kOff) * h, 0);
      const double th = T_ * h;
      x = (0.5 * th) * (h1 + h2) - kI * (kOff * 0.5 * th * th) * (h2 * h1 - h1 * h2);
    }
    psi = expm_hermitian(x) * psi;
  }

 private:
  const HamiltonianFamily& family_;
  double T_;
  Integrator kind_;
};

struct Sweep {
  Vector final_state;
  std::vector<Vector> recorded;
};

Sweep sweep(const Stepper& stepper, const Vector& initial, std::size_t steps, int intervals) {
  Sweep out;
  Vector psi = initial;
  const std::size_t per_interval = steps / intervals;
  out.recorded.push_back(psi);
  for (std::size_t k = 0; k < steps; ++k) {
    const double s0 = static_cast<double>(k) / steps;
    const double s1 = static_cast<double>(k + 1) / steps;
    stepper.step(psi, s0, s1 - s0);
    if ((k + 1) % per_interval == 0) out.recorded.push_back(psi);
  }
  out.final_state = psi;
  return out;
}

std::string shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

SimulationTrace propagate(const HamiltonianFamily& family, double T,
                          const PropagationOptions& options) {
  return propagate_from(family, ground_state(family, 0.0), T, options);
}

SimulationTrace propagate_from(const HamiltonianFamily& family, const Vector& initial, double T,
                               const PropagationOptions& options) {
  if (!(T > 0.0)) throw std::invalid_argument("T must be positive");
  if (!(options.tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (initial.size() != family.dimension()) throw std::invalid_argument("initial state dimension");
  const int intervals = std::max(1, options.output_points - 1);

  // Start near one step per unit of accumulated phase.
  double spread = 0.0;
  for (double s : {0.0, 0.5, 1.0}) {
    const RealVector e = eigenvalues(family, s);
    spread = std::max(spread, e.maxCoeff() - e.minCoeff());
  }
  std::size_t steps = std::max<std::size_t>(32, static_cast<std::size_t>(std::ceil(T * spread)));
  steps = ((steps + intervals - 1) / intervals) * intervals;

  const Stepper stepper(family, T, options.integrator);
  const double order_factor = options.integrator == Integrator::magnus4 ? 15.0 : 3.0;
  Sweep coarse = sweep(stepper, initial, steps, intervals);
  double diff = 0.0;
  Sweep fine;
  while (true) {
    if (2 * steps > options.max_steps) {
      std::ostringstream msg;
      msg << "propagation at T=" << T << " needs more than " << options.max_steps
          << " steps to reach tol " << options.tol << " (last change " << diff << ")";
      throw StepSizeUnderflow(msg.str());
    }
    steps *= 2;
    fine = sweep(stepper, initial, steps, intervals);
    diff = (fine.final_state - coarse.final_state).norm();
    if (diff <= options.tol) break;
    coarse = std::move(fine);
  }

  SimulationTrace trace;
  trace.T = T;
  trace.steps = steps;
  trace.error_estimate = diff / order_factor;
  for (int k = 0; k <= intervals; ++k) {
    const double s = (k == intervals) ? 1.0 : static_cast<double>(k) / intervals;
    const Vector& psi = fine.recorded[k];
    trace.s.push_back(s);
    trace.states.push_back(psi);
    trace.norms.push_back(psi.norm());
    trace.distances.push_back(bures_angle(psi, ground_state(family, s)));
  }
  return trace;
}

double bures_angle(const Vector& a, const Vector& b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) throw ZeroVector("Bures angle of a zero vector");
  const Vector bn = b / nb;
  const Complex overlap = bn.dot(a);
  const double perp = (a - overlap * bn).norm();
  return std::atan2(perp, std::abs(overlap));
}

Vector truncated_state(const CoefficientTable& table, std::size_t i, double T, int order) {
  if (order < 0 || order > table.max_order) throw std::out_of_range("order outside table");
  if (i >= table.grid.size()) throw std::out_of_range("grid index outside table");
  const SpectralFrame& frame = table.frames[i];
  const Index d = table.dimension();
  Vector out = Vector::Zero(d);
  for (Index n = 0; n < d; ++n) {
    Complex coeff = 0.0;
    Complex factor = 1.0;
    for (int p = 0; p <= order; ++p) {
      coeff += factor * table.aggregate(n, p, i, T);
      factor *= kI / T;
    }
    out += std::exp(-kI * (T * table.omega[i](n))) * coeff * frame.vectors.col(n);
  }
  return out;
}

void write_trace_csv(std::ostream& out, const SimulationTrace& trace, bool components) {
  out << "s,norm,distance";
  const Index d = trace.states.empty() ? 0 : trace.states.front().size();
  if (components) {
    for (Index k = 0; k < d; ++k) out << ",re_" << k << ",im_" << k;
  }
  out << '\n';
  for (std::size_t i = 0; i < trace.s.size(); ++i) {
    out << shortest(trace.s[i]) << ',' << shortest(trace.norms[i]) << ','
        << shortest(trace.distances[i]);
    if (components) {
      for (Index k = 0; k < d; ++k) {
        out << ',' << shortest(trace.states[i](k).real()) << ','
            << shortest(trace.states[i](k).imag());
      }
    }
    out << '\n';
  }
}

}  // namespace adia
