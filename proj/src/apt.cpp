#include "adia/apt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "adia/errors.hpp"

namespace adia {
namespace {

constexpr double kBoundaryTol = 1e-10;

QuadratureOptions quad(double tol) {
  QuadratureOptions opt;
  opt.abs_tol = tol;
  // Integrals of order N for large N cannot meet an absolute 1e-10.
  opt.rel_tol = 1e-12;
  return opt;
}

// Aggregated max-modulus sums S = sum |b_lead|^2 and X = sum |b_lead| |b_next|.
std::pair<double, double> max_modulus_sums(const std::vector<PhaseSeries>& leading,
                                           const std::vector<PhaseSeries>& next) {
  double s = 0.0;
  double x = 0.0;
  for (std::size_t n = 1; n < leading.size(); ++n) {
    const double a = leading[n].max_modulus();
    s += a * a;
    x += a * (n < next.size() ? next[n].max_modulus() : 0.0);
  }
  return {s, x};
}

// x_n(s) = <phi_n|H^(order)|phi_0> / Delta_n0^(order+1), n != 0.
Vector endpoint_amplitudes(const HamiltonianFamily& family, const SpectralFrame& frame, int order) {
  const Matrix h = family(frame.s, order);
  const Vector hv = h * frame.vectors.col(0);
  Vector x = Vector::Zero(frame.size());
  for (Index n = 1; n < frame.size(); ++n) {
    if (frame.degenerate(n, 0)) continue;
    const Complex elem = frame.vectors.col(n).dot(hv);
    x(n) = elem / std::pow(frame.gap(n, 0), order + 1);
  }
  return x;
}

}  // namespace

void PhaseSeries::add(Complex amplitude, double frequency) {
  for (auto& term : terms_) {
    if (std::abs(term.frequency - frequency) <= 1e-12 * std::max(1.0, std::abs(frequency))) {
      term.amplitude += amplitude;
      return;
    }
  }
  terms_.push_back({amplitude, frequency});
}

Complex PhaseSeries::evaluate(double T) const {
  Complex sum = 0.0;
  for (const auto& term : terms_) sum += term.amplitude * std::exp(kI * (T * term.frequency));
  return sum;
}

double PhaseSeries::max_modulus() const {
  double sum = 0.0;
  for (const auto& term : terms_) sum += std::abs(term.amplitude);
  return sum;
}

EndpointData endpoint_data(const HamiltonianFamily& family, double s, const AptOptions& options) {
  if (!(s >= 0.0 && s <= 1.0)) throw std::out_of_range("s outside [0, 1]");
  const FramePath path(family, options.frame_nodes);
  EndpointData data;
  data.s = s;
  data.start = path.front();
  data.end = path.at(s);
  const Index d = family.dimension();
  data.omega = RealVector::Zero(d);
  data.J = RealVector::Zero(d);
  for (Index n = 1; n < d; ++n) data.omega(n) = relative_phase(family, n, 0, s, options.quadrature_tol);
  for (Index n = 0; n < d; ++n) data.J(n) = j_integral(family, n, s, options.quadrature_tol);
  if (family.max_derivative() >= 2) {
    data.lambda_dot_start = lambda_derivative(family, data.start);
    data.lambda_dot_end = lambda_derivative(family, data.end);
  } else {
    data.lambda_dot_start = Matrix::Zero(d, d);
    data.lambda_dot_end = Matrix::Zero(d, d);
  }
  return data;
}

std::vector<PhaseSeries> b1(const EndpointData& data) {
  const Index d = data.start.size();
  std::vector<PhaseSeries> out(d);
  out[0] = PhaseSeries(Complex(data.J(0), 0.0));
  for (Index n = 1; n < d; ++n) {
    out[n].add(data.end.lambda(n, 0), data.omega(n));
    out[n].add(-data.start.lambda(n, 0), 0.0);
  }
  return out;
}

std::vector<PhaseSeries> b2(const EndpointData& data) {
  const SpectralFrame& f0 = data.start;
  const SpectralFrame& fs = data.end;
  const Index d = f0.size();
  const double j0 = data.J(0);
  std::vector<PhaseSeries> out(d);
  for (Index n = 1; n < d; ++n) {
    if (fs.degenerate(n, 0) || f0.degenerate(n, 0)) continue;
    // Bracket [e^{iTw_n0} (lambda_dot/Delta + sum_k lambda_k0 M_nk/Delta)] at s and at 0.
    Complex at_s = data.lambda_dot_end(n, 0) / fs.gap(n, 0);
    Complex at_0 = data.lambda_dot_start(n, 0) / f0.gap(n, 0);
    for (Index k = 1; k < d; ++k) {
      if (k == n) continue;
      at_s += fs.lambda(k, 0) * fs.couplings(n, k) / fs.gap(n, 0);
      at_0 += f0.lambda(k, 0) * f0.couplings(n, k) / f0.gap(n, 0);
    }
    out[n].add(j0 * fs.lambda(n, 0) + at_s, data.omega(n));
    out[n].add(-data.J(n) * f0.lambda(n, 0) - at_0, 0.0);
    // -sum_k e^{iTw_nk} lambda_k0(0) lambda_nk, evaluated between 0 and s.
    for (Index k = 1; k < d; ++k) {
      if (k == n) continue;
      const Complex l0 = f0.lambda(k, 0);
      out[n].add(-l0 * fs.lambda(n, k), data.omega(n) - data.omega(k));
      out[n].add(l0 * f0.lambda(n, k), 0.0);
    }
  }
  return out;
}

double j_integral(const HamiltonianFamily& family, Index n, double s, double tol) {
  if (n < 0 || n >= family.dimension()) throw std::out_of_range("level index");
  return integrate(
      [&](double x) {
        // |M_kn|^2 / Delta_kn is gauge invariant, so an unaligned frame suffices.
        const SpectralFrame frame = spectral_frame(family, x);
        double sum = 0.0;
        for (Index k = 0; k < frame.size(); ++k) {
          if (k == n || frame.degenerate(k, n)) continue;
          sum += std::norm(frame.couplings(k, n)) / frame.gap(k, n);
        }
        return sum;
      },
      0.0, s, quad(tol));
}

double j_fisher_bound(const HamiltonianFamily& family, Index n, double s, double tol) {
  if (n < 0 || n >= family.dimension()) throw std::out_of_range("level index");
  return integrate(
      [&](double x) {
        const SpectralFrame frame = spectral_frame(family, x);
        const double scale = std::max(1e-300, frame.couplings.cwiseAbs().maxCoeff());
        double speed2 = 0.0;  // F_n / 4
        double min_gap = std::numeric_limits<double>::infinity();
        for (Index k = 0; k < frame.size(); ++k) {
          if (k == n || frame.degenerate(k, n)) continue;
          const double m2 = std::norm(frame.couplings(k, n));
          speed2 += m2;
          if (std::sqrt(m2) > 1e-12 * scale) min_gap = std::min(min_gap, std::abs(frame.gap(k, n)));
        }
        return speed2 == 0.0 ? 0.0 : speed2 / min_gap;
      },
      0.0, s, quad(tol));
}

double leading_distance(const EndpointData& data, const HamiltonianFamily& family, double T,
                        int p) {
  if (!(T > 0.0)) throw std::invalid_argument("T must be positive");
  const Vector xs = endpoint_amplitudes(family, data.end, p + 1);
  const Vector x0 = endpoint_amplitudes(family, data.start, p + 1);
  double sum = 0.0;
  for (Index n = 1; n < xs.size(); ++n) {
    sum += std::norm(std::exp(kI * (T * data.omega(n))) * xs(n) - x0(n));
  }
  return std::sqrt(sum) / std::pow(T, p + 1);
}

DistanceBounds distance_bounds(const EndpointData& data, const HamiltonianFamily& family,
                               double T, int p) {
  if (!(T > 0.0)) throw std::invalid_argument("T must be positive");
  const Vector xs = endpoint_amplitudes(family, data.end, p + 1);
  const Vector x0 = endpoint_amplitudes(family, data.start, p + 1);
  double lo = 0.0;
  double hi = 0.0;
  for (Index n = 1; n < xs.size(); ++n) {
    const double a = std::abs(xs(n));
    const double b = std::abs(x0(n));
    hi += (a + b) * (a + b);
    lo += (a - b) * (a - b);
  }
  const double scale = std::pow(T, p + 1);
  return {std::sqrt(lo) / scale, std::sqrt(hi) / scale};
}

double TradeoffResult::bound(double T) const {
  if (!(T > 0.0)) throw std::invalid_argument("T must be positive");
  return bound_coefficient / std::pow(T, p + 1);
}

double TradeoffResult::max_error(double alpha) const {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in (0, 1]");
  return std::pow(alpha, p + 1) * eps_tilde;
}

double TradeoffResult::min_time(double alpha) const {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in (0, 1]");
  return T_val / alpha;
}

TradeoffResult tradeoff_from_coefficients(const std::vector<PhaseSeries>& leading,
                                          const std::vector<PhaseSeries>& next, int p, double C) {
  if (!(C > 0.0)) throw std::invalid_argument("C must be positive");
  const auto [s, x] = max_modulus_sums(leading, next);
  if (!(s > 1e-28)) {
    throw VanishingLeadingOrder("leading coefficients vanish (sum |b|^2 = " + std::to_string(s) +
                                "); use a higher boundary-cancelation order");
  }
  TradeoffResult r;
  r.C = C;
  r.p = p;
  r.T_val = C * x / s;
  r.bound_coefficient = std::sqrt(s);
  r.eps_tilde = r.bound(r.T_val);
  return r;
}

double validity_time(const EndpointData& data, double C) { return tradeoff(data, C).T_val; }

double epsilon_tilde(const EndpointData& data, double C) { return tradeoff(data, C).eps_tilde; }

TradeoffResult tradeoff(const EndpointData& data, double C) {
  return tradeoff_from_coefficients(b1(data), b2(data), 0, C);
}

void check_boundary_cancelation(const HamiltonianFamily& family, int p) {
  if (family.max_derivative() < p + 2) {
    throw BoundaryConditionViolated("family provides derivatives up to order " +
                                    std::to_string(family.max_derivative()) + ", need " +
                                    std::to_string(p + 2));
  }
  for (int j = 1; j <= p; ++j) {
    for (double s : {0.0, 1.0}) {
      const double norm = family(s, j).cwiseAbs().maxCoeff();
      if (norm > kBoundaryTol) {
        std::ostringstream msg;
        msg << "H^(" << j << ")(" << s << ") has max entry " << norm << " > " << kBoundaryTol;
        throw BoundaryConditionViolated(msg.str());
      }
    }
  }
}

BoundaryCoefficients bc_coefficients(const HamiltonianFamily& family, int p,
                                     const AptOptions& options) {
  if (p < 1) throw std::invalid_argument("bc_coefficients needs p >= 1");
  check_boundary_cancelation(family, p);
  const FramePath path(family, options.frame_nodes);
  const SpectralFrame& f0 = path.front();
  const SpectralFrame& f1 = path.back();
  const Index d = family.dimension();
  // At the endpoints lambda_n0^(j) / Delta^j = -<phi_n|H^(j+1)|phi_0> / Delta^(j+2) for j <= p+1.
  const Vector x1 = -endpoint_amplitudes(family, f1, p + 1);
  const Vector x0 = -endpoint_amplitudes(family, f0, p + 1);
  const Vector y1 = -endpoint_amplitudes(family, f1, p + 2);
  const Vector y0 = -endpoint_amplitudes(family, f0, p + 2);
  const double j0 = j_integral(family, 0, 1.0, options.quadrature_tol);

  BoundaryCoefficients out;
  out.p = p;
  out.leading.resize(d);
  out.next.resize(d);
  for (Index n = 1; n < d; ++n) {
    if (f0.degenerate(n, 0) || f1.degenerate(n, 0)) continue;
    const double w = relative_phase(family, n, 0, 1.0, options.quadrature_tol);
    const double jn = j_integral(family, n, 1.0, options.quadrature_tol);
    out.leading[n].add(x1(n), w);
    out.leading[n].add(-x0(n), 0.0);
    out.next[n].add(y1(n) + j0 * x1(n), w);
    out.next[n].add(-y0(n) - jn * x0(n), 0.0);
  }
  return out;
}

TradeoffResult bc_tradeoff(const HamiltonianFamily& family, int p, double C,
                           const AptOptions& options) {
  if (p == 0) return tradeoff(endpoint_data(family, 1.0, options), C);
  const BoundaryCoefficients bc = bc_coefficients(family, p, options);
  return tradeoff_from_coefficients(bc.leading, bc.next, p, C);
}

}  // namespace adia
